use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::forward_owned;
use super::Rational;
use crate::error::{Error, Result};

/// A Laurent series `Σ c_k t^{val+k} + O(t^prec)` with exact rational
/// coefficients.
///
/// A nonzero value has `coeffs[0] != 0` and `val < prec`. An apparent zero
/// (nothing known below `t^prec`) has no coefficients and `val == prec`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedLaurent {
    val: i64,
    coeffs: Vec<Rational>,
    prec: i64,
}

impl TruncatedLaurent {
    /// Builds and normalizes; terms at or beyond `prec` are dropped.
    pub fn new(val: i64, coeffs: Vec<Rational>, prec: i64) -> Self {
        let mut x = TruncatedLaurent { val, coeffs, prec };
        x.normalize();
        x
    }

    pub fn from_i64(val: i64, coeffs: &[i64], prec: i64) -> Self {
        TruncatedLaurent::new(val, coeffs.iter().map(|&c| super::q(c)).collect(), prec)
    }

    pub fn zero(prec: i64) -> Self {
        TruncatedLaurent {
            val: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn one(prec: i64) -> Self {
        TruncatedLaurent::monomial(Rational::one(), 0, prec)
    }

    pub fn constant(c: Rational, prec: i64) -> Self {
        TruncatedLaurent::monomial(c, 0, prec)
    }

    /// `c·t^k + O(t^prec)`.
    pub fn monomial(c: Rational, k: i64, prec: i64) -> Self {
        TruncatedLaurent::new(k, alloc::vec![c], prec)
    }

    fn normalize(&mut self) {
        let keep = (self.prec - self.val).max(0) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.val = self.prec;
        }
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Coefficients starting at `t^val`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The stored leading exponent (equals `precision()` for an apparent zero).
    pub fn raw_val(&self) -> i64 {
        self.val
    }

    pub fn is_apparent_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for an apparent zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_apparent_zero()).then_some(self.val)
    }

    /// Coefficient of `t^k`; `None` when `k` is beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if k >= self.prec {
            return None;
        }
        if k < self.val {
            return Some(Rational::zero());
        }
        Some(
            self.coeffs
                .get((k - self.val) as usize)
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    /// Coefficient of `t^{-1}`.
    pub fn residue(&self) -> Result<Rational> {
        self.coeff(-1).ok_or(Error::PrecisionTooLow {
            prec: self.prec,
            needed: -1,
        })
    }

    pub fn truncate(&self, p: i64) -> Self {
        TruncatedLaurent::new(self.val, self.coeffs.clone(), self.prec.min(p))
    }

    /// Membership in `O`; `None` when an apparent zero hides negative powers.
    pub fn is_integral(&self) -> Option<bool> {
        match self.valuation() {
            Some(v) => Some(v >= 0),
            None if self.prec >= 0 => Some(true),
            None => None,
        }
    }

    /// Representative of the class in `F/O`: the principal part.
    pub fn mod_integral(&self) -> Self {
        self.truncate(0)
    }

    /// Whether the two values agree up to the weaker precision.
    pub fn agrees(&self, other: &Self) -> bool {
        (self - other).is_apparent_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedLaurent::new(
            self.val,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.prec,
        )
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncatedLaurent {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec + k,
        }
    }

    /// Multiplicative inverse; precision drops to `prec − 2·val`.
    pub fn invert(&self) -> Result<Self> {
        let v = self
            .valuation()
            .ok_or(Error::ApparentZero { prec: self.prec })?;
        let n = (self.prec - v) as usize;
        let a0_inv = self.coeffs[0].recip();
        let mut b: Vec<Rational> = Vec::with_capacity(n);
        b.push(a0_inv.clone());
        for k in 1..n {
            let mut s = Rational::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s += &self.coeffs[j] * &b[k - j];
            }
            b.push(-s * &a0_inv);
        }
        Ok(TruncatedLaurent::new(-v, b, self.prec - 2 * v))
    }

    /// Renders as `c t^k + … + O(t^p)`.
    pub fn display(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.val + i as i64;
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let abs = c.abs();
            match k {
                0 => {
                    let _ = write!(out, "{abs}");
                }
                _ => {
                    if !abs.is_one() {
                        let _ = write!(out, "{abs}*");
                    }
                    if k == 1 {
                        out.push('t');
                    } else {
                        let _ = write!(out, "t^{k}");
                    }
                }
            }
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        let _ = write!(out, "O(t^{})", self.prec);
        out
    }
}

impl fmt::Display for TruncatedLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl fmt::Debug for TruncatedLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl Add<&TruncatedLaurent> for &TruncatedLaurent {
    type Output = TruncatedLaurent;
    fn add(self, rhs: &TruncatedLaurent) -> TruncatedLaurent {
        let prec = self.prec.min(rhs.prec);
        let val = self.val.min(rhs.val).min(prec);
        let len = (prec - val).max(0) as usize;
        let mut coeffs = alloc::vec![Rational::zero(); len];
        for x in [self, rhs] {
            for (i, c) in x.coeffs.iter().enumerate() {
                let k = (x.val - val) as usize + i;
                if k < len {
                    coeffs[k] += c;
                }
            }
        }
        TruncatedLaurent::new(val, coeffs, prec)
    }
}

impl Sub<&TruncatedLaurent> for &TruncatedLaurent {
    type Output = TruncatedLaurent;
    fn sub(self, rhs: &TruncatedLaurent) -> TruncatedLaurent {
        self + &(-rhs)
    }
}

impl Mul<&TruncatedLaurent> for &TruncatedLaurent {
    type Output = TruncatedLaurent;
    fn mul(self, rhs: &TruncatedLaurent) -> TruncatedLaurent {
        // An apparent zero stores val == prec, which is exactly the bound needed here.
        let prec = (self.prec + rhs.val).min(rhs.prec + self.val);
        let val = self.val + rhs.val;
        if self.is_apparent_zero() || rhs.is_apparent_zero() || val >= prec {
            return TruncatedLaurent::zero(prec);
        }
        let len = (prec - val) as usize;
        let mut coeffs = alloc::vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        TruncatedLaurent::new(val, coeffs, prec)
    }
}

impl Neg for &TruncatedLaurent {
    type Output = TruncatedLaurent;
    fn neg(self) -> TruncatedLaurent {
        TruncatedLaurent {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }
}

forward_owned!(TruncatedLaurent, Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;
    use proptest::prelude::*;

    fn tl(val: i64, c: &[i64], prec: i64) -> TruncatedLaurent {
        TruncatedLaurent::from_i64(val, c, prec)
    }

    #[test]
    fn residue_and_valuation() {
        assert_eq!(tl(-1, &[1, 3, 1], 8).residue().unwrap(), q(1));
        assert_eq!(tl(-2, &[1, 1], 8).valuation(), Some(-2));
        assert_eq!(tl(0, &[0, 0, 5], 8).valuation(), Some(2));
        assert_eq!(
            TruncatedLaurent::zero(-1).residue(),
            Err(Error::PrecisionTooLow {
                prec: -1,
                needed: -1
            })
        );
    }

    #[test]
    fn geometric_series() {
        let inv = tl(0, &[1, -1], 8).invert().unwrap();
        assert_eq!(inv, tl(0, &[1; 8], 8));
        assert_eq!(
            TruncatedLaurent::zero(3).invert(),
            Err(Error::ApparentZero { prec: 3 })
        );
    }

    #[test]
    fn precision_bookkeeping() {
        let x = tl(-2, &[1, 1], 6);
        let y = tl(1, &[2], 4);
        // (t^-2 + t^-1 + O(t^6)) * (2t + O(t^4)): known modulo t^{min(6+1, 4-2)}
        let p = &x * &y;
        assert_eq!(p.precision(), 2);
        assert_eq!(p, tl(-1, &[2, 2], 2));
        assert_eq!((&x + &y).precision(), 4);
        assert_eq!(x.invert().unwrap().precision(), 10);
        let z = TruncatedLaurent::zero(5);
        assert_eq!((&z * &x).precision(), 3);
        assert_eq!(tl(-1, &[1, 2], 8).mod_integral(), tl(-1, &[1], 0));
        assert_eq!(TruncatedLaurent::zero(-1).is_integral(), None);
        assert_eq!(tl(-1, &[1], 3).is_integral(), Some(false));
    }

    fn arb_unit() -> impl Strategy<Value = TruncatedLaurent> {
        (
            -3i64..=3,
            proptest::collection::vec(-5i64..=5, 1..6),
            1i64..=5,
            3i64..=10,
        )
            .prop_map(|(v, mut c, lead, prec)| {
                c[0] = if lead % 2 == 0 { lead } else { -lead };
                tl(v, &c, v + prec)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn inverse_round_trip(x in arb_unit()) {
            let inv = x.invert().unwrap();
            let prod = &x * &inv;
            let p = prod.precision();
            prop_assert!(p >= x.precision() - x.valuation().unwrap());
            prop_assert!(prod.agrees(&TruncatedLaurent::one(p)));
        }

        #[test]
        fn multiplication_is_commutative(x in arb_unit(), y in arb_unit()) {
            prop_assert_eq!(&x * &y, &y * &x);
        }
    }
}
