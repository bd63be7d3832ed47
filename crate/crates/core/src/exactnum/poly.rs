use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{q, Rational, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q, coefficients in ascending order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(alloc::vec![c])
    }

    /// The monomial `c λ^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = alloc::vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// `λ`.
    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    /// Monic polynomial `Π (λ − r)`.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| {
            acc * Poly::new(alloc::vec![-r.clone(), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.scale(&self.lc().recip()))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q(k as i64))
                .collect(),
        )
    }

    /// Euclidean division `self = quo·f + rem` with `deg rem < deg f`.
    pub fn divmod(&self, f: &Poly) -> Result<(Poly, Poly)> {
        let df = f.degree().ok_or(Error::ZeroDivisor)?;
        let lc_inv = f.lc().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= df {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quo = alloc::vec![Rational::zero(); rem.len() - df];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + df] * &lc_inv;
            if !c.is_zero() {
                for (j, fj) in f.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * fj;
                }
            }
            quo[k] = c;
        }
        rem.truncate(df);
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divmod(&b).map(|(_, r)| r).unwrap_or_default();
            a = b;
            b = r;
        }
        a.monic().unwrap_or_default()
    }

    /// Rational roots with multiplicities, in increasing order.
    ///
    /// Candidates come from the rational root theorem applied to the
    /// primitive integer multiple of `self`.
    pub fn rational_roots(&self) -> Result<Vec<(Rational, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut work = self.clone();
        let mut roots = Vec::new();
        let zero_mult = work.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zero_mult > 0 {
            roots.push((Rational::zero(), zero_mult));
            work = Poly::new(work.coeffs[zero_mult..].to_vec());
        }
        if work.degree().unwrap_or(0) > 0 {
            let ints = work.integer_coeffs();
            let lead = divisors(ints.last().unwrap())?;
            let trail = divisors(&ints[0])?;
            let mut cands: Vec<Rational> = Vec::new();
            for p in &trail {
                for d in &lead {
                    let r = Rational::new(p.clone(), d.clone());
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort();
            cands.dedup();
            for r in cands {
                let lin = Poly::new(alloc::vec![-r.clone(), Rational::one()]);
                let mut mult = 0;
                while work.degree().unwrap_or(0) > 0 && work.eval(&r).is_zero() {
                    work = work.divmod(&lin)?.0;
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((r, mult));
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(roots)
    }

    /// Integer multiple with coprime integer coefficients.
    fn integer_coeffs(&self) -> Vec<BigInt> {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Renders with the given variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = abs.is_one();
            if !unit || k == 0 {
                let _ = write!(out, "{abs}");
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    let _ = write!(out, "{var}^{k}");
                }
            }
        }
        out
    }
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("coefficients too large for root search".into()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("λ"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = alloc::vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t { (&self).$m(rhs) }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { self.$m(&rhs) }
        }
    )*
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t { -&self }
        }
    };
}
pub(crate) use forward_owned;

forward_owned!(Poly, Add add, Sub sub, Mul mul);

impl Ring for Poly {
    fn zero_el() -> Self {
        Poly::zero()
    }
    fn one_el() -> Self {
        Poly::one()
    }
    fn is_zero_el(&self) -> bool {
        Poly::is_zero(self)
    }
}

/// Determinant of the Sylvester matrix of `f` and `g`.
pub fn resultant(f: &Poly, g: &Poly) -> Result<Rational> {
    let df = f.degree().ok_or(Error::ZeroPolynomial)?;
    let dg = g.degree().ok_or(Error::ZeroPolynomial)?;
    let n = df + dg;
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut rows = Vec::with_capacity(n);
    for shift in 0..dg {
        rows.push(sylvester_row(f, shift, n));
    }
    for shift in 0..df {
        rows.push(sylvester_row(g, shift, n));
    }
    Ok(super::QMatrix::from_rows(rows).det())
}

fn sylvester_row(p: &Poly, shift: usize, n: usize) -> Vec<Rational> {
    let d = p.degree().unwrap_or(0);
    let mut row = alloc::vec![Rational::zero(); n];
    for k in 0..=d {
        row[shift + k] = p.coeff(d - k);
    }
    row
}

/// `(−1)^{d(d−1)/2} res(f, f′) / lc(f)`.
pub fn discriminant(f: &Poly) -> Result<Rational> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let r = resultant(f, &f.derivative())? / f.lc();
    Ok(if (d * (d - 1) / 2) % 2 == 0 { r } else { -r })
}
