use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::forward_owned;
use super::{Poly, Rational, Ring};

/// Exponent vector with trailing zeros trimmed; negative exponents allowed.
///
/// Ordered lexicographically as if padded with zeros, so the largest
/// monomial of a polynomial is its lex-leading one.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn new(mut exps: Vec<i32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut e = alloc::vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// The monomial with variable `i` removed (exponent set to zero).
    pub fn without(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        if i < e.len() {
            e[i] = 0;
        }
        Monomial::new(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        (0..n)
            .map(|i| self.exp(i).cmp(&other.exp(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse Laurent polynomial over Q in variables indexed by `usize`.
///
/// Variable names are not stored; [`MultiPoly::display_with`] takes them.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::term(Monomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        MultiPoly::term(Monomial::var(i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Constant term when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        (0..e).fold(MultiPoly::one(), |acc, _| &acc * self)
    }

    /// Largest variable index that occurs, plus one.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    /// Whether every exponent of variable `i` lies in `lo..=hi`.
    pub fn degree_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.exp(i));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Coefficients with respect to variable `i`: `self = Σ_k c_k · x_i^k`.
    pub fn collect_var(&self, i: usize) -> BTreeMap<i32, MultiPoly> {
        let mut out: BTreeMap<i32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(i))
                .or_default()
                .add_term(m.without(i), c.clone());
        }
        out
    }

    /// Replaces variable `i` by `value` (which must not mention `x_i`).
    ///
    /// Negative powers of `x_i` are only allowed when `value` is a single term.
    pub fn substitute(&self, i: usize, value: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (k, coeff) in self.collect_var(i) {
            let p = if k >= 0 {
                value.pow(k as u32)
            } else {
                let (m, c) = value
                    .leading()
                    .expect("substituting zero into a negative power");
                assert_eq!(value.num_terms(), 1, "negative power of a non-monomial");
                let inv = Monomial::new(m.0.iter().map(|e| -e).collect());
                MultiPoly::term(inv, c.recip()).pow((-k) as u32)
            };
            out = out + &coeff * &p;
        }
        out
    }

    /// Evaluates at the given point; `None` if a negative power hits zero.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                let x = point.get(i).cloned().unwrap_or_else(Rational::zero);
                if e < 0 && x.is_zero() {
                    return None;
                }
                let base = if e < 0 { x.recip() } else { x };
                for _ in 0..e.unsigned_abs() {
                    t *= &base;
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Converts to a univariate polynomial in variable `i`, if possible.
    pub fn to_poly(&self, i: usize) -> Option<Poly> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e < 0 || m.without(i) != Monomial::one() {
                return None;
            }
            let e = e as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] = c.clone();
        }
        Some(Poly::new(coeffs))
    }

    pub fn from_poly(p: &Poly, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = alloc::vec![0; i + 1];
            e[i] = k as i32;
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Renders with the given variable names (`x{i}` for missing ones).
    pub fn display_with(&self, names: &[&str]) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(alloc::format!("{abs}"));
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = names
                    .get(i)
                    .map_or_else(|| alloc::format!("x{i}"), |s| String::from(*s));
                factors.push(if e == 1 {
                    name
                } else {
                    alloc::format!("{name}^{e}")
                });
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

forward_owned!(MultiPoly, Add add, Sub sub, Mul mul);

impl Ring for MultiPoly {
    fn zero_el() -> Self {
        MultiPoly::zero()
    }
    fn one_el() -> Self {
        MultiPoly::one()
    }
    fn is_zero_el(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{determinant, q};

    #[test]
    fn lex_order_pads_with_zero() {
        assert!(Monomial::new(alloc::vec![1]) > Monomial::new(alloc::vec![1, 0, -1]));
        assert!(Monomial::new(alloc::vec![1]) < Monomial::new(alloc::vec![1, 0, 1]));
        assert_eq!(
            Monomial::new(alloc::vec![2, 0, 0]),
            Monomial::new(alloc::vec![2])
        );
    }

    #[test]
    fn substitution_and_collection() {
        let (x, y) = (MultiPoly::var(0), MultiPoly::var(1));
        let p = &(&x * &x) * &y + y.clone();
        let sub = p.substitute(1, &(&x + &MultiPoly::one()));
        let expected = (&(&x * &x) + &MultiPoly::one()) * (&x + &MultiPoly::one());
        assert_eq!(sub, expected);
        let coll = p.collect_var(0);
        assert_eq!(coll[&2], y);
        assert_eq!(coll[&0], y);
        assert_eq!(p.eval(&[q(2), q(3)]), Some(q(15)));
        let inv = MultiPoly::term(Monomial::new(alloc::vec![-1]), q(1));
        assert_eq!(inv.eval(&[q(0)]), None);
    }

    #[test]
    fn vandermonde_determinant() {
        let xs: Vec<MultiPoly> = (0..3).map(MultiPoly::var).collect();
        let rows: Vec<Vec<MultiPoly>> = (0..3)
            .map(|i| (0..3).map(|j| xs[j].pow(i as u32)).collect())
            .collect();
        let mut expected = MultiPoly::one();
        for i in 0..3 {
            for j in (i + 1)..3 {
                expected = expected * (&xs[j] - &xs[i]);
            }
        }
        assert_eq!(determinant(&rows), expected);
    }
}
