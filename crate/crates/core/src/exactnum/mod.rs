//! Exact rational, polynomial and truncated Laurent series arithmetic.

mod laurent;
mod matrix;
mod multipoly;
mod poly;

pub use laurent::TruncatedLaurent;
pub use matrix::QMatrix;
pub use multipoly::{Monomial, MultiPoly};
pub(crate) use poly::forward_owned;
pub use poly::{discriminant, resultant, Poly};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rationals in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Commutative rings with exact zero test; enough for cofactor expansion.
pub trait Ring:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_el() -> Self;
    fn one_el() -> Self;
    fn is_zero_el(&self) -> bool;
}

impl Ring for Rational {
    fn zero_el() -> Self {
        Zero::zero()
    }
    fn one_el() -> Self {
        One::one()
    }
    fn is_zero_el(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Determinant by Laplace expansion along rows, memoized on column subsets.
///
/// Division free, so it works over any commutative ring. Intended for the
/// small symbolic matrices of this crate (at most ~12 columns).
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 0 {
        return R::one_el();
    }
    assert!(n <= 20, "cofactor expansion limited to 20 columns");
    let mut memo: BTreeMap<u32, R> = BTreeMap::new();
    minor_det(m, 0, (1u32 << n) - 1, &mut memo)
}

fn minor_det<R: Ring>(m: &[Vec<R>], row: usize, cols: u32, memo: &mut BTreeMap<u32, R>) -> R {
    if cols == 0 {
        return R::one_el();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = R::zero_el();
    let mut sign_pos = true;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero_el() {
            let sub = minor_det(m, row + 1, cols & !(1 << c), memo);
            let term = entry.clone() * sub;
            acc = if sign_pos { acc + term } else { acc - term };
        }
        sign_pos = !sign_pos;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Classical adjugate: `adj(M)[i][j] = (-1)^{i+j} det(M without row j, col i)`.
pub fn adjugate<R: Ring>(m: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = m.len();
    let entry = |i: usize, j: usize| {
        let minor: Vec<Vec<R>> = (0..n)
            .filter(|&r| r != j)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != i)
                    .map(|c| m[r][c].clone())
                    .collect()
            })
            .collect();
        let d = determinant(&minor);
        if (i + j).is_multiple_of(2) {
            d
        } else {
            -d
        }
    };
    (0..n)
        .map(|i| (0..n).map(|j| entry(i, j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3"), Some(q(3)));
        assert_eq!(parse_rational("-6/4"), Some(q_frac(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn cofactor_matches_hand_values() {
        let m = [
            alloc::vec![q(2), q(0), q(1)],
            alloc::vec![q(1), q(3), q(2)],
            alloc::vec![q(1), q(1), q(1)],
        ];
        // 2(3-2) - 0 + 1(1-3)
        assert_eq!(determinant(&m), q(0));
        let adj = adjugate(&[alloc::vec![q(1), q(2)], alloc::vec![q(3), q(4)]]);
        assert_eq!(
            adj,
            alloc::vec![alloc::vec![q(4), q(-2)], alloc::vec![q(-3), q(1)]]
        );
    }
}
