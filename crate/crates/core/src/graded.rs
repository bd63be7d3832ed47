//! Graded dimension bookkeeping: cohomology of projective spaces, the cone
//! of `c1(O(−1,−1))`, stalks of the rank-one intersection complex, Ext
//! Poincaré series, and the Hilbert series of the `n = 1` slice algebra.
//!
//! Shifts follow `M[k]^d = M^{d+k}`: shifting by `[k]` moves a class from
//! degree `d` to degree `d − k`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{Monomial, MultiPoly, QMatrix, Rational};

/// Finite-support map from degree to dimension; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedDims(BTreeMap<i64, u64>);

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut out = Self::new();
        for (d, k) in pairs {
            out.add(d, k);
        }
        out
    }

    /// A single class in degree `d`.
    pub fn point(d: i64) -> Self {
        Self::from_pairs([(d, 1)])
    }

    pub fn add(&mut self, degree: i64, dim: u64) {
        if dim > 0 {
            *self.0.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    /// Sorted `(degree, dim)` pairs.
    pub fn pairs(&self) -> impl DoubleEndedIterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&d, &k)| (d, k))
    }

    /// `M[k]`.
    pub fn shift(&self, k: i64) -> Self {
        Self(self.0.iter().map(|(&d, &n)| (d - k, n)).collect())
    }

    /// `τ_{≤k}`.
    pub fn truncate_le(&self, k: i64) -> Self {
        Self(self.0.range(..=k).map(|(&d, &n)| (d, n)).collect())
    }

    /// `τ_{≥k}`.
    pub fn truncate_ge(&self, k: i64) -> Self {
        Self(self.0.range(k..).map(|(&d, &n)| (d, n)).collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, k) in other.pairs() {
            out.add(d, k);
        }
        out
    }
}

/// Polynomial ring with graded variables and monomial truncation
/// `x_i^{bound_i} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncPolyRing {
    /// Degree of each variable.
    pub degrees: Vec<i64>,
    /// `x_i^{bounds[i]} = 0`.
    pub bounds: Vec<u32>,
}

impl TruncPolyRing {
    pub fn new(degrees: Vec<i64>, bounds: Vec<u32>) -> Result<Self> {
        if degrees.len() != bounds.len() {
            return Err(Error::Shape("one bound per variable".into()));
        }
        if degrees.iter().any(|&d| d <= 0) {
            return Err(Error::InvalidArgument(
                "variable degrees must be positive".into(),
            ));
        }
        Ok(TruncPolyRing { degrees, bounds })
    }

    /// Tensor product; variables of `other` come after those of `self`.
    pub fn product(&self, other: &TruncPolyRing) -> TruncPolyRing {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        let mut bounds = self.bounds.clone();
        bounds.extend_from_slice(&other.bounds);
        TruncPolyRing { degrees, bounds }
    }

    pub fn num_vars(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree_of(&self, m: &Monomial) -> i64 {
        m.exps()
            .iter()
            .zip(&self.degrees)
            .map(|(&e, &d)| i64::from(e) * d)
            .sum()
    }

    fn survives(&self, m: &Monomial) -> bool {
        m.exps()
            .iter()
            .zip(&self.bounds)
            .all(|(&e, &b)| e >= 0 && (e as u32) < b)
    }

    /// Drops every monomial in the truncation ideal.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in p.terms() {
            if self.survives(m) {
                out = out + MultiPoly::term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        self.reduce(&(a * b))
    }

    /// Surviving monomials, in increasing order.
    pub fn basis(&self) -> Vec<Monomial> {
        let mut out = alloc::vec![Monomial::one()];
        for (i, &b) in self.bounds.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * b as usize);
            for m in &out {
                for e in 0..b {
                    let mut exps = m.exps().to_vec();
                    exps.resize(self.num_vars(), 0);
                    exps[i] = e as i32;
                    next.push(Monomial::new(exps));
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    pub fn basis_in_degree(&self, d: i64) -> Vec<Monomial> {
        self.basis()
            .into_iter()
            .filter(|m| self.degree_of(m) == d)
            .collect()
    }

    pub fn graded_dims(&self) -> GradedDims {
        GradedDims::from_pairs(self.basis().iter().map(|m| (self.degree_of(m), 1)))
    }

    /// Matrix of `y ↦ p·y` from degree `d` to degree `d + deg p`, in the bases
    /// of [`Self::basis_in_degree`].
    pub fn multiplication_matrix(&self, p: &MultiPoly, p_degree: i64, d: i64) -> QMatrix {
        let src = self.basis_in_degree(d);
        let dst = self.basis_in_degree(d + p_degree);
        let mut out = QMatrix::zeros(dst.len(), src.len());
        for (j, m) in src.iter().enumerate() {
            let img = self.mul(p, &MultiPoly::term(m.clone(), Rational::one()));
            for (i, target) in dst.iter().enumerate() {
                out[(i, j)] = img.coeff(target);
            }
        }
        out
    }
}

/// `H*(P^{n−1}) = C[α]/(α^n)`, `deg α = 2`.
pub fn proj_cohomology(n: usize) -> Result<TruncPolyRing> {
    if n == 0 {
        return Err(Error::InvalidArgument("P^{n-1} needs n >= 1".into()));
    }
    TruncPolyRing::new(alloc::vec![2], alloc::vec![n as u32])
}

/// Cokernel and kernel of multiplication by `α + β` on
/// `H*(P^{n−1} × P^{m−1})`, both in the ring's own degrees.
pub fn cone_of_c1(n: usize, m: usize) -> Result<(GradedDims, GradedDims)> {
    let ring = proj_cohomology(n)?.product(&proj_cohomology(m)?);
    let c1 = &MultiPoly::var(0) + &MultiPoly::var(1);
    let top = 2 * (n + m - 2) as i64;
    let mut coker = GradedDims::new();
    let mut ker = GradedDims::new();
    for d in (0..=top + 2).step_by(2) {
        let src_dim = ring.basis_in_degree(d).len() as u64;
        let rank = if d >= 2 {
            ring.multiplication_matrix(&c1, 2, d - 2).rank() as u64
        } else {
            0
        };
        coker.add(d, ring.basis_in_degree(d).len() as u64 - rank);
        let out_rank = ring.multiplication_matrix(&c1, 2, d).rank() as u64;
        ker.add(d, src_dim - out_rank);
    }
    Ok((coker, ker))
}

/// The cone: cokernel in place, kernel one degree higher.
pub fn cone_dims(n: usize, m: usize) -> Result<GradedDims> {
    let (coker, ker) = cone_of_c1(n, m)?;
    Ok(coker.direct_sum(&ker.shift(-1)))
}

/// `τ_{≤−1}(cone[m+n−1])`, checked against `H*(P^{n−1})[m+n−1]` and
/// `(τ_{≤2n−2} H*(P^{m−1}))[m+n−1]`.
pub fn stalk_ic(n: usize, m: usize) -> Result<GradedDims> {
    if n == 0 || n >= m {
        return Err(Error::InvalidArgument(format!(
            "stalk needs 1 <= n < m, got n={n}, m={m}"
        )));
    }
    let shift = (m + n - 1) as i64;
    let stalk = cone_dims(n, m)?.shift(shift).truncate_le(-1);
    let via_n = proj_cohomology(n)?.graded_dims().shift(shift);
    let via_m = proj_cohomology(m)?
        .graded_dims()
        .truncate_le(2 * n as i64 - 2)
        .shift(shift);
    if stalk != via_n || stalk != via_m {
        return Err(Error::Internal(format!(
            "stalk of ({n},{m}) differs from its closed forms"
        )));
    }
    Ok(stalk)
}

/// Shifts `s` of the skyscraper summands `C_0[s]` in
/// `(τ_{≥2n} H*(P^{m−1}))[m+n−1]`, largest first.
pub fn decomposition_remainder(n: usize, m: usize) -> Result<Vec<i64>> {
    if n == 0 || n >= m {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= n < m, got n={n}, m={m}"
        )));
    }
    let rest = proj_cohomology(m)?
        .graded_dims()
        .truncate_ge(2 * n as i64)
        .shift((m + n - 1) as i64);
    let mut out = Vec::new();
    for (d, k) in rest.pairs() {
        for _ in 0..k {
            out.push(-d);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// `numerator / Π (1 − s^d)^{mult}` with integer numerator coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries {
    /// Degree to coefficient.
    pub numerator: BTreeMap<i64, i64>,
    /// `(d, multiplicity)` with `d > 0`.
    pub denominator: Vec<(i64, u32)>,
}

impl PoincareSeries {
    pub fn new(numerator: BTreeMap<i64, i64>, denominator: Vec<(i64, u32)>) -> Result<Self> {
        if denominator.iter().any(|&(d, _)| d <= 0) {
            return Err(Error::InvalidArgument(
                "denominator degrees must be positive".into(),
            ));
        }
        let numerator = numerator.into_iter().filter(|&(_, c)| c != 0).collect();
        Ok(PoincareSeries {
            numerator,
            denominator,
        })
    }

    /// Polynomial ring on generators of the given degrees.
    pub fn free(generator_degrees: &[i64]) -> Result<Self> {
        Self::new(
            BTreeMap::from([(0, 1)]),
            generator_degrees.iter().map(|&d| (d, 1)).collect(),
        )
    }

    pub fn times(&self, other: &PoincareSeries) -> PoincareSeries {
        let mut num = BTreeMap::new();
        for (&a, &x) in &self.numerator {
            for (&b, &y) in &other.numerator {
                *num.entry(a + b).or_insert(0) += x * y;
            }
        }
        let mut den = self.denominator.clone();
        den.extend_from_slice(&other.denominator);
        PoincareSeries {
            numerator: num.into_iter().filter(|&(_, c)| c != 0).collect(),
            denominator: den,
        }
    }

    /// Coefficients of `s^d` for `d < order`; `Ok` only if every stored
    /// numerator degree is nonnegative.
    pub fn expand(&self, order: usize) -> Result<Vec<i64>> {
        if self.numerator.keys().any(|&d| d < 0) {
            return Err(Error::InvalidArgument(
                "numerator has negative degrees".into(),
            ));
        }
        let mut series = alloc::vec![0i64; order];
        for (&d, &c) in &self.numerator {
            if (d as usize) < order {
                series[d as usize] += c;
            }
        }
        for &(d, mult) in &self.denominator {
            let d = d as usize;
            for _ in 0..mult {
                // multiply by 1/(1 − s^d)
                for i in d..order {
                    series[i] = series[i].checked_add(series[i - d]).ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "series coefficient overflow at order {order}"
                        ))
                    })?;
                }
            }
        }
        Ok(series)
    }

    /// Lowest degree with a nonzero coefficient, with that coefficient.
    pub fn leading(&self, order: usize) -> Result<Option<(i64, i64)>> {
        Ok(self
            .expand(order)?
            .into_iter()
            .enumerate()
            .find(|&(_, c)| c != 0)
            .map(|(d, c)| (d as i64, c)))
    }
}

/// Compares two expansions up to `order`; reports the first difference.
pub fn compare_series(left: &[i64], right: &[i64]) -> Result<()> {
    for (d, (l, r)) in left.iter().zip(right).enumerate() {
        if l != r {
            return Err(Error::SeriesMismatch {
                degree: d as i64,
                left: *l,
                right: *r,
            });
        }
    }
    if left.len() != right.len() {
        return Err(Error::Shape("series of different orders".into()));
    }
    Ok(())
}

/// Degrees `2, 4, …, 2r` of the generators of `H*_{GL_r}(pt)`.
pub fn gl_generator_degrees(rank: usize) -> Vec<i64> {
    (1..=rank as i64).map(|i| 2 * i).collect()
}

/// `⊕_{j<n} (A ⊗ A′)[2j+1−m−n]` with `A = H*_{GL_m}(pt)`, `A′ = H*_{GL_n}(pt)`.
pub fn ext_poincare(n: usize, m: usize) -> Result<PoincareSeries> {
    if n == 0 || n >= m {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= n < m, got n={n}, m={m}"
        )));
    }
    let numerator = (0..n as i64)
        .map(|j| ((m + n) as i64 - 1 - 2 * j, 1))
        .collect();
    let mut gens = gl_generator_degrees(m);
    gens.extend(gl_generator_degrees(n));
    PoincareSeries::new(numerator, gens.into_iter().map(|d| (d, 1)).collect())
}

/// Minimal degree of [`ext_poincare`] and its coefficient.
pub fn ext_leading(n: usize, m: usize) -> Result<(i64, i64)> {
    let series = ext_poincare(n, m)?;
    let order = 2 * (m + n) + 2;
    series
        .leading(order)?
        .ok_or_else(|| Error::Internal("vanishing Ext series".into()))
}

/// Elementary symmetric polynomials `e_0 … e_r` in variables `0..r`, by
/// subset enumeration.
pub fn elementary_symmetric(r: usize) -> Vec<MultiPoly> {
    let mut out = alloc::vec![MultiPoly::zero(); r + 1];
    for mask in 0u32..(1 << r) {
        let exps: Vec<i32> = (0..r).map(|i| ((mask >> i) & 1) as i32).collect();
        let k = mask.count_ones() as usize;
        out[k] = &out[k] + &MultiPoly::term(Monomial::new(exps), Rational::one());
    }
    out
}

/// Checks `Π (a + τ_i) = a^r + e_1 a^{r−1} + ⋯ + e_r` with `τ_i` the
/// variables `0..r` and `a` the variable `r`.
pub fn euler_expansion_holds(rank: usize) -> bool {
    let a = MultiPoly::var(rank);
    let product = (0..rank).fold(MultiPoly::one(), |acc, i| acc * (&a + &MultiPoly::var(i)));
    let e = elementary_symmetric(rank);
    let expansion = (0..=rank).fold(MultiPoly::zero(), |acc, k| {
        acc + &e[k] * &a.pow((rank - k) as u32)
    });
    product == expansion
}

/// Summary of [`gl1_algebra_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraCheck {
    pub m: usize,
    pub order: usize,
    /// Expansion of the free ring `C[a, e_1 … e_{m−1}, x, y]`.
    pub free: Vec<i64>,
    /// `A ⊕ ⊕_{k≥1} A x^k ⊕ ⊕_{k≥1} A y^k`.
    pub module: Vec<i64>,
    /// `A[x, y]/(xy − Euler class)`.
    pub eliminated: Vec<i64>,
    pub euler_expansion: bool,
}

/// Hilbert series identities of the `n = 1` slice algebra for `H = GL_m`,
/// with `deg a = 2`, `deg e_i = 2i`, `deg x = deg y = m`.
pub fn gl1_algebra_check(m: usize, order: usize) -> Result<AlgebraCheck> {
    if m == 0 {
        return Err(Error::InvalidArgument("need m >= 1".into()));
    }
    let mi = m as i64;
    let mut a_gens = alloc::vec![2];
    a_gens.extend(gl_generator_degrees(m));
    let h_a = PoincareSeries::free(&a_gens)?;

    let mut free_gens = alloc::vec![2];
    free_gens.extend(gl_generator_degrees(m - 1));
    free_gens.extend([mi, mi]);
    let free = PoincareSeries::free(&free_gens)?.expand(order)?;

    // 1 + 2 s^m/(1 − s^m) = (1 + s^m)/(1 − s^m)
    let shifts = PoincareSeries::new(BTreeMap::from([(0, 1), (mi, 1)]), alloc::vec![(mi, 1)])?;
    let module = h_a.times(&shifts).expand(order)?;

    let quotient =
        PoincareSeries::new(BTreeMap::from([(0, 1), (2 * mi, -1)]), alloc::vec![(mi, 2)])?;
    let eliminated = h_a.times(&quotient).expand(order)?;

    compare_series(&free, &module)?;
    compare_series(&free, &eliminated)?;
    let euler_expansion = euler_expansion_holds(m);
    if !euler_expansion {
        return Err(Error::Internal(format!(
            "Euler expansion fails for rank {m}"
        )));
    }
    Ok(AlgebraCheck {
        m,
        order,
        free,
        module,
        eliminated,
        euler_expansion,
    })
}

/// Degree of the class `Hom(i*IC_0, i*IC_k)` on the resultant hyperplane:
/// `C[−kn]` for `k ≥ 0` and `C[2k−kn]` for `k ≤ 0`.
pub fn localization_hom(k: i64, n: i64) -> GradedDims {
    if k >= 0 {
        GradedDims::point(0).shift(-k * n)
    } else {
        GradedDims::point(0).shift(2 * k - k * n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(pairs: &[(i64, u64)]) -> GradedDims {
        GradedDims::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn projective_spaces() {
        assert_eq!(proj_cohomology(1).unwrap().graded_dims(), dims(&[(0, 1)]));
        assert_eq!(
            proj_cohomology(3).unwrap().graded_dims(),
            dims(&[(0, 1), (2, 1), (4, 1)])
        );
        let prod = proj_cohomology(2)
            .unwrap()
            .product(&proj_cohomology(3).unwrap());
        assert_eq!(prod.graded_dims(), dims(&[(0, 1), (2, 2), (4, 2), (6, 1)]));
    }

    #[test]
    fn cones() {
        let (coker, ker) = cone_of_c1(2, 3).unwrap();
        assert_eq!(coker, dims(&[(0, 1), (2, 1)]));
        assert_eq!(ker, dims(&[(4, 1), (6, 1)]));
        let (coker, ker) = cone_of_c1(1, 4).unwrap();
        assert_eq!((coker, ker), (dims(&[(0, 1)]), dims(&[(6, 1)])));
    }

    #[test]
    fn stalks_and_remainders() {
        assert_eq!(stalk_ic(2, 3).unwrap(), dims(&[(-4, 1), (-2, 1)]));
        assert_eq!(stalk_ic(1, 2).unwrap(), dims(&[(-2, 1)]));
        assert_eq!(stalk_ic(1, 5).unwrap(), dims(&[(-5, 1)]));
        assert_eq!(decomposition_remainder(2, 3).unwrap(), [0]);
        assert_eq!(decomposition_remainder(1, 3).unwrap(), [1, -1]);
        assert_eq!(decomposition_remainder(1, 4).unwrap(), [2, 0, -2]);
        assert!(stalk_ic(3, 3).is_err());
    }

    #[test]
    fn ext_minimal_degrees() {
        assert_eq!(ext_leading(1, 2).unwrap(), (2, 1));
        assert_eq!(ext_leading(2, 3).unwrap(), (2, 1));
        assert_eq!(ext_leading(2, 5).unwrap(), (4, 1));
    }

    #[test]
    fn algebra_m1_closed_form() {
        // (1+s)/((1−s)(1−s²)²)
        let closed = PoincareSeries::new(
            BTreeMap::from([(0, 1), (1, 1)]),
            alloc::vec![(1, 1), (2, 2)],
        )
        .unwrap();
        let check = gl1_algebra_check(1, 30).unwrap();
        assert_eq!(check.free, closed.expand(30).unwrap());
        for m in 2..=5 {
            gl1_algebra_check(m, 30).unwrap();
        }
    }

    #[test]
    fn euler_rank_two() {
        let e = elementary_symmetric(2);
        assert_eq!(e[1], &MultiPoly::var(0) + &MultiPoly::var(1));
        assert_eq!(e[2], &MultiPoly::var(0) * &MultiPoly::var(1));
        assert!(euler_expansion_holds(2));
    }

    #[test]
    fn localization_fixture() {
        assert_eq!(localization_hom(0, 3), GradedDims::point(0));
        assert_eq!(localization_hom(2, 3), GradedDims::point(6));
        assert_eq!(localization_hom(-1, 3), GradedDims::point(-1));
        assert_eq!(localization_hom(-2, 1), GradedDims::point(2));
    }

    #[test]
    fn mismatch_reports_degree() {
        assert_eq!(
            compare_series(&[1, 2, 3], &[1, 2, 4]),
            Err(Error::SeriesMismatch {
                degree: 2,
                left: 3,
                right: 4
            })
        );
    }
}
