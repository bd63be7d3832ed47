//! The invariant map `S → (χ_x, χ_P)` on the `(GL_n, GL_m)` slice, the
//! factorization of `χ_P`, and exact reconstruction of fibers over the generic
//! locus, the resultant hyperplane and the double-root hyperplane.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    adjugate, determinant, discriminant, resultant, Monomial, MultiPoly, Poly, QMatrix, Rational,
};
use crate::slodowy::{build_slice_chart, SliceChart, SlicePoint};

/// Characteristic polynomials `(f, g)` of `x` and of the whole slice matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPair {
    pub f: Poly,
    pub g: Poly,
}

impl InvariantPair {
    pub fn new(f: Poly, g: Poly) -> Result<Self> {
        let (df, dg) = match (f.degree(), g.degree()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::ZeroPolynomial),
        };
        if !f.is_monic() || !g.is_monic() {
            return Err(Error::InvalidArgument("f and g must be monic".into()));
        }
        if df == 0 || df >= dg {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= deg f < deg g, got {df} and {dg}"
            )));
        }
        Ok(InvariantPair { f, g })
    }

    pub fn n(&self) -> usize {
        self.f.degree().unwrap_or(0)
    }

    pub fn m(&self) -> usize {
        self.g.degree().unwrap_or(0)
    }
}

/// `(χ_x, χ_P)` of a slice point.
pub fn invariant_map(p: &SlicePoint) -> Result<InvariantPair> {
    let chart = build_slice_chart(p.n, p.m)?;
    let mat = chart.assemble(p)?;
    Ok(InvariantPair {
        f: p.x.charpoly(),
        g: mat.charpoly(),
    })
}

/// Result of matching `det(λI − P) = χ_x · band + d_{k+1} · v*·adj(λI − x)·v`.
///
/// The band factor is `det(λI − D)` for the lower `k×k` block `D`, and its
/// coefficient of `λ^{k−i}` is `(−1)^i (d_i a_i + corrections[i−1])`, where
/// the correction is a polynomial in `a_1 … a_{i−1}` only.
#[derive(Clone, Debug)]
pub struct DerivedConstants {
    pub n: usize,
    pub m: usize,
    /// `d_1 … d_{m−n+1}`.
    pub d: Vec<Rational>,
    /// Nonlinear parts of the band coefficients, in chart variables.
    pub corrections: Vec<MultiPoly>,
    /// Whether every correction vanishes, i.e. the band is linear in `a`.
    pub linear: bool,
    /// `det(λI − D)` with `λ` as the variable after the chart coordinates.
    pub band: MultiPoly,
}

impl DerivedConstants {
    pub fn k(&self) -> usize {
        self.m - self.n
    }

    /// The constant in front of `v*·adj(λI − x)·v`.
    pub fn d_last(&self) -> &Rational {
        self.d.last().expect("at least two constants")
    }
}

/// Symbolic pieces of the factorization identity for one chart.
pub struct SymbolicIdentity {
    pub chart: SliceChart,
    /// Index of `λ`.
    pub lambda: usize,
    pub det_full: MultiPoly,
    pub chi_x: MultiPoly,
    pub band: MultiPoly,
    /// `v*·adj(λI − x)·v`.
    pub pairing: MultiPoly,
}

impl SymbolicIdentity {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        let chart = build_slice_chart(n, m)?;
        let lambda = chart.dim();
        let lam = MultiPoly::var(lambda);
        let sym = chart.symbolic_matrix();
        let shifted = |rows: core::ops::Range<usize>| -> Vec<Vec<MultiPoly>> {
            rows.clone()
                .map(|i| {
                    rows.clone()
                        .map(|j| {
                            if i == j {
                                &lam - &sym[i][j]
                            } else {
                                -&sym[i][j]
                            }
                        })
                        .collect()
                })
                .collect()
        };
        let full = shifted(0..m);
        let x_part = shifted(0..n);
        let d_part = shifted(n..m);
        let det_full = determinant(&full);
        let chi_x = determinant(&x_part);
        let band = determinant(&d_part);
        let adj = adjugate(&x_part);
        let mut pairing = MultiPoly::zero();
        for i in 0..n {
            for j in 0..n {
                // v* is row n of the slice, v the last column
                pairing = pairing + &(&sym[n][i] * &adj[i][j]) * &sym[j][m - 1];
            }
        }
        Ok(SymbolicIdentity {
            chart,
            lambda,
            det_full,
            chi_x,
            band,
            pairing,
        })
    }

    /// `det(λI − P) − χ_x · band`.
    pub fn residual(&self) -> MultiPoly {
        &self.det_full - &(&self.chi_x * &self.band)
    }
}

/// Finds the constants `d_i` by matching the symbolic identity.
pub fn derive_constants(n: usize, m: usize) -> Result<DerivedConstants> {
    let id = SymbolicIdentity::new(n, m)?;
    let residual = id.residual();
    let (lead_mono, lead_coeff) = id
        .pairing
        .leading()
        .ok_or_else(|| Error::Internal("zero pairing".into()))?;
    let d_last = residual.coeff(lead_mono) / lead_coeff;
    let leftover = &residual - &id.pairing.scale(&d_last);
    if !leftover.is_zero() {
        let names = id.chart.variable_names();
        let mut refs: Vec<&str> = names.iter().map(String::as_str).collect();
        refs.push("λ");
        return Err(Error::NoConsistentConstants(leftover.display_with(&refs)));
    }

    let k = m - n;
    let a_index = |i: usize| n * n + 2 * n + i - 1;
    let by_lambda = id.band.collect_var(id.lambda);
    let mut d = Vec::with_capacity(k + 1);
    let mut corrections = Vec::with_capacity(k);
    for i in 1..=k {
        let mut coeff = by_lambda
            .get(&((k - i) as i32))
            .cloned()
            .unwrap_or_default();
        if i % 2 == 1 {
            coeff = -coeff;
        }
        let ai = Monomial::var(a_index(i));
        let di = coeff.coeff(&ai);
        if di.is_zero() {
            return Err(Error::NoConsistentConstants(format!(
                "a{i} does not appear linearly"
            )));
        }
        let corr = &coeff - &MultiPoly::term(ai, di.clone());
        for (mono, _) in corr.terms() {
            let bad = mono
                .exps()
                .iter()
                .enumerate()
                .any(|(v, &e)| e != 0 && v >= a_index(i));
            let off_band = mono
                .exps()
                .iter()
                .enumerate()
                .any(|(v, &e)| e != 0 && v < a_index(1));
            if bad || off_band {
                return Err(Error::NoConsistentConstants(format!(
                    "coefficient of λ^{} is not triangular in the band values",
                    k - i
                )));
            }
        }
        d.push(di);
        corrections.push(corr);
    }
    d.push(d_last);
    let linear = corrections.iter().all(MultiPoly::is_zero);
    Ok(DerivedConstants {
        n,
        m,
        d,
        corrections,
        linear,
        band: id.band,
    })
}

/// Stratum of the base of a fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stratum {
    Generic,
    /// `r(λ_index) = 0` for exactly one root of `f`.
    ResultantZero {
        index: usize,
    },
    DoubleRoot {
        root: Rational,
    },
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stratum::Generic => f.write_str("generic"),
            Stratum::ResultantZero { .. } => f.write_str("resultant-zero"),
            Stratum::DoubleRoot { .. } => f.write_str("double-root"),
        }
    }
}

/// What the fiber looks like as a `GL_n`-space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberStructure {
    /// Free `GL_n`-torsor.
    Torsor,
    /// `(GL_n × +)/G_m` with `+ = {XY = 0}`.
    CrossQuotient,
}

impl fmt::Display for FiberStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberStructure::Torsor => f.write_str("free GL_n-torsor"),
            FiberStructure::CrossQuotient => f.write_str("(GL_n x +)/G_m"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FiberDescription {
    pub stratum: Stratum,
    pub invariants: InvariantPair,
    pub base: SlicePoint,
    pub structure: FiberStructure,
}

impl FiberDescription {
    /// On the resultant stratum: the base point with `(v_{i0}, v*_{i0}) = (X, Y)`.
    pub fn cross_point(&self, x: &Rational, y: &Rational) -> Result<SlicePoint> {
        let Stratum::ResultantZero { index } = self.stratum else {
            return Err(Error::InvalidArgument(
                "not a resultant-stratum fiber".into(),
            ));
        };
        let mut p = self.base.clone();
        p.v[index] = x.clone();
        p.vstar[index] = y.clone();
        Ok(p)
    }

    /// Whether `p` maps to the defining invariants.
    pub fn contains(&self, p: &SlicePoint) -> Result<bool> {
        Ok(invariant_map(p)? == self.invariants)
    }
}

/// `(AxA⁻¹, Av, v*A⁻¹)`.
pub fn transport(p: &SlicePoint, a: &QMatrix) -> Result<SlicePoint> {
    let inv = a.inverse()?;
    if a.rows() != p.n {
        return Err(Error::Shape(format!(
            "{}x{} transform on n = {}",
            a.rows(),
            a.cols(),
            p.n
        )));
    }
    let x = &(a * &p.x) * &inv;
    let col = QMatrix::from_fn(p.n, 1, |i, _| p.v[i].clone());
    let row = QMatrix::from_fn(1, p.n, |_, j| p.vstar[j].clone());
    let v = (a * &col).transpose().row(0).to_vec();
    let vstar = (&row * &inv).row(0).to_vec();
    SlicePoint::new(x, v, vstar, p.a.clone())
}

/// Finds `A ∈ GL_n` with `transport(from, A) = to` when `x` has distinct
/// rational eigenvalues and every `v*_i v_i` in an eigenbasis is nonzero.
pub fn solve_transport(from: &SlicePoint, to: &SlicePoint) -> Result<QMatrix> {
    if (from.n, from.m) != (to.n, to.m) || from.a != to.a {
        return Err(Error::InvalidArgument(
            "points differ in shape or band".into(),
        ));
    }
    let f = from.x.charpoly();
    if f != to.x.charpoly() {
        return Err(Error::InvalidArgument("x blocks are not conjugate".into()));
    }
    let roots = simple_roots(&f)?;
    let gp = eigenbasis(&from.x, &roots)?;
    let gq = eigenbasis(&to.x, &roots)?;
    let n = from.n;
    let wp = mat_vec(&gp.inverse()?, &from.v);
    let wq = mat_vec(&gq.inverse()?, &to.v);
    let mut scale = Vec::with_capacity(n);
    for i in 0..n {
        if wp[i].is_zero() {
            return Err(Error::InvalidArgument(
                "degenerate eigen-coordinate of v".into(),
            ));
        }
        scale.push(&wq[i] / &wp[i]);
    }
    let a = &(&gq * &QMatrix::diag(&scale)) * &gp.inverse()?;
    if transport(from, &a)? != *to {
        return Err(Error::InvalidArgument(
            "points lie in different fibers".into(),
        ));
    }
    Ok(a)
}

fn mat_vec(a: &QMatrix, v: &[Rational]) -> Vec<Rational> {
    (0..a.rows())
        .map(|i| (0..a.cols()).fold(Rational::zero(), |acc, j| acc + &a[(i, j)] * &v[j]))
        .collect()
}

fn eigenbasis(x: &QMatrix, roots: &[Rational]) -> Result<QMatrix> {
    let n = x.rows();
    let mut cols = Vec::with_capacity(n);
    for r in roots {
        let shifted = x - &QMatrix::identity(n).scale(r);
        let ker = shifted.kernel();
        if ker.len() != 1 {
            return Err(Error::RootPattern("eigenspace is not a line".into()));
        }
        cols.push(ker.into_iter().next().expect("one vector"));
    }
    Ok(QMatrix::from_fn(n, n, |i, j| cols[j][i].clone()))
}

/// All roots of `f` if they are rational and simple.
fn simple_roots(f: &Poly) -> Result<Vec<Rational>> {
    let n = f.degree().unwrap_or(0);
    let roots = f.rational_roots()?;
    if roots.len() != n || roots.iter().any(|(_, mult)| *mult != 1) {
        return Err(Error::RootPattern("f needs distinct rational roots".into()));
    }
    Ok(roots.into_iter().map(|(r, _)| r).collect())
}

/// Caches the structure constants of one `(n, m)` chart.
#[derive(Clone, Debug)]
pub struct FiberSolver {
    pub constants: DerivedConstants,
}

impl FiberSolver {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Ok(FiberSolver {
            constants: derive_constants(n, m)?,
        })
    }

    fn check_shape(&self, pair: &InvariantPair) -> Result<()> {
        if (pair.n(), pair.m()) != (self.constants.n, self.constants.m) {
            return Err(Error::Shape(format!(
                "invariants of degrees ({},{}) on a ({},{}) solver",
                pair.n(),
                pair.m(),
                self.constants.n,
                self.constants.m
            )));
        }
        Ok(())
    }

    /// Solves the band coefficients of `q` for `a_1 … a_k` triangularly.
    pub fn band_values(&self, q: &Poly) -> Result<Vec<Rational>> {
        let c = &self.constants;
        let (n, k) = (c.n, c.k());
        if q.degree() != Some(k) || !q.is_monic() {
            return Err(Error::Internal(format!(
                "quotient of degree {:?}",
                q.degree()
            )));
        }
        let mut point = alloc::vec![Rational::zero(); n * n + 2 * n + k];
        let mut a = Vec::with_capacity(k);
        for i in 1..=k {
            let mut target = q.coeff(k - i);
            if i % 2 == 1 {
                target = -target;
            }
            let corr = c.corrections[i - 1]
                .eval(&point)
                .expect("polynomial correction");
            let ai = (target - corr) / &c.d[i - 1];
            point[n * n + 2 * n + i - 1] = ai.clone();
            a.push(ai);
        }
        Ok(a)
    }

    fn split(&self, pair: &InvariantPair) -> Result<(Vec<Rational>, Poly)> {
        let (q, r) = pair.g.divmod(&pair.f)?;
        Ok((self.band_values(&q)?, r))
    }

    fn finish(
        &self,
        stratum: Stratum,
        pair: InvariantPair,
        base: SlicePoint,
        structure: FiberStructure,
    ) -> Result<FiberDescription> {
        let got = invariant_map(&base)?;
        if got != pair {
            return Err(Error::Internal(format!(
                "reconstruction gives ({}, {}) instead of ({}, {})",
                got.f, got.g, pair.f, pair.g
            )));
        }
        Ok(FiberDescription {
            stratum,
            invariants: pair,
            base,
            structure,
        })
    }

    /// `e_i = r(λ_i) / (d_{k+1} Π_{j≠i}(λ_i − λ_j))`.
    fn residues(&self, roots: &[Rational], r: &Poly) -> Vec<Rational> {
        let d = self.constants.d_last();
        roots
            .iter()
            .enumerate()
            .map(|(i, li)| {
                let prod = roots
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(Rational::one(), |acc, (_, lj)| acc * (li - lj));
                r.eval(li) / (d * prod)
            })
            .collect()
    }

    pub fn generic_fiber(&self, f: &Poly, g: &Poly) -> Result<FiberDescription> {
        let pair = InvariantPair::new(f.clone(), g.clone())?;
        self.check_shape(&pair)?;
        if discriminant(f)?.is_zero() {
            return Err(Error::RootPattern(
                "f has a repeated root; use the double-root fiber".into(),
            ));
        }
        if resultant(f, g)?.is_zero() {
            return Err(Error::RootPattern(
                "resultant vanishes; use the resultant-stratum fiber".into(),
            ));
        }
        let roots = simple_roots(f)?;
        let (a, r) = self.split(&pair)?;
        let n = roots.len();
        let base = SlicePoint::new(
            QMatrix::diag(&roots),
            alloc::vec![Rational::one(); n],
            self.residues(&roots, &r),
            a,
        )?;
        self.finish(Stratum::Generic, pair, base, FiberStructure::Torsor)
    }

    /// Base point with `(X, Y) = (0, 0)` at the root killing `r`.
    pub fn resultant_stratum_fiber(&self, f: &Poly, g: &Poly) -> Result<FiberDescription> {
        let pair = InvariantPair::new(f.clone(), g.clone())?;
        self.check_shape(&pair)?;
        if discriminant(f)?.is_zero() {
            return Err(Error::RootPattern("f has a repeated root".into()));
        }
        let roots = simple_roots(f)?;
        let (a, r) = self.split(&pair)?;
        let killed: Vec<usize> = (0..roots.len())
            .filter(|&i| r.eval(&roots[i]).is_zero())
            .collect();
        let index = match killed.as_slice() {
            [i] => *i,
            [] => {
                return Err(Error::RootPattern(
                    "resultant is nonzero; use the generic fiber".into(),
                ))
            }
            _ => {
                return Err(Error::RootPattern(format!(
                    "{} roots are common to f and g",
                    killed.len()
                )))
            }
        };
        let mut v = alloc::vec![Rational::one(); roots.len()];
        v[index] = Rational::zero();
        let base = SlicePoint::new(QMatrix::diag(&roots), v, self.residues(&roots, &r), a)?;
        self.finish(
            Stratum::ResultantZero { index },
            pair,
            base,
            FiberStructure::CrossQuotient,
        )
    }

    /// Base point with `x = J_2(λ0) ⊕ diag(rest)` and `v = (0, 1, …, 1)`.
    pub fn double_root_fiber(&self, f: &Poly, g: &Poly) -> Result<FiberDescription> {
        let pair = InvariantPair::new(f.clone(), g.clone())?;
        self.check_shape(&pair)?;
        if resultant(f, g)?.is_zero() {
            return Err(Error::RootPattern("resultant vanishes".into()));
        }
        let n = pair.n();
        let roots = f.rational_roots()?;
        if roots.iter().map(|(_, k)| k).sum::<usize>() != n {
            return Err(Error::RootPattern("f does not split over Q".into()));
        }
        let doubles: Vec<&Rational> = roots
            .iter()
            .filter(|(_, k)| *k == 2)
            .map(|(r, _)| r)
            .collect();
        if doubles.len() != 1 || roots.iter().any(|(_, k)| *k > 2) {
            return Err(Error::RootPattern(
                "need exactly one double root, the rest simple".into(),
            ));
        }
        let l0 = doubles[0].clone();
        let rest: Vec<Rational> = roots
            .iter()
            .filter(|(_, k)| *k == 1)
            .map(|(r, _)| r.clone())
            .collect();
        let (a, r) = self.split(&pair)?;
        let d = self.constants.d_last();

        // r/f = w1/(λ−λ0)² + w2/(λ−λ0) + Σ w_i/(λ−λ_i), all over d
        let h = Poly::from_roots(&rest);
        let (r0, h0) = (r.eval(&l0), h.eval(&l0));
        let w1 = &r0 / (d * &h0);
        let deriv = (r.derivative().eval(&l0) * &h0 - &r0 * h.derivative().eval(&l0)) / (&h0 * &h0);
        let w2 = deriv / d;
        let fprime = f.derivative();
        let mut vstar = alloc::vec![w1, w2];
        vstar.extend(rest.iter().map(|li| r.eval(li) / (d * fprime.eval(li))));

        let mut diag = alloc::vec![l0.clone(), l0.clone()];
        diag.extend(rest.iter().cloned());
        let mut x = QMatrix::diag(&diag);
        x[(0, 1)] = Rational::one();
        let mut v = alloc::vec![Rational::one(); n];
        v[0] = Rational::zero();
        let base = SlicePoint::new(x, v, vstar, a)?;
        self.finish(
            Stratum::DoubleRoot { root: l0 },
            pair,
            base,
            FiberStructure::Torsor,
        )
    }

    /// Dispatches on the stratum of `(f, g)`.
    pub fn fiber(&self, f: &Poly, g: &Poly) -> Result<FiberDescription> {
        if discriminant(f)?.is_zero() {
            self.double_root_fiber(f, g)
        } else if resultant(f, g)?.is_zero() {
            self.resultant_stratum_fiber(f, g)
        } else {
            self.generic_fiber(f, g)
        }
    }
}

pub fn generic_fiber(f: &Poly, g: &Poly) -> Result<FiberDescription> {
    solver_for(f, g)?.generic_fiber(f, g)
}

pub fn resultant_stratum_fiber(f: &Poly, g: &Poly) -> Result<FiberDescription> {
    solver_for(f, g)?.resultant_stratum_fiber(f, g)
}

pub fn double_root_fiber(f: &Poly, g: &Poly) -> Result<FiberDescription> {
    solver_for(f, g)?.double_root_fiber(f, g)
}

fn solver_for(f: &Poly, g: &Poly) -> Result<FiberSolver> {
    let pair = InvariantPair::new(f.clone(), g.clone())?;
    FiberSolver::new(pair.n(), pair.m())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn worked_point() {
        let pt = SlicePoint::new(
            QMatrix::from_i64(&[&[1]]),
            alloc::vec![q(1)],
            alloc::vec![q(1)],
            alloc::vec![q(2)],
        )
        .unwrap();
        let inv = invariant_map(&pt).unwrap();
        assert_eq!(inv.f, p(&[-1, 1]));
        assert_eq!(inv.g, p(&[1, -3, 1]));
        let zero = invariant_map(&SlicePoint::zero(1, 2).unwrap()).unwrap();
        assert_eq!((zero.f, zero.g), (p(&[0, 1]), p(&[0, 0, 1])));
    }

    #[test]
    fn constants_small() {
        let c = derive_constants(1, 2).unwrap();
        assert_eq!(c.d, [q(1), q(-1)]);
        assert!(c.linear);
        let c = derive_constants(1, 3).unwrap();
        assert_eq!(c.d, [q(2), q(-1), q(-1)]);
        assert!(!c.linear);
        let c = derive_constants(2, 3).unwrap();
        assert_eq!(c.d, [q(1), q(-1)]);
    }

    #[test]
    fn generic_worked() {
        let fib = generic_fiber(&p(&[-1, 1]), &p(&[1, -3, 1])).unwrap();
        assert_eq!(fib.base.values(), [q(1), q(1), q(1), q(2)]);
        assert_eq!(fib.stratum, Stratum::Generic);
    }

    #[test]
    fn double_root_worked() {
        let fib = double_root_fiber(&p(&[1, -2, 1]), &p(&[1, 0, 0, 1])).unwrap();
        assert_eq!(fib.base.x, QMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        assert_eq!(fib.base.a, [q(-2)]);
        assert_eq!(fib.base.v, [q(0), q(1)]);
        assert_eq!(fib.base.vstar, [q(-2), q(-3)]);
    }

    #[test]
    fn resultant_worked() {
        let fib = resultant_stratum_fiber(&p(&[-1, 1]), &p(&[2, -3, 1])).unwrap();
        assert_eq!(fib.base.a, [q(2)]);
        assert!(fib
            .contains(&fib.cross_point(&q(0), &q(5)).unwrap())
            .unwrap());
        assert!(!fib
            .contains(&fib.cross_point(&q(1), &q(1)).unwrap())
            .unwrap());
        assert!(generic_fiber(&p(&[-1, 1]), &p(&[2, -3, 1])).is_err());
    }
}
