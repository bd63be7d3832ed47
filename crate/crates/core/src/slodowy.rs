//! Principal `sl2`-triples and the Slodowy slice `f + z(e)` in `gl_m` for the
//! pair `(GL_n, GL_m)`, `n < m`.
//!
//! The nilpotent `e` lives in the lower-right `(m−n)`-block. A point of the
//! slice is
//!
//! ```text
//! ⎛ x              v ⎞
//! ⎜ v*  a1 a2 … ak   ⎟
//! ⎜     c1 a1 …      ⎟
//! ⎜        ⋱  ⋱   ⋮  ⎟
//! ⎝         c_{k-1} a1⎠
//! ```
//!
//! with `k = m − n`, `v` in the last column and `v*` in row `n`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{q, MultiPoly, QMatrix, Rational};

/// `(e, h, f)` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`. Entries are
/// integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: QMatrix,
    pub h: QMatrix,
    pub f: QMatrix,
}

impl Sl2Triple {
    pub fn size(&self) -> usize {
        self.e.rows()
    }

    /// Checks the three bracket identities exactly.
    pub fn is_valid(&self) -> bool {
        let two = q(2);
        self.e.bracket(&self.f) == self.h
            && self.h.bracket(&self.e) == self.e.scale(&two)
            && self.h.bracket(&self.f) == self.f.scale(&-two)
    }

    /// Places the triple in the lower-right corner of `gl_m`.
    pub fn embed(&self, m: usize) -> Result<Sl2Triple> {
        let k = self.size();
        if k > m {
            return Err(Error::Shape(format!("cannot embed size {k} into gl_{m}")));
        }
        let put = |a: &QMatrix| {
            let off = m - k;
            QMatrix::from_fn(m, m, |i, j| {
                if i >= off && j >= off {
                    a[(i - off, j - off)].clone()
                } else {
                    Rational::zero()
                }
            })
        };
        Ok(Sl2Triple {
            e: put(&self.e),
            h: put(&self.h),
            f: put(&self.f),
        })
    }
}

/// `e = Σ E_{i,i+1}`, `h = diag(k−1, k−3, …, 1−k)`, `f = Σ i(k−i) E_{i+1,i}`.
pub fn principal_sl2(k: usize) -> Result<Sl2Triple> {
    if k == 0 {
        return Err(Error::InvalidArgument("principal_sl2 needs k >= 1".into()));
    }
    let ki = k as i64;
    let e = QMatrix::from_fn(k, k, |i, j| if j == i + 1 { q(1) } else { q(0) });
    let h = QMatrix::from_fn(k, k, |i, j| {
        if i == j {
            q(ki - 1 - 2 * i as i64)
        } else {
            q(0)
        }
    });
    let f = QMatrix::from_fn(k, k, |i, j| {
        if i == j + 1 {
            let s = i as i64;
            q(s * (ki - s))
        } else {
            q(0)
        }
    });
    Ok(Sl2Triple { e, h, f })
}

/// The linear map `z ↦ [e, z]` on `gl_m`, in the basis `E_ij` ordered
/// row-major.
fn ad_matrix(e: &QMatrix) -> QMatrix {
    let m = e.rows();
    let mut ad = QMatrix::zeros(m * m, m * m);
    for r in 0..m {
        for s in 0..m {
            let col = r * m + s;
            // [e, E_rs] = Σ_i e_ir E_is − Σ_j e_sj E_rj
            for i in 0..m {
                if !e[(i, r)].is_zero() {
                    ad[(i * m + s, col)] += e[(i, r)].clone();
                }
            }
            for j in 0..m {
                if !e[(s, j)].is_zero() {
                    ad[(r * m + j, col)] -= e[(s, j)].clone();
                }
            }
        }
    }
    ad
}

/// A basis of `{z : [e, z] = 0}`, solved from the kernel of `ad(e)`.
pub fn centralizer_basis(e: &QMatrix) -> Result<Vec<QMatrix>> {
    if !e.is_square() {
        return Err(Error::Shape("centralizer of a non-square matrix".into()));
    }
    let m = e.rows();
    Ok(ad_matrix(e)
        .kernel()
        .into_iter()
        .map(|vec| QMatrix::from_fn(m, m, |i, j| vec[i * m + j].clone()))
        .collect())
}

/// A coordinate of the slice chart. Indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coordinate {
    X(usize, usize),
    V(usize),
    VStar(usize),
    /// The band value `a_i`, `i ≥ 1`.
    A(usize),
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Coordinate::X(i, j) => write!(f, "x{}{}", i + 1, j + 1),
            Coordinate::V(i) => write!(f, "v{}", i + 1),
            Coordinate::VStar(i) => write!(f, "vs{}", i + 1),
            Coordinate::A(i) => write!(f, "a{i}"),
        }
    }
}

/// Coordinates, structure constants and grading of the slice for `(n, m)`.
#[derive(Clone, Debug)]
pub struct SliceChart {
    pub n: usize,
    pub m: usize,
    /// The embedded principal triple.
    pub triple: Sl2Triple,
    /// Subdiagonal constants `c_1 … c_{m−n−1}`, read off `f`.
    pub c: Vec<Rational>,
}

pub fn build_slice_chart(n: usize, m: usize) -> Result<SliceChart> {
    if n >= m {
        return Err(Error::InvalidArgument(format!(
            "slice chart needs n < m, got n={n}, m={m}"
        )));
    }
    let k = m - n;
    let triple = principal_sl2(k)?.embed(m)?;
    let c = (1..k)
        .map(|i| triple.f[(n + i, n + i - 1)].clone())
        .collect();
    Ok(SliceChart { n, m, triple, c })
}

impl SliceChart {
    /// Band width `m − n`.
    pub fn k(&self) -> usize {
        self.m - self.n
    }

    /// All coordinates: `x` row-major, then `v`, `v*`, `a_1 … a_k`.
    pub fn coordinates(&self) -> Vec<Coordinate> {
        let n = self.n;
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..n {
            for j in 0..n {
                out.push(Coordinate::X(i, j));
            }
        }
        out.extend((0..n).map(Coordinate::V));
        out.extend((0..n).map(Coordinate::VStar));
        out.extend((1..=self.k()).map(Coordinate::A));
        out
    }

    pub fn dim(&self) -> usize {
        self.n * self.n + 2 * self.n + self.k()
    }

    pub fn contains(&self, c: Coordinate) -> bool {
        let n = self.n;
        match c {
            Coordinate::X(i, j) => i < n && j < n,
            Coordinate::V(i) | Coordinate::VStar(i) => i < n,
            Coordinate::A(i) => (1..=self.k()).contains(&i),
        }
    }

    /// Position of `c` in [`Self::coordinates`].
    pub fn index_of(&self, c: Coordinate) -> Result<usize> {
        if !self.contains(c) {
            return Err(unknown(c, self));
        }
        let n = self.n;
        Ok(match c {
            Coordinate::X(i, j) => i * n + j,
            Coordinate::V(i) => n * n + i,
            Coordinate::VStar(i) => n * n + n + i,
            Coordinate::A(i) => n * n + 2 * n + i - 1,
        })
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.coordinates().iter().map(|c| format!("{c}")).collect()
    }

    /// Matrix positions carrying the coordinate with coefficient one.
    pub fn positions(&self, c: Coordinate) -> Result<Vec<(usize, usize)>> {
        if !self.contains(c) {
            return Err(unknown(c, self));
        }
        let (n, m) = (self.n, self.m);
        Ok(match c {
            Coordinate::X(i, j) => alloc::vec![(i, j)],
            Coordinate::V(i) => alloc::vec![(i, m - 1)],
            Coordinate::VStar(i) => alloc::vec![(n, i)],
            Coordinate::A(i) => (n..=m - i).map(|r| (r, r + i - 1)).collect(),
        })
    }

    /// The element of `z(e)` dual to the coordinate.
    pub fn basis_matrix(&self, c: Coordinate) -> Result<QMatrix> {
        let mut z = QMatrix::zeros(self.m, self.m);
        for (i, j) in self.positions(c)? {
            z[(i, j)] = q(1);
        }
        Ok(z)
    }

    /// `2 + (ad h)`-weight of the coordinate's matrix position.
    pub fn grading_of(&self, c: Coordinate) -> Result<i64> {
        let (i, j) = self.positions(c)?[0];
        let h = &self.triple.h;
        let weight = &h[(i, i)] - &h[(j, j)];
        Ok(2 + weight.to_integer().try_into().unwrap_or(i64::MAX))
    }

    /// `(coordinate, degree)` for every coordinate.
    pub fn grading_table(&self) -> Vec<(Coordinate, i64)> {
        self.coordinates()
            .into_iter()
            .map(|c| {
                let d = self.grading_of(c).expect("chart coordinate");
                (c, d)
            })
            .collect()
    }

    /// The generic slice matrix; variable `i` is `coordinates()[i]`.
    pub fn symbolic_matrix(&self) -> Vec<Vec<MultiPoly>> {
        let m = self.m;
        let mut out: Vec<Vec<MultiPoly>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| MultiPoly::constant(self.triple.f[(i, j)].clone()))
                    .collect()
            })
            .collect();
        for (idx, c) in self.coordinates().into_iter().enumerate() {
            for (i, j) in self.positions(c).expect("chart coordinate") {
                out[i][j] = &out[i][j] + &MultiPoly::var(idx);
            }
        }
        out
    }

    /// Assembles `f + Σ value · basis_matrix`.
    pub fn assemble(&self, p: &SlicePoint) -> Result<QMatrix> {
        if p.n != self.n || p.m != self.m {
            return Err(Error::Shape(format!(
                "point of shape ({},{}) on chart ({},{})",
                p.n, p.m, self.n, self.m
            )));
        }
        let mut out = self.triple.f.clone();
        for (c, val) in self.coordinates().into_iter().zip(p.values()) {
            for (i, j) in self.positions(c)? {
                out[(i, j)] += val.clone();
            }
        }
        Ok(out)
    }
}

fn unknown(c: Coordinate, chart: &SliceChart) -> Error {
    Error::InvalidArgument(format!(
        "coordinate {c} is not on the ({},{}) chart",
        chart.n, chart.m
    ))
}

/// Rational values for every chart coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicePoint {
    pub n: usize,
    pub m: usize,
    pub x: QMatrix,
    pub v: Vec<Rational>,
    pub vstar: Vec<Rational>,
    /// `a_1 … a_{m−n}`.
    pub a: Vec<Rational>,
}

impl SlicePoint {
    pub fn new(
        x: QMatrix,
        v: Vec<Rational>,
        vstar: Vec<Rational>,
        a: Vec<Rational>,
    ) -> Result<Self> {
        let n = x.rows();
        if !x.is_square() || v.len() != n || vstar.len() != n {
            return Err(Error::Shape(format!(
                "x is {}x{}, v has {}, v* has {} entries",
                x.rows(),
                x.cols(),
                v.len(),
                vstar.len()
            )));
        }
        if a.is_empty() {
            return Err(Error::Shape("need at least one band value (n < m)".into()));
        }
        let m = n + a.len();
        Ok(SlicePoint {
            n,
            m,
            x,
            v,
            vstar,
            a,
        })
    }

    pub fn zero(n: usize, m: usize) -> Result<Self> {
        if n >= m {
            return Err(Error::InvalidArgument(format!(
                "need n < m, got n={n}, m={m}"
            )));
        }
        Ok(SlicePoint {
            n,
            m,
            x: QMatrix::zeros(n, n),
            v: alloc::vec![Rational::zero(); n],
            vstar: alloc::vec![Rational::zero(); n],
            a: alloc::vec![Rational::zero(); m - n],
        })
    }

    /// Values in chart coordinate order.
    pub fn values(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.n * self.n + 2 * self.n + self.a.len());
        for i in 0..self.n {
            out.extend_from_slice(self.x.row(i));
        }
        out.extend_from_slice(&self.v);
        out.extend_from_slice(&self.vstar);
        out.extend_from_slice(&self.a);
        out
    }

    pub fn from_values(n: usize, m: usize, vals: &[Rational]) -> Result<Self> {
        if n >= m || vals.len() != n * n + 2 * n + (m - n) {
            return Err(Error::Shape(format!(
                "{} values for the ({n},{m}) chart",
                vals.len()
            )));
        }
        let x = QMatrix::from_fn(n, n, |i, j| vals[i * n + j].clone());
        let v = vals[n * n..n * n + n].to_vec();
        let vstar = vals[n * n + n..n * n + 2 * n].to_vec();
        let a = vals[n * n + 2 * n..].to_vec();
        SlicePoint::new(x, v, vstar, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;
    use proptest::prelude::*;

    #[test]
    fn small_triples() {
        let t1 = principal_sl2(1).unwrap();
        assert!(t1.e.is_zero() && t1.h.is_zero() && t1.f.is_zero());
        let t2 = principal_sl2(2).unwrap();
        assert_eq!(t2.e, QMatrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert_eq!(t2.h, QMatrix::from_i64(&[&[1, 0], &[0, -1]]));
        assert_eq!(t2.f, QMatrix::from_i64(&[&[0, 0], &[1, 0]]));
        let t3 = principal_sl2(3).unwrap();
        assert_eq!((t3.f[(1, 0)].clone(), t3.f[(2, 1)].clone()), (q(2), q(2)));
        assert!(principal_sl2(0).is_err());
    }

    #[test]
    fn triples_satisfy_brackets() {
        for k in 1..=12 {
            let t = principal_sl2(k).unwrap();
            assert!(t.is_valid(), "k={k}");
            assert!(t.embed(k + 3).unwrap().is_valid());
        }
    }

    #[test]
    fn centralizer_dimensions() {
        let e12 = principal_sl2(1).unwrap().embed(2).unwrap().e;
        assert_eq!(centralizer_basis(&e12).unwrap().len(), 4);
        assert_eq!(centralizer_basis(&QMatrix::zeros(3, 3)).unwrap().len(), 9);
        let e23 = principal_sl2(1).unwrap().embed(3).unwrap().e;
        assert_eq!(centralizer_basis(&e23).unwrap().len(), 9);
        let e13 = principal_sl2(2).unwrap().embed(3).unwrap().e;
        assert_eq!(centralizer_basis(&e13).unwrap().len(), 1 + 2 + 2);
    }

    #[test]
    fn chart_layouts() {
        let c12 = build_slice_chart(1, 2).unwrap();
        assert_eq!(c12.variable_names(), ["x11", "v1", "vs1", "a1"]);
        let s = c12.symbolic_matrix();
        assert_eq!(s[0][0], MultiPoly::var(0));
        assert_eq!(s[0][1], MultiPoly::var(1));
        assert_eq!(s[1][0], MultiPoly::var(2));
        assert_eq!(s[1][1], MultiPoly::var(3));

        let c13 = build_slice_chart(1, 3).unwrap();
        assert_eq!(c13.c, [q(1)]);
        let s = c13.symbolic_matrix();
        assert_eq!(s[2][1], MultiPoly::constant(q(1)));
        assert_eq!(s[1][2], MultiPoly::var(4));
        assert_eq!(s[1][1], MultiPoly::var(3));
        assert_eq!(s[2][2], MultiPoly::var(3));
        assert_eq!(s[0][2], MultiPoly::var(1));
        assert!(s[0][1].is_zero() && s[2][0].is_zero());
        assert!(build_slice_chart(2, 2).is_err());
    }

    #[test]
    fn gradings() {
        let c = build_slice_chart(1, 2).unwrap();
        assert_eq!(c.grading_of(Coordinate::V(0)).unwrap(), 2);
        let c = build_slice_chart(2, 6).unwrap();
        assert_eq!(c.grading_of(Coordinate::X(1, 0)).unwrap(), 2);
        assert_eq!(c.grading_of(Coordinate::A(3)).unwrap(), 6);
        assert_eq!(c.grading_of(Coordinate::VStar(1)).unwrap(), 5);
        assert!(c.grading_of(Coordinate::A(5)).is_err());
        assert!(c.grading_of(Coordinate::V(2)).is_err());
    }

    #[test]
    fn point_round_trip() {
        let p = SlicePoint::new(
            QMatrix::from_i64(&[&[1]]),
            alloc::vec![q(1)],
            alloc::vec![q(1)],
            alloc::vec![q(2)],
        )
        .unwrap();
        assert_eq!((p.n, p.m), (1, 2));
        let chart = build_slice_chart(1, 2).unwrap();
        assert_eq!(
            chart.assemble(&p).unwrap(),
            QMatrix::from_i64(&[&[1, 1], &[1, 2]])
        );
        assert_eq!(SlicePoint::from_values(1, 2, &p.values()).unwrap(), p);
    }

    proptest! {
        #[test]
        fn assembled_points_lie_on_slice(
            n in 1usize..4, k in 1usize..4,
            seed in proptest::collection::vec(-9i64..10, 40),
        ) {
            let m = n + k;
            let chart = build_slice_chart(n, m).unwrap();
            let vals: Vec<Rational> = seed.iter().take(chart.dim()).map(|&s| q(s)).collect();
            let p = SlicePoint::from_values(n, m, &vals).unwrap();
            let mat = chart.assemble(&p).unwrap();
            let diff = &mat - &chart.triple.f;
            prop_assert!(chart.triple.e.bracket(&diff).is_zero());
        }
    }
}
