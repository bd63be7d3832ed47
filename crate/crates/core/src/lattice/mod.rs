//! Matrix pairs over `F = Q((t))`, integrality tests, normal forms under
//! `GL_n(O)×GL_m(O)` and `O_{2n}(O)×Sp_{2m}(O)`, and the moment map.

mod fmatrix;
mod gl;
mod moment;
mod osp;
mod smith;

pub use fmatrix::FMatrix;
pub use gl::{gl_canonical_pair, gl_normal_form, GlNormalForm};
pub use moment::{moment_map, LieElement};
pub use osp::{osp_block_form, osp_star, sp_so_normal_form, sp_so_reduce, OspReduction};
pub use smith::{smith_diagonalize, SmithForm};

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Which dual pair acts on the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Context {
    /// `v: F^n → F^m`, `v*: F^m → F^n`.
    Gl { n: usize, m: usize },
    /// `v: F^{2n} → F^{2m}`, `v*` its adjoint.
    Osp { n: usize, m: usize },
}

/// A pair `(v, v*)` together with its group context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePair {
    pub v: FMatrix,
    pub vstar: FMatrix,
    pub context: Context,
}

impl LatticePair {
    pub fn gl(v: FMatrix, vstar: FMatrix) -> Result<Self> {
        let (m, n) = (v.rows(), v.cols());
        if vstar.rows() != n || vstar.cols() != m {
            return Err(Error::Shape(alloc::format!(
                "v is {m}x{n} so v* must be {n}x{m}, got {}x{}",
                vstar.rows(),
                vstar.cols()
            )));
        }
        Ok(LatticePair {
            v,
            vstar,
            context: Context::Gl { n, m },
        })
    }

    /// The pair determined by a single `2m×2n` matrix.
    pub fn osp(v: FMatrix) -> Result<Self> {
        if !v.rows().is_multiple_of(2) || !v.cols().is_multiple_of(2) {
            return Err(Error::Shape(
                "symplectic-orthogonal input needs even dimensions".into(),
            ));
        }
        let vstar = osp_star(&v);
        let context = Context::Osp {
            n: v.cols() / 2,
            m: v.rows() / 2,
        };
        Ok(LatticePair { v, vstar, context })
    }
}

/// Whether `v*v` and `vv*` both have entries in `O`.
pub fn check_integrality(p: &LatticePair) -> Result<bool> {
    let source = &p.vstar * &p.v;
    let target = &p.v * &p.vstar;
    Ok(source.is_integral()? && target.is_integral()?)
}

/// Weakly decreasing integer vector indexing an orbit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    pub fn new(v: Vec<i64>) -> Result<Self> {
        if v.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(alloc::format!(
                "{v:?} is not weakly decreasing"
            )));
        }
        Ok(Coweight(v))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Debug for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coweight{:?}", self.0)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// `O`-invertible matrices acting as `v ↦ left·v·right`,
/// `v* ↦ right_inv·v*·left_inv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OUnitTransform {
    pub left: FMatrix,
    pub left_inv: FMatrix,
    pub right: FMatrix,
    pub right_inv: FMatrix,
}

impl OUnitTransform {
    pub fn identity(m: usize, n: usize, prec: i64) -> Self {
        OUnitTransform {
            left: FMatrix::identity(m, prec),
            left_inv: FMatrix::identity(m, prec),
            right: FMatrix::identity(n, prec),
            right_inv: FMatrix::identity(n, prec),
        }
    }

    pub fn apply(&self, p: &LatticePair) -> LatticePair {
        LatticePair {
            v: &(&self.left * &p.v) * &self.right,
            vstar: &(&self.right_inv * &p.vstar) * &self.left_inv,
            context: p.context,
        }
    }

    /// Whether every factor is integral and the stored inverses are inverses.
    pub fn is_valid(&self) -> bool {
        let ints = [&self.left, &self.left_inv, &self.right, &self.right_inv]
            .iter()
            .all(|m| matches!(m.is_integral(), Ok(true)));
        let pl = self.left.precision().min(self.left_inv.precision());
        let pr = self.right.precision().min(self.right_inv.precision());
        ints && (&self.left * &self.left_inv).agrees(&FMatrix::identity(self.left.rows(), pl))
            && (&self.right * &self.right_inv).agrees(&FMatrix::identity(self.right.rows(), pr))
    }
}

/// Row and column operations on a matrix, mirrored into the accumulated
/// transforms and their inverses.
pub(crate) struct Tracker {
    pub a: FMatrix,
    pub t: OUnitTransform,
}

impl Tracker {
    pub fn new(a: FMatrix, prec: i64) -> Self {
        let t = OUnitTransform::identity(a.rows(), a.cols(), prec);
        Tracker { a, t }
    }

    pub fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        self.t.left.swap_rows(i, k);
        self.t.left_inv.swap_cols(i, k);
    }

    pub fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        self.t.right.swap_cols(j, k);
        self.t.right_inv.swap_rows(j, k);
    }

    /// Row `i` += `c`·row `k`.
    pub fn add_row(&mut self, i: usize, k: usize, c: &crate::TruncatedLaurent) {
        self.a.add_row_multiple(i, k, c);
        self.t.left.add_row_multiple(i, k, c);
        self.t.left_inv.add_col_multiple(k, i, &-c);
    }

    /// Column `j` += `c`·column `k`.
    pub fn add_col(&mut self, j: usize, k: usize, c: &crate::TruncatedLaurent) {
        self.a.add_col_multiple(j, k, c);
        self.t.right.add_col_multiple(j, k, c);
        self.t.right_inv.add_row_multiple(k, j, &-c);
    }

    pub fn scale_row(
        &mut self,
        k: usize,
        u: &crate::TruncatedLaurent,
        u_inv: &crate::TruncatedLaurent,
    ) {
        self.a.scale_row(k, u);
        self.t.left.scale_row(k, u);
        self.t.left_inv.scale_col(k, u_inv);
    }
}
