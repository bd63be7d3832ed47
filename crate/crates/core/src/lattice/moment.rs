use super::{osp_star, Context, FMatrix, LatticePair};
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Lie algebra element `(A, B)`: `A` acts on the source, `B` on the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub source: FMatrix,
    pub target: FMatrix,
}

impl LieElement {
    pub fn add(&self, other: &LieElement) -> LieElement {
        LieElement {
            source: &self.source + &other.source,
            target: &self.target + &other.target,
        }
    }
}

/// `res ω(v, g·v)`.
///
/// For `GL`: `g·(x, x*) = (Bx − xA, Ax* − x*B)` and
/// `ω((x,x*),(y,y*)) = tr(x*y) − tr(y*x)`. For the symplectic-orthogonal
/// pair: `g·v = Bv − vA` and `ω(v, w) = tr(v*w)`.
pub fn moment_map(p: &LatticePair, g: &LieElement) -> Result<Rational> {
    let (a, b) = (&g.source, &g.target);
    let (src, tgt) = match p.context {
        Context::Gl { n, m } => (n, m),
        Context::Osp { n, m } => (2 * n, 2 * m),
    };
    if (a.rows(), a.cols()) != (src, src) || (b.rows(), b.cols()) != (tgt, tgt) {
        return Err(Error::Shape(alloc::format!(
            "Lie element must be ({src}x{src}, {tgt}x{tgt})"
        )));
    }
    let omega = match p.context {
        Context::Gl { .. } => {
            let y = &(b * &p.v) - &(&p.v * a);
            let ystar = &(a * &p.vstar) - &(&p.vstar * b);
            &(&p.vstar * &y).trace() - &(&ystar * &p.v).trace()
        }
        Context::Osp { .. } => {
            let y = &(b * &p.v) - &(&p.v * a);
            (&osp_star(&p.v) * &y).trace()
        }
    };
    omega.residue()
}
