use alloc::vec::Vec;

use super::smith::{pole, smith_diagonalize};
use super::{check_integrality, Context, Coweight, FMatrix, LatticePair, OUnitTransform};
use crate::error::{Error, Result};

/// Output of [`gl_normal_form`].
#[derive(Clone, Debug)]
pub struct GlNormalForm {
    pub coweight: Coweight,
    /// Carries the input pair to [`gl_canonical_pair`] of `coweight`
    /// modulo `(V(O), V*(O))`.
    pub transform: OUnitTransform,
}

/// The displayed normal form: `v = Σ_{i≤r} t^{-a_i} E_ii` and `v*` with
/// `t^{-b}` in the trailing diagonal slots, for the coweight
/// `(a_1,…,a_r,0,…,0,−b_1,…,−b_s)`.
pub fn gl_canonical_pair(coweight: &Coweight, m: usize, prec: i64) -> Result<LatticePair> {
    let n = coweight.0.len();
    if n > m {
        return Err(Error::Shape(alloc::format!(
            "coweight of length {n} needs n <= m = {m}"
        )));
    }
    let mut v = FMatrix::zeros(m, n, prec);
    let mut vstar = FMatrix::zeros(n, m, prec);
    for (slot, &c) in coweight.0.iter().enumerate() {
        if c > 0 {
            v[(slot, slot)] = pole(c, prec);
        } else if c < 0 {
            vstar[(slot, slot)] = pole(-c, prec);
        }
    }
    LatticePair::gl(v, vstar)
}

/// Orbit index of an integral pair under `GL_n(O)×GL_m(O)`.
///
/// Follows the classification argument: diagonalize `v`, check that the
/// transformed `v*` has `x_ij ∈ t^{max(a_i,a_j)}O`, then diagonalize the
/// complementary block of `v*` and move its poles to the trailing slots.
pub fn gl_normal_form(p: &LatticePair) -> Result<GlNormalForm> {
    let (n, m) = match p.context {
        Context::Gl { n, m } => (n, m),
        Context::Osp { .. } => return Err(Error::InvalidArgument("expected a GL pair".into())),
    };
    if n > m {
        return Err(Error::InvalidArgument(alloc::format!(
            "need n <= m, got n={n}, m={m}"
        )));
    }
    if !check_integrality(p)? {
        return Err(Error::IntegralityViolation("v*v or vv* has a pole".into()));
    }
    let prec = p.v.precision().min(p.vstar.precision());

    let sv = smith_diagonalize(&p.v).map_err(exhausted)?;
    let (l, l_inv, r_mat, r_inv) = (
        sv.transform.left,
        sv.transform.left_inv,
        sv.transform.right,
        sv.transform.right_inv,
    );
    let vstar1 = &(&r_inv * &p.vstar) * &l_inv;
    let a: Vec<i64> = (0..m)
        .map(|i| sv.exponents.get(i).copied().unwrap_or(0).max(0))
        .collect();
    let r = a.iter().take_while(|&&x| x > 0).count();

    for i in 0..n {
        for j in 0..m {
            let need = a[i].max(a[j]);
            if need == 0 {
                continue;
            }
            let x = &vstar1[(i, j)];
            match x.valuation() {
                Some(v) if v < need => {
                    return Err(Error::IntegralityViolation(alloc::format!(
                        "v* entry ({i},{j}) has valuation {v} < {need}"
                    )))
                }
                None if x.precision() < need => return Err(Error::PrecisionExhausted),
                _ => {}
            }
        }
    }

    let (bn, bm) = (n - r, m - r);
    let mut p_left = FMatrix::identity(bn, prec);
    let mut p_left_inv = FMatrix::identity(bn, prec);
    let mut q_right = FMatrix::identity(bm, prec);
    let mut q_right_inv = FMatrix::identity(bm, prec);
    let mut b = Vec::new();
    if bn > 0 {
        let block = vstar1.block(r, r, bn, bm);
        let sb = smith_diagonalize(&block).map_err(exhausted)?;
        b = sb.exponents.iter().copied().filter(|&e| e > 0).collect();
        p_left = sb.transform.left;
        p_left_inv = sb.transform.left_inv;
        q_right = sb.transform.right;
        q_right_inv = sb.transform.right_inv;
        // Reverse the first bn slots so the largest pole of v* lands in slot n.
        for j in 0..bn / 2 {
            let k = bn - 1 - j;
            p_left.swap_rows(j, k);
            p_left_inv.swap_cols(j, k);
            q_right.swap_cols(j, k);
            q_right_inv.swap_rows(j, k);
        }
    }
    let s = b.len();
    if r + s > n {
        return Err(Error::Internal(alloc::format!("r={r}, s={s} exceed n={n}")));
    }

    let transform = OUnitTransform {
        left: &FMatrix::embed(&q_right_inv, m, r, prec) * &l,
        left_inv: &l_inv * &FMatrix::embed(&q_right, m, r, prec),
        right: &r_mat * &FMatrix::embed(&p_left_inv, n, r, prec),
        right_inv: &FMatrix::embed(&p_left, n, r, prec) * &r_inv,
    };
    let mut cw: Vec<i64> = a[..r].to_vec();
    cw.resize(n - s, 0);
    cw.extend(b.iter().rev().map(|&x| -x));
    let coweight = Coweight::new(cw)?;

    let reduced = transform.apply(p);
    let canonical = gl_canonical_pair(&coweight, m, prec)?;
    if !reduced.v.congruent_mod_integral(&canonical.v)
        || !reduced.vstar.congruent_mod_integral(&canonical.vstar)
    {
        return Err(Error::PrecisionExhausted);
    }
    Ok(GlNormalForm {
        coweight,
        transform,
    })
}

fn exhausted(e: Error) -> Error {
    match e {
        Error::InsufficientPrecision | Error::Undecidable => Error::PrecisionExhausted,
        other => other,
    }
}
