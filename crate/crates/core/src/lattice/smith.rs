use alloc::vec::Vec;

use super::{FMatrix, OUnitTransform, Tracker};
use crate::error::{Error, Result};
use crate::exactnum::{Rational, TruncatedLaurent};

/// Output of [`smith_diagonalize`].
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// `a_1 ≥ a_2 ≥ …`; the pivot in slot `k` is exactly `t^{-a_k}`.
    pub exponents: Vec<i64>,
    pub transform: OUnitTransform,
    /// `left·v·right`, diagonal in the pivot slots.
    pub reduced: FMatrix,
    /// The block after the last pivot is zero modulo `t^residual_precision`.
    pub residual_precision: i64,
}

/// Smith reduction over `O` of a matrix over `F`.
///
/// Pivots are chosen by lowest valuation, ties broken row-major. The
/// reduction stops once the remaining block is an apparent zero, or once an
/// apparent zero could hide a term of lower valuation than every known
/// entry; the remaining block is then zero modulo `t^residual_precision`.
/// Fails with [`Error::InsufficientPrecision`] when that residual is not
/// known to be integral.
pub fn smith_diagonalize(v: &FMatrix) -> Result<SmithForm> {
    let (m, n) = (v.rows(), v.cols());
    let mut tr = Tracker::new(v.clone(), v.precision());
    let mut exponents = Vec::new();
    let mut residual = i64::MAX;
    for k in 0..m.min(n) {
        let mut best: Option<(i64, usize, usize)> = None;
        let mut zero_prec = i64::MAX;
        for i in k..m {
            for j in k..n {
                let x = &tr.a[(i, j)];
                match x.valuation() {
                    Some(val) if best.is_none_or(|(b, _, _)| val < b) => best = Some((val, i, j)),
                    Some(_) => {}
                    None => zero_prec = zero_prec.min(x.precision()),
                }
            }
        }
        let (val, pi, pj) = match best {
            Some((val, pi, pj)) if val < zero_prec => (val, pi, pj),
            Some((val, _, _)) => {
                residual = zero_prec.min(val);
                break;
            }
            None => {
                residual = zero_prec;
                break;
            }
        };
        tr.swap_rows(k, pi);
        tr.swap_cols(k, pj);
        let p_inv = tr.a[(k, k)].invert()?;
        for i in (k + 1)..m {
            if !tr.a[(i, k)].is_apparent_zero() {
                let c = -(&tr.a[(i, k)] * &p_inv);
                tr.add_row(i, k, &c);
            }
        }
        for j in (k + 1)..n {
            if !tr.a[(k, j)].is_apparent_zero() {
                let c = -(&p_inv * &tr.a[(k, j)]);
                tr.add_col(j, k, &c);
            }
        }
        let unit = p_inv.shift(val);
        let unit_inv = tr.a[(k, k)].shift(-val);
        tr.scale_row(k, &unit, &unit_inv);
        exponents.push(-val);
    }
    if residual < 0 {
        return Err(Error::InsufficientPrecision);
    }
    Ok(SmithForm {
        exponents,
        transform: tr.t,
        reduced: tr.a,
        residual_precision: residual,
    })
}

/// `t^{-a}` known to `prec`.
pub(crate) fn pole(a: i64, prec: i64) -> TruncatedLaurent {
    TruncatedLaurent::monomial(Rational::from_integer(1.into()), -a, prec)
}
