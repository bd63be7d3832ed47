use alloc::vec::Vec;

use super::gl::gl_normal_form;
use super::smith::pole;
use super::{Context, Coweight, FMatrix, LatticePair};
use crate::error::{Error, Result};
use crate::exactnum::TruncatedLaurent;

/// `v* = [[−v₄ᵗ, v₃ᵗ], [−v₂ᵗ, v₁ᵗ]]` for `v = [[v₁, v₃], [v₂, v₄]]`.
///
/// This is the adjoint for the symmetric form `[[0,I],[I,0]]` on `F^{2n}`
/// and the symplectic form `[[0,I],[−I,0]]` on `F^{2m}`.
pub fn osp_star(v: &FMatrix) -> FMatrix {
    let (m, n) = (v.rows() / 2, v.cols() / 2);
    let v1 = v.block(0, 0, m, n);
    let v3 = v.block(0, n, m, n);
    let v2 = v.block(m, 0, m, n);
    let v4 = v.block(m, n, m, n);
    FMatrix::from_blocks(
        &-&v4.transpose(),
        &v3.transpose(),
        &-&v2.transpose(),
        &v1.transpose(),
    )
}

/// The displayed normal form: `t^{-a_i}` in the leading slots of `v₁` and
/// `t^{-b_j}` in the trailing slots of `v₄`.
pub fn osp_block_form(a: &[i64], b: &[i64], n: usize, m: usize, prec: i64) -> Result<FMatrix> {
    if a.len() + b.len() > n || n > m {
        return Err(Error::Shape(alloc::format!(
            "need r + s <= n <= m, got r={}, s={}, n={n}, m={m}",
            a.len(),
            b.len()
        )));
    }
    let mut v = FMatrix::zeros(2 * m, 2 * n, prec);
    for (i, &x) in a.iter().enumerate() {
        v[(i, i)] = pole(x, prec);
    }
    for (j, &x) in b.iter().enumerate() {
        let slot = n - b.len() + j;
        v[(m + slot, n + slot)] = pole(x, prec);
    }
    Ok(v)
}

/// Intermediate states of [`sp_so_reduce`].
#[derive(Clone, Debug)]
pub struct OspReduction {
    /// Pole orders found while diagonalizing `v₁`.
    pub pivots: Vec<i64>,
    /// The matrix once `v₂` and `v₃` have been made integral.
    pub symmetrized: FMatrix,
    /// Coweight of the `GL` pair `(v₁, v₄ᵗ)`.
    pub gl_coweight: Coweight,
    /// Final representative, congruent to the canonical form modulo `O`.
    pub reduced: FMatrix,
    pub coweight: Coweight,
}

/// Orbit index under `O_{2n}(O)×Sp_{2m}(O)`; see [`sp_so_reduce`].
pub fn sp_so_normal_form(v: &FMatrix) -> Result<Coweight> {
    sp_so_reduce(v).map(|r| r.coweight)
}

/// Reduction of a `2m×2n` matrix `v = [[v₁, v₃], [v₂, v₄]]`.
///
/// Each pivot of lowest valuation among the active parts of the four blocks
/// is moved into `v₁` by Weyl reflections and permutations, its row and
/// column in `v₁` are cleared by `GL_m(O)×GL_n(O)`, its column in `v₂` by a
/// symmetric `Sym²O^m` element and its row in `v₃` by an antisymmetric
/// `Λ²O^n` element. Integrality of `v*v` and `vv*` then forces the dual row
/// and column of the pivot into `O`. Once `v₂` and `v₃` are integral the
/// pair `(v₁, v₄ᵗ)` satisfies the `GL` integrality conditions and is reduced
/// by [`gl_normal_form`]; a final Weyl cleanup moves the `v₄` poles into
/// `v₁` and sorts.
pub fn sp_so_reduce(v: &FMatrix) -> Result<OspReduction> {
    let pair = LatticePair::osp(v.clone())?;
    let (n, m) = match pair.context {
        Context::Osp { n, m } => (n, m),
        Context::Gl { .. } => unreachable!(),
    };
    if n > m {
        return Err(Error::InvalidArgument(alloc::format!(
            "need n <= m, got n={n}, m={m}"
        )));
    }
    if !super::check_integrality(&pair)? {
        return Err(Error::IntegralityViolation("v*v or vv* has a pole".into()));
    }
    let prec = v.precision();
    let mut w = Work { a: v.clone(), n, m };

    let mut pivots = Vec::new();
    for k in 0..n {
        let Some((val, i, j, region)) = w.find_pivot(k)? else {
            break;
        };
        match region {
            Region::V1 => {}
            Region::V2 => w.weyl_row(i),
            Region::V3 => w.weyl_col(j),
            Region::V4 => {
                w.weyl_row(i);
                w.weyl_col(j);
            }
        }
        w.gl_m_swap(i, k);
        w.gl_n_swap(j, k);
        let p_inv = w.a[(k, k)].invert()?;
        for l in (k + 1)..m {
            if !w.a[(l, k)].is_apparent_zero() {
                let c = -(&w.a[(l, k)] * &p_inv);
                w.gl_m_add(l, k, &c);
            }
        }
        for j in (k + 1)..n {
            if !w.a[(k, j)].is_apparent_zero() {
                let c = -(&w.a[(k, j)] * &p_inv);
                w.gl_n_add(j, k, &c);
            }
        }
        for l in k..m {
            if !w.a[(m + l, k)].is_apparent_zero() {
                let y = -(&w.a[(m + l, k)] * &p_inv);
                w.sym2(l, k, &y);
            }
        }
        for j in (k + 1)..n {
            if !w.a[(k, n + j)].is_apparent_zero() {
                let z = -(&w.a[(k, n + j)] * &p_inv);
                w.lambda2(k, j, &z);
            }
        }
        let unit = p_inv.shift(val);
        let unit_inv = w.a[(k, k)].shift(-val);
        w.gl_m_scale(k, &unit, &unit_inv);
        pivots.push(-val);
    }
    let symmetrized = w.a.clone();
    for (block, (r0, c0)) in [("v2", (m, 0)), ("v3", (0, n))] {
        match symmetrized.block(r0, c0, m, n).is_integral() {
            Ok(true) => {}
            Ok(false) => {
                return Err(Error::Internal(alloc::format!(
                    "{block} not integral after symmetrization"
                )))
            }
            Err(_) => return Err(Error::PrecisionExhausted),
        }
    }

    let v1 = w.a.block(0, 0, m, n);
    let v4 = w.a.block(m, n, m, n);
    let gl_pair = LatticePair::gl(v1, v4.transpose())?;
    let nf = gl_normal_form(&gl_pair)?;
    let t = &nf.transform;
    let target = FMatrix::from_blocks(
        &t.left,
        &FMatrix::zeros(m, m, prec),
        &FMatrix::zeros(m, m, prec),
        &t.left_inv.transpose(),
    );
    let source = FMatrix::from_blocks(
        &t.right,
        &FMatrix::zeros(n, n, prec),
        &FMatrix::zeros(n, n, prec),
        &t.right_inv.transpose(),
    );
    w.a = &(&target * &w.a) * &source;

    // Weyl cleanup: reflect the v₄ poles into v₁, then sort descending.
    let mut orders: Vec<i64> = nf.coweight.0.iter().map(|&c| c.abs()).collect();
    for (slot, &c) in nf.coweight.0.iter().enumerate() {
        if c < 0 {
            w.weyl_row(slot);
            w.weyl_col(slot);
        }
    }
    for k in 0..n {
        let best = (k..n).fold(k, |b, j| if orders[j] > orders[b] { j } else { b });
        if best != k {
            orders.swap(k, best);
            w.gl_m_swap(k, best);
            w.gl_n_swap(k, best);
        }
    }
    let coweight = Coweight::new(orders)?;
    let poles: Vec<i64> = coweight.0.iter().copied().filter(|&c| c > 0).collect();
    let canonical = osp_block_form(&poles, &[], n, m, prec)?;
    if !w.a.congruent_mod_integral(&canonical) {
        return Err(Error::PrecisionExhausted);
    }
    Ok(OspReduction {
        pivots,
        symmetrized,
        gl_coweight: nf.coweight,
        reduced: w.a,
        coweight,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Region {
    V1,
    V2,
    V3,
    V4,
}

/// The working matrix with the generators of `O_{2n}(O)×Sp_{2m}(O)` used by
/// the reduction. Rows `0..m` and columns `0..n` are the `F^m`, `F^n`
/// halves; rows `m..2m` and columns `n..2n` their duals.
struct Work {
    a: FMatrix,
    n: usize,
    m: usize,
}

impl Work {
    /// Lowest-valuation entry with negative valuation in the active parts of
    /// all four blocks, scanned row-major over the whole matrix. Scanning
    /// `v₄` as well keeps the pivot dominant after the Weyl reflections.
    fn find_pivot(&self, k: usize) -> Result<Option<(i64, usize, usize, Region)>> {
        let (n, m) = (self.n, self.m);
        let mut best: Option<(i64, usize, usize, Region)> = None;
        let mut zero_prec = i64::MAX;
        let mut visit =
            |x: &TruncatedLaurent, i: usize, j: usize, region: Region| match x.valuation() {
                Some(v) if best.is_none_or(|b| v < b.0) => best = Some((v, i, j, region)),
                Some(_) => {}
                None => zero_prec = zero_prec.min(x.precision()),
            };
        for i in k..m {
            for j in k..n {
                visit(&self.a[(i, j)], i, j, Region::V1);
            }
            for j in k..n {
                visit(&self.a[(i, n + j)], i, j, Region::V3);
            }
        }
        for i in k..m {
            for j in k..n {
                visit(&self.a[(m + i, j)], i, j, Region::V2);
            }
            for j in k..n {
                visit(&self.a[(m + i, n + j)], i, j, Region::V4);
            }
        }
        match best {
            Some(b) if b.0 < 0 && b.0 < zero_prec => Ok(Some(b)),
            Some(b) if b.0 < 0 => Err(Error::PrecisionExhausted),
            _ if zero_prec < 0 => Err(Error::PrecisionExhausted),
            _ => Ok(None),
        }
    }

    /// `A = I + c·E_lk` on `F^m`, hence `A^{-t} = I − c·E_kl` on the dual.
    fn gl_m_add(&mut self, l: usize, k: usize, c: &TruncatedLaurent) {
        self.a.add_row_multiple(l, k, c);
        self.a.add_row_multiple(self.m + k, self.m + l, &-c);
    }

    fn gl_m_swap(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        self.a.swap_rows(self.m + i, self.m + k);
    }

    fn gl_m_scale(&mut self, k: usize, u: &TruncatedLaurent, u_inv: &TruncatedLaurent) {
        self.a.scale_row(k, u);
        self.a.scale_row(self.m + k, u_inv);
    }

    /// Right multiplication by `diag(C, C^{-t})` with `C = I + c·E_kj`.
    fn gl_n_add(&mut self, j: usize, k: usize, c: &TruncatedLaurent) {
        self.a.add_col_multiple(j, k, c);
        self.a.add_col_multiple(self.n + k, self.n + j, &-c);
    }

    fn gl_n_swap(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        self.a.swap_cols(self.n + j, self.n + k);
    }

    /// `[[I,0],[Y,I]]` with `Y = y(E_lk + E_kl)` symmetric.
    fn sym2(&mut self, l: usize, k: usize, y: &TruncatedLaurent) {
        self.a.add_row_multiple(self.m + l, k, y);
        if l != k {
            self.a.add_row_multiple(self.m + k, l, y);
        }
    }

    /// Right multiplication by `[[I,Z],[0,I]]` with `Z = z(E_kj − E_jk)`.
    fn lambda2(&mut self, k: usize, j: usize, z: &TruncatedLaurent) {
        self.a.add_col_multiple(self.n + j, k, z);
        self.a.add_col_multiple(self.n + k, j, &-z);
    }

    /// Reflection `e_j ↔ f_j` of `F^{2n}`.
    fn weyl_col(&mut self, j: usize) {
        self.a.swap_cols(j, self.n + j);
    }

    /// Symplectic rotation `(e_i, f_i) ↦ (f_i, −e_i)` of `F^{2m}`.
    fn weyl_row(&mut self, i: usize) {
        self.a.swap_rows(i, self.m + i);
        let minus_one = TruncatedLaurent::constant(-crate::exactnum::q(1), i64::MAX / 4);
        self.a.scale_row(self.m + i, &minus_one);
    }
}
