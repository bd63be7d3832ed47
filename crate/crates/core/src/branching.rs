//! Graded restriction of `GL_m` characters to `GL_n`, with the complementary
//! `(m−n)` variables specialized along the principal `sl2` grading.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::{determinant, Monomial, MultiPoly, Rational};
use crate::graded::GradedDims;

/// Weakly decreasing integer vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DominantWeight(Vec<i64>);

impl DominantWeight {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(format!("{parts:?}")));
        }
        Ok(DominantWeight(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `(1, 0, …, 0)`.
    pub fn standard(rank: usize) -> Self {
        DominantWeight((0..rank).map(|i| i64::from(i == 0)).collect())
    }

    pub fn trivial(rank: usize) -> Self {
        DominantWeight(alloc::vec![0; rank])
    }

    /// `(1, …, 1)`.
    pub fn determinant(rank: usize) -> Self {
        DominantWeight(alloc::vec![1; rank])
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Complete homogeneous symmetric polynomial `h_k` in variables `0..r`.
pub fn complete_homogeneous(k: i64, r: usize) -> MultiPoly {
    if k < 0 {
        return MultiPoly::zero();
    }
    if r == 0 {
        return if k == 0 {
            MultiPoly::one()
        } else {
            MultiPoly::zero()
        };
    }
    let mut out = MultiPoly::zero();
    let mut exps = alloc::vec![0i32; r];
    compositions(k as i32, 0, &mut exps, &mut |e| {
        out =
            core::mem::take(&mut out) + MultiPoly::term(Monomial::new(e.to_vec()), Rational::one());
    });
    out
}

fn compositions(left: i32, i: usize, exps: &mut [i32], emit: &mut impl FnMut(&[i32])) {
    if i + 1 == exps.len() {
        exps[i] = left;
        emit(exps);
        return;
    }
    for e in 0..=left {
        exps[i] = e;
        compositions(left - e, i + 1, exps, emit);
    }
}

/// Character of the irreducible `GL_rank`-module of highest weight `λ`, in
/// variables `0..rank`.
///
/// Jacobi–Trudi `det(h_{λ_i − i + j})` on `λ − λ_r`, times `(x_1⋯x_r)^{λ_r}`.
pub fn gl_character(lambda: &DominantWeight, rank: usize) -> Result<MultiPoly> {
    if lambda.rank() != rank {
        return Err(Error::Shape(format!("weight {lambda} for GL_{rank}")));
    }
    if rank == 0 {
        return Ok(MultiPoly::one());
    }
    let last = lambda.0[rank - 1];
    let part: Vec<i64> = lambda.0.iter().map(|&p| p - last).collect();
    let mut h_cache: BTreeMap<i64, MultiPoly> = BTreeMap::new();
    let mut h = |k: i64| {
        h_cache
            .entry(k)
            .or_insert_with(|| complete_homogeneous(k, rank))
            .clone()
    };
    let jt: Vec<Vec<MultiPoly>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| h(part[i] - i as i64 + j as i64))
                .collect()
        })
        .collect();
    let schur = determinant(&jt);
    let det_power = Monomial::new(alloc::vec![last as i32; rank]);
    Ok(schur.mul_monomial(&det_power))
}

/// `GL_n` multiplicities with `q`-gradings; the coefficient of `q^k` sits at
/// degree `k`.
pub type GradedMultiplicity = BTreeMap<DominantWeight, GradedDims>;

/// Exponents `m−n−1, m−n−3, …, 1−(m−n)` given to `x_{n+1}, …, x_m`.
pub fn sl2_exponents(k: usize) -> Vec<i64> {
    (0..k as i64).map(|i| k as i64 - 1 - 2 * i).collect()
}

/// Sends `x_{n+i}` to `q^{sl2_exponents[i]}`; `q` becomes variable `n`.
pub fn specialize(ch: &MultiPoly, n: usize, m: usize) -> MultiPoly {
    let exps_q = sl2_exponents(m - n);
    let mut out = MultiPoly::zero();
    for (mono, c) in ch.terms() {
        let mut e: Vec<i32> = (0..n).map(|i| mono.exp(i)).collect();
        let qe: i64 = (0..m - n)
            .map(|i| i64::from(mono.exp(n + i)) * exps_q[i])
            .sum();
        e.push(qe as i32);
        out = out + MultiPoly::term(Monomial::new(e), c.clone());
    }
    out
}

/// Reassembles `Σ s_μ(x) M_μ(q)` in the variables of [`specialize`].
pub fn reassemble(mult: &GradedMultiplicity, n: usize) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for (mu, m_q) in mult {
        let q_poly = q_polynomial(m_q, n);
        out = out + &gl_character(mu, n)? * &q_poly;
    }
    Ok(out)
}

fn q_polynomial(m_q: &GradedDims, n: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (k, c) in m_q.pairs() {
        let mut e = alloc::vec![0i32; n + 1];
        e[n] = k as i32;
        out = out + MultiPoly::term(Monomial::new(e), Rational::from_integer(c.into()));
    }
    out
}

/// Decomposes the specialized character of `λ` into `GL_n` characters by
/// repeatedly peeling the lex-leading `x`-monomial.
pub fn graded_restriction(lambda: &DominantWeight, n: usize) -> Result<GradedMultiplicity> {
    let m = lambda.rank();
    if n >= m {
        return Err(Error::InvalidArgument(format!(
            "need n < m, got n={n}, m={m}"
        )));
    }
    let mut rest = specialize(&gl_character(lambda, m)?, n, m);
    let mut out = GradedMultiplicity::new();
    while !rest.is_zero() {
        let lead: Vec<i32> = rest
            .terms()
            .map(|(mono, _)| (0..n).map(|i| mono.exp(i)).collect::<Vec<i32>>())
            .max()
            .expect("nonzero");
        let mu = DominantWeight::new(lead.iter().map(|&e| i64::from(e)).collect())
            .map_err(|_| Error::Internal(format!("leading exponent {lead:?} is not dominant")))?;
        let mut m_q = GradedDims::new();
        for (mono, c) in rest.terms() {
            if (0..n).all(|i| mono.exp(i) == lead[i]) {
                if !c.is_integer() || c.is_negative() {
                    return Err(Error::Internal(format!("multiplicity {c} of {mu}")));
                }
                m_q.add(
                    i64::from(mono.exp(n)),
                    c.to_integer().to_u64().unwrap_or(u64::MAX),
                );
            }
        }
        let piece = &gl_character(&mu, n)? * &q_polynomial(&m_q, n);
        rest = &rest - &piece;
        out.insert(mu, m_q);
    }
    Ok(out)
}

/// `M(q) ↦ M(q^{−1})`.
pub fn bar(m_q: &GradedDims) -> GradedDims {
    GradedDims::from_pairs(m_q.pairs().map(|(k, c)| (-k, c)))
}

/// The expected answer for `std_m`: `std_n · 1 + trivial · Σ q^{e}`.
pub fn standard_restriction(n: usize, m: usize) -> GradedMultiplicity {
    let mut out = GradedMultiplicity::new();
    out.insert(DominantWeight::standard(n), GradedDims::point(0));
    out.insert(
        DominantWeight::trivial(n),
        GradedDims::from_pairs(sl2_exponents(m - n).into_iter().map(|e| (e, 1))),
    );
    out
}

/// Value at `q = 1`.
pub fn at_q_one(mult: &GradedMultiplicity) -> BTreeMap<DominantWeight, u64> {
    mult.iter()
        .map(|(mu, m_q)| (mu.clone(), m_q.total()))
        .collect()
}
