//! The acceptance suite: eleven exact checks, each independent and pure
//! given the seed, with one report line apiece.

use std::collections::BTreeMap;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};

use loopslice_core::branching::{
    at_q_one, graded_restriction, standard_restriction, DominantWeight,
};
use loopslice_core::exactnum::{q, q_frac, resultant};
use loopslice_core::fibers::{
    derive_constants, invariant_map, FiberSolver, Stratum, SymbolicIdentity,
};
use loopslice_core::graded::{
    decomposition_remainder, ext_poincare, gl1_algebra_check, stalk_ic, GradedDims,
};
use loopslice_core::lattice::{
    check_integrality, gl_canonical_pair, gl_normal_form, osp_block_form, sp_so_reduce, Coweight,
    FMatrix, LatticePair,
};
use loopslice_core::slodowy::{
    build_slice_chart, centralizer_basis, principal_sl2, Coordinate, SlicePoint,
};
use loopslice_core::{Poly, Rational, TruncatedLaurent};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::sampling;

pub const CRITERIA: [(u32, &str); 11] = [
    (1, "GL normal-form invariance"),
    (2, "Sp/SO reduction invariance"),
    (3, "factorization identity"),
    (4, "generic fiber round trip"),
    (5, "resultant stratum membership"),
    (6, "double-root fiber"),
    (7, "graded stalk closed forms"),
    (8, "Ext minimal degree"),
    (9, "n=1 algebra"),
    (10, "graded branching"),
    (11, "sl2 sanity"),
];

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    pub precision: i64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            precision: loopslice_core::DEFAULT_PRECISION,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

type Check = Result<String, String>;

/// Runs every criterion, one thread each, in id order.
pub fn run_all(cfg: Config) -> Vec<CriterionResult> {
    std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|&(id, _)| s.spawn(move || run_one(id, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread"))
            .collect()
    })
}

pub fn run_one(id: u32, cfg: Config) -> CriterionResult {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map_or("unknown", |c| c.1)
        .to_string();
    let outcome = catch_unwind(AssertUnwindSafe(|| dispatch(id, cfg)))
        .unwrap_or_else(|e| Err(format!("panicked: {}", panic_message(&e))));
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id,
        name,
        passed,
        detail,
    }
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "non-string payload".into())
}

fn dispatch(id: u32, cfg: Config) -> Check {
    match id {
        1 => gl_invariance(cfg),
        2 => osp_invariance(cfg),
        3 => factorization_identity(),
        4 => generic_round_trip(cfg),
        5 => resultant_stratum(cfg),
        6 => double_root(),
        7 => stalk_claims(),
        8 => ext_bookkeeping(),
        9 => gl1_algebra(),
        10 => branching(),
        11 => sl2_sanity(),
        _ => Err(format!("no criterion {id}")),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: loopslice_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn poly(c: &[i64]) -> Poly {
    Poly::from_i64(c)
}

/// Slice coordinates in the order `x`, `a`, `v`, `v*`.
pub fn point_tuple(p: &SlicePoint) -> String {
    let mut vals: Vec<&Rational> = Vec::new();
    for i in 0..p.n {
        vals.extend(p.x.row(i));
    }
    vals.extend(&p.a);
    vals.extend(&p.v);
    vals.extend(&p.vstar);
    let parts: Vec<String> = vals.iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(","))
}

/// The principal parts of `a`, taken as exact and carried at `prec`: the
/// normalized representative of `a` modulo `O`-matrices.
fn principal_lift(a: &FMatrix, prec: i64) -> Result<FMatrix, String> {
    if a.entries().iter().any(|x| x.precision() < 0) {
        return Err("principal part not determined at this precision".into());
    }
    Ok(FMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        let x = a[(i, j)].mod_integral();
        TruncatedLaurent::new(x.raw_val(), x.coeffs().to_vec(), prec)
    }))
}

const GL_FIXTURES: [(usize, usize, &[&[i64]]); 4] = [
    (1, 2, &[&[1], &[-2], &[0]]),
    (2, 3, &[&[2, -1], &[1, 1], &[0, -1]]),
    (2, 4, &[&[3, 0], &[1, -2]]),
    (3, 4, &[&[2, 0, -1], &[1, 1, -1]]),
];

fn gl_invariance(cfg: Config) -> Check {
    let mut rng = sampling::rng(cfg.seed, 1);
    let mut count = 0;
    for &(n, m, fixtures) in &GL_FIXTURES {
        for &cw in fixtures {
            let cw = core(Coweight::new(cw.to_vec()))?;
            let pair = core(gl_canonical_pair(&cw, m, cfg.precision))?;
            for trial in 0..200 {
                let t = sampling::gl_transform(&mut rng, n, m, cfg.precision);
                let moved = t.apply(&pair);
                ensure(core(check_integrality(&moved))?, || {
                    format!("{cw} trial {trial}: integrality lost")
                })?;
                let nf = gl_normal_form(&moved).map_err(|e| format!("{cw} trial {trial}: {e}"))?;
                ensure(nf.coweight == cw, || {
                    format!("{cw} trial {trial}: reduced to {}", nf.coweight)
                })?;
                let back = nf.transform.apply(&moved);
                ensure(
                    back.v.congruent_mod_integral(&pair.v)
                        && back.vstar.congruent_mod_integral(&pair.vstar),
                    || format!("{cw} trial {trial}: transform does not reach the normal form"),
                )?;
                let lifted = core(LatticePair::gl(
                    principal_lift(&back.v, cfg.precision)?,
                    principal_lift(&back.vstar, cfg.precision)?,
                ))?;
                let again = gl_normal_form(&lifted)
                    .map_err(|e| format!("{cw} trial {trial}, second pass: {e}"))?;
                ensure(again.coweight == cw, || {
                    format!("{cw} trial {trial}: not idempotent")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!(
        "{count} transformed fixtures over (1,2),(2,3),(2,4),(3,4) reduce to their coweight"
    ))
}

fn osp_invariance(cfg: Config) -> Check {
    let fixtures: [(usize, usize, &[i64], &[i64]); 6] = [
        (1, 2, &[2], &[]),
        (1, 2, &[], &[1]),
        (1, 2, &[], &[]),
        (2, 3, &[2], &[1]),
        (2, 3, &[3, 1], &[]),
        (2, 3, &[], &[2]),
    ];
    let mut rng = sampling::rng(cfg.seed, 2);
    let mut count = 0;
    for (n, m, a, b) in fixtures {
        let mut expected: Vec<i64> = a.iter().chain(b).copied().collect();
        expected.resize(n, 0);
        expected.sort_unstable_by(|x, y| y.cmp(x));
        let v0 = core(osp_block_form(a, b, n, m, cfg.precision))?;
        for trial in 0..100 {
            let steps = rng.random_range(2..=6);
            let h = sampling::osp_o(&mut rng, m, steps, true, cfg.precision);
            let g = sampling::osp_o(&mut rng, n, steps, false, cfg.precision);
            let v = &(&h * &v0) * &g;
            let integral = check_integrality(&core(LatticePair::osp(v.clone()))?)
                .map_err(|e| format!("{a:?}/{b:?} trial {trial}: {e}"))?;
            ensure(integral, || {
                format!("{a:?}/{b:?} trial {trial}: integrality lost")
            })?;
            let red = sp_so_reduce(&v).map_err(|e| format!("{a:?}/{b:?} trial {trial}: {e}"))?;
            ensure(red.coweight.0 == expected, || {
                format!(
                    "{a:?}/{b:?} trial {trial}: reduced to {}, expected {expected:?}",
                    red.coweight
                )
            })?;
            let again = sp_so_reduce(&principal_lift(&red.reduced, cfg.precision)?)
                .map_err(|e| format!("{a:?}/{b:?} trial {trial}, second pass: {e}"))?;
            ensure(again.coweight == red.coweight, || {
                format!("{a:?}/{b:?} trial {trial}: not idempotent")
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} transformed block forms over (1,2),(2,3) reduce to their coweight"
    ))
}

fn factorization_identity() -> Check {
    let mut shapes = Vec::new();
    for m in 2..=4 {
        for n in 1..m {
            let c = core(derive_constants(n, m))?;
            let id = core(SymbolicIdentity::new(n, m))?;
            let residual = &id.residual() - &id.pairing.scale(c.d_last());
            ensure(residual.is_zero(), || {
                format!("({n},{m}): residual {residual}")
            })?;
            shapes.push(format!("({n},{m}) d_last={}", c.d_last()));
        }
    }
    Ok(format!("exact symbolic identity for {}", shapes.join(", ")))
}

fn random_roots(rng: &mut impl Rng, count: usize) -> Vec<Rational> {
    let mut pool: Vec<Rational> = (-6..=6)
        .map(q)
        .chain([q_frac(1, 2), q_frac(-3, 2), q_frac(2, 3)])
        .collect();
    pool.shuffle(rng);
    pool.truncate(count);
    pool
}

fn generic_round_trip(cfg: Config) -> Check {
    let mut rng = sampling::rng(cfg.seed, 4);
    let fixture =
        core(core(FiberSolver::new(1, 2))?.generic_fiber(&poly(&[-1, 1]), &poly(&[1, -3, 1])))?;
    let tuple = point_tuple(&fixture.base);
    ensure(tuple == "(1,2,1,1)", || {
        format!("worked fixture gave {tuple}")
    })?;
    let mut total = 0;
    for (n, m) in [(1, 2), (1, 3), (2, 3), (2, 4)] {
        let solver = core(FiberSolver::new(n, m))?;
        let chart = core(build_slice_chart(n, m))?;
        let mut done = 0;
        while done < 100 {
            let f = Poly::from_roots(&random_roots(&mut rng, n));
            let mut gc: Vec<Rational> = (0..m).map(|_| q(rng.random_range(-4..=4))).collect();
            gc.push(Rational::one());
            let g = Poly::new(gc);
            if core(resultant(&f, &g))?.is_zero() {
                continue;
            }
            let fib = core(solver.generic_fiber(&f, &g))?;
            let back = core(invariant_map(&fib.base))?;
            ensure(back.f == f && back.g == g, || {
                format!(
                    "({n},{m}): f={f}, g={g} came back as ({}, {})",
                    back.f, back.g
                )
            })?;
            let p = core(chart.assemble(&fib.base))?;
            ensure(p.charpoly() == g, || {
                format!("({n},{m}): charpoly of the assembled point is not g")
            })?;
            done += 1;
        }
        total += done;
    }
    Ok(format!(
        "worked fixture (λ−1, λ²−3λ+1) ↦ {tuple}; {total} random round trips exact"
    ))
}

fn resultant_stratum(cfg: Config) -> Check {
    let mut rng = sampling::rng(cfg.seed, 5);
    let fib = core(
        core(FiberSolver::new(1, 2))?.resultant_stratum_fiber(&poly(&[-1, 1]), &poly(&[2, -3, 1])),
    )?;
    let mut zeros = 0;
    for _ in 0..50 {
        let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
            if rng.random_bool(0.35) {
                Rational::zero()
            } else {
                q_frac(rng.random_range(-9..=9), rng.random_range(1..=4))
            }
        };
        let (x, y) = (draw(&mut rng), draw(&mut rng));
        let xy_zero = (&x * &y).is_zero();
        zeros += usize::from(xy_zero);
        let member = core(fib.contains(&core(fib.cross_point(&x, &y))?))?;
        ensure(member == xy_zero, || {
            format!("(X,Y)=({x},{y}): member={member}, XY=0 is {xy_zero}")
        })?;
    }
    Ok(format!(
        "50 samples ({zeros} on the cross): membership agrees with XY = 0"
    ))
}

fn double_root() -> Check {
    let (f, g) = (poly(&[1, -2, 1]), poly(&[1, 0, 0, 1]));
    let fib = core(core(FiberSolver::new(2, 3))?.double_root_fiber(&f, &g))?;
    ensure(fib.stratum == Stratum::DoubleRoot { root: q(1) }, || {
        format!("stratum {:?}", fib.stratum)
    })?;
    let p = core(core(build_slice_chart(2, 3))?.assemble(&fib.base))?;
    let chi = p.charpoly();
    ensure(chi == g, || {
        format!("direct characteristic polynomial {chi}")
    })?;
    ensure(fib.base.x.charpoly() == f, || {
        "characteristic polynomial of x is not f".into()
    })?;
    Ok(format!(
        "base {} has det(λ−P) = {chi}",
        point_tuple(&fib.base)
    ))
}

fn stalk_claims() -> Check {
    for m in 2..=6i64 {
        for n in 1..m {
            let shift = m + n - 1;
            let from_pn = GradedDims::from_pairs((0..n).map(|j| (2 * j - shift, 1)));
            let from_pm = GradedDims::from_pairs(
                (0..m)
                    .filter(|j| 2 * j <= 2 * n - 2)
                    .map(|j| (2 * j - shift, 1)),
            );
            let s = core(stalk_ic(n as usize, m as usize))?;
            ensure(s == from_pn && s == from_pm, || {
                format!("({n},{m}): stalk {s:?}")
            })?;
            let rem = core(decomposition_remainder(n as usize, m as usize))?;
            let expected: Vec<i64> = (0..m - n).map(|i| m - n - 1 - 2 * i).collect();
            ensure(rem == expected, || {
                format!("({n},{m}): remainder {rem:?}, expected {expected:?}")
            })?;
        }
    }
    Ok("stalks and remainders match for all n < m ≤ 6".into())
}

fn ext_bookkeeping() -> Check {
    for m in 2..=6usize {
        for n in 1..m {
            let series = core(core(ext_poincare(n, m))?.expand(4 * m))?;
            let first = series
                .iter()
                .position(|&c| c != 0)
                .ok_or_else(|| format!("({n},{m}): zero series"))?;
            ensure(first == m - n + 1 && series[first] == 1, || {
                format!("({n},{m}): leading term {}·s^{first}", series[first])
            })?;
            let chart = core(build_slice_chart(n, m))?;
            let grading = core(chart.grading_of(Coordinate::V(0)))?;
            ensure(grading == first as i64, || {
                format!("({n},{m}): v has grading {grading}, Ext starts at {first}")
            })?;
        }
    }
    Ok(
        "minimal degree m−n+1 with coefficient 1, equal to the grading of v, for all n < m ≤ 6"
            .into(),
    )
}

/// Monomial counts below `order` for a free polynomial ring.
fn count_monomials(gens: &[i64], order: usize) -> Vec<i64> {
    let mut counts = vec![0i64; order];
    counts[0] = 1;
    for &g in gens {
        for d in g as usize..order {
            counts[d] += counts[d - g as usize];
        }
    }
    counts
}

fn gl1_algebra() -> Check {
    for m in 1..=5usize {
        let check = core(gl1_algebra_check(m, 30))?;
        let mut gens = vec![2i64];
        gens.extend((1..m as i64).map(|i| 2 * i));
        gens.extend([m as i64, m as i64]);
        let oracle = count_monomials(&gens, 30);
        ensure(check.free == oracle, || {
            format!("m={m}: free series disagrees with monomial count")
        })?;
        ensure(check.module == oracle, || {
            format!("m={m}: module presentation disagrees")
        })?;
        ensure(check.eliminated == oracle, || {
            format!("m={m}: eliminated presentation disagrees")
        })?;
        ensure(check.euler_expansion, || {
            format!("m={m}: Euler-class expansion fails")
        })?;
    }
    Ok("three presentations agree to order 30 and the Euler expansion holds for m ≤ 5".into())
}

fn gt_count(lambda: &[i64], mu: &[i64]) -> u64 {
    if lambda.len() == mu.len() {
        return u64::from(lambda == mu);
    }
    let mut next = vec![0i64; lambda.len() - 1];
    let mut total = 0;
    fn rec(i: usize, lambda: &[i64], next: &mut Vec<i64>, mu: &[i64], total: &mut u64) {
        if i == next.len() {
            *total += gt_count(next, mu);
            return;
        }
        for v in lambda[i + 1]..=lambda[i] {
            next[i] = v;
            rec(i + 1, lambda, next, mu, total);
        }
    }
    rec(0, lambda, &mut next, mu, &mut total);
    total
}

fn dominant_box(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in dominant_box(n - 1, lo, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn branching() -> Check {
    for m in 2..=6usize {
        for n in 1..m {
            let got = core(graded_restriction(&DominantWeight::standard(m), n))?;
            ensure(got == standard_restriction(n, m), || {
                format!("({n},{m}): {got:?}")
            })?;
            let std_n = got
                .get(&DominantWeight::standard(n))
                .cloned()
                .unwrap_or_default();
            ensure(std_n == GradedDims::point(0), || {
                format!("({n},{m}): std_n multiplicity {std_n:?}")
            })?;
            let trivial = got
                .get(&DominantWeight::trivial(n))
                .cloned()
                .unwrap_or_default();
            let shifts: Vec<i64> = trivial
                .pairs()
                .flat_map(|(d, k)| std::iter::repeat_n(d, k as usize))
                .rev()
                .collect();
            let expected = core(decomposition_remainder(n, m))?;
            ensure(shifts == expected, || {
                format!("({n},{m}): trivial shifts {shifts:?}, expected {expected:?}")
            })?;
            ensure(got.len() == 2, || format!("({n},{m}): extra summands"))?;
        }
    }
    let mut weights = 0;
    for m in 2..=5usize {
        for n in 1..m {
            for lam in dominant_box(m, -1, 2) {
                let w = core(DominantWeight::new(lam.clone()))?;
                let got = at_q_one(&core(graded_restriction(&w, n))?);
                let mut oracle = BTreeMap::new();
                for mu in dominant_box(n, -1, 2) {
                    let c = gt_count(&lam, &mu);
                    if c > 0 {
                        oracle.insert(core(DominantWeight::new(mu))?, c);
                    }
                }
                ensure(got == oracle, || {
                    format!("{w} to GL_{n}: q→1 disagrees with the weight oracle")
                })?;
                weights += 1;
            }
        }
    }
    Ok(format!(
        "std restrictions exact for n < m ≤ 6; {weights} q→1 restrictions match the oracle"
    ))
}

fn sl2_sanity() -> Check {
    for k in 1..=12usize {
        let t = core(principal_sl2(k))?;
        let two = q(2);
        ensure(t.e.bracket(&t.f) == t.h, || format!("k={k}: [e,f] ≠ h"))?;
        ensure(t.h.bracket(&t.e) == t.e.scale(&two), || {
            format!("k={k}: [h,e] ≠ 2e")
        })?;
        ensure(t.h.bracket(&t.f) == t.f.scale(&-two), || {
            format!("k={k}: [h,f] ≠ −2f")
        })?;
    }
    for m in 2..=6usize {
        for n in 1..m {
            let chart = core(build_slice_chart(n, m))?;
            let cent = core(centralizer_basis(&chart.triple.e))?.len();
            // Jordan type (m−n, 1ⁿ): Σ (conjugate parts)² = (n+1)² + (m−n−1)
            let oracle = (n + 1) * (n + 1) + (m - n - 1);
            ensure(chart.dim() == cent && cent == oracle, || {
                format!(
                    "({n},{m}): chart {} vs centralizer {cent} vs {oracle}",
                    chart.dim()
                )
            })?;
        }
    }
    Ok("bracket relations for k ≤ 12; chart dim = centralizer dim for n < m ≤ 6".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(count_monomials(&[1, 2], 6), [1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn gt_counts_match_dimensions() {
        assert_eq!(gt_count(&[1, 0, 0], &[0]), 2);
        assert_eq!(gt_count(&[2, 0], &[1]), 1);
        assert_eq!(dominant_box(2, 0, 1).len(), 3);
    }

    #[test]
    fn report_line() {
        let r = CriterionResult {
            id: 3,
            name: "x".into(),
            passed: false,
            detail: "d".into(),
        };
        assert_eq!(r.to_string(), "[FAIL]  3 x: d");
    }
}
