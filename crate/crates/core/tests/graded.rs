use loopslice_core::graded::{
    cone_dims, cone_of_c1, decomposition_remainder, ext_poincare, gl1_algebra_check,
    proj_cohomology, stalk_ic, GradedDims, PoincareSeries,
};
use proptest::prelude::*;
use std::collections::BTreeMap;

/// Number of monomials of each degree below `order` in a polynomial ring
/// with the given generator degrees.
fn count_monomials(gens: &[i64], order: usize) -> Vec<i64> {
    let mut counts = vec![0i64; order];
    fn go(gens: &[i64], deg: usize, order: usize, counts: &mut [i64]) {
        match gens.split_first() {
            None => counts[deg] += 1,
            Some((&g, rest)) => {
                let mut d = deg;
                while d < order {
                    go(rest, d, order, counts);
                    d += g as usize;
                }
            }
        }
    }
    go(gens, 0, order, &mut counts);
    counts
}

#[test]
fn stalk_matches_both_closed_forms() {
    for m in 2..=6i64 {
        for n in 1..m {
            let shift = m + n - 1;
            let p_n = GradedDims::from_pairs((0..n).map(|j| (2 * j - shift, 1)));
            let p_m_low = GradedDims::from_pairs(
                (0..m)
                    .filter(|j| 2 * j <= 2 * n - 2)
                    .map(|j| (2 * j - shift, 1)),
            );
            let s = stalk_ic(n as usize, m as usize).unwrap();
            assert_eq!(s, p_n, "({n},{m})");
            assert_eq!(s, p_m_low);
            assert!(s.max_degree().unwrap() <= -1);
        }
    }
}

#[test]
fn remainder_is_arithmetic_progression() {
    for m in 2..=6i64 {
        for n in 1..m {
            let expected: Vec<i64> = (0..m - n).map(|i| m - n - 1 - 2 * i).collect();
            assert_eq!(
                decomposition_remainder(n as usize, m as usize).unwrap(),
                expected
            );
        }
    }
}

#[test]
fn cone_balance() {
    for n in 1..=6usize {
        for m in 1..=6usize {
            let (coker, ker) = cone_of_c1(n, m).unwrap();
            assert_eq!(coker.total(), n.min(m) as u64, "({n},{m})");
            assert_eq!(ker.total(), n.min(m) as u64);
            let ring = proj_cohomology(n)
                .unwrap()
                .product(&proj_cohomology(m).unwrap());
            assert_eq!(ring.graded_dims().total(), (n * m) as u64);
            assert_eq!(cone_dims(n, m).unwrap().total(), 2 * n.min(m) as u64);
        }
    }
    for n in 1..=6usize {
        let (coker, _) = cone_of_c1(n, n).unwrap();
        assert_eq!(coker, proj_cohomology(n).unwrap().graded_dims());
    }
}

#[test]
fn ext_series_against_monomial_count() {
    for m in 2..=6usize {
        for n in 1..m {
            let order = 40;
            let mut gens: Vec<i64> = (1..=m as i64).map(|i| 2 * i).collect();
            gens.extend((1..=n as i64).map(|i| 2 * i));
            let base = count_monomials(&gens, order);
            let mut expected = vec![0i64; order];
            for j in 0..n {
                let s = m + n - 1 - 2 * j;
                for d in s..order {
                    expected[d] += base[d - s];
                }
            }
            let got = ext_poincare(n, m).unwrap().expand(order).unwrap();
            assert_eq!(got, expected);
            let first = got.iter().position(|&c| c != 0).unwrap();
            assert_eq!((first, got[first]), (m - n + 1, 1), "({n},{m})");
        }
    }
}

#[test]
fn gl1_algebra_to_order_thirty() {
    for m in 1..=5usize {
        let check = gl1_algebra_check(m, 30).unwrap();
        let mut gens = vec![2i64];
        gens.extend((1..m as i64).map(|i| 2 * i));
        gens.extend([m as i64, m as i64]);
        assert_eq!(check.free, count_monomials(&gens, 30), "m={m}");
        assert_eq!(check.free, check.module);
        assert_eq!(check.free, check.eliminated);
        assert!(check.euler_expansion);
    }
}

#[test]
fn closed_form_for_m_one() {
    let closed =
        PoincareSeries::new(BTreeMap::from([(0, 1), (1, 1)]), vec![(1, 1), (2, 2)]).unwrap();
    assert_eq!(
        gl1_algebra_check(1, 30).unwrap().module,
        closed.expand(30).unwrap()
    );
}

proptest! {
    #[test]
    fn shift_and_truncation_commute(
        pairs in proptest::collection::vec((-10i64..10, 1u64..4), 0..8),
        k in -5i64..5,
        t in -10i64..10,
    ) {
        let g = GradedDims::from_pairs(pairs);
        prop_assert_eq!(g.shift(k).truncate_le(t), g.truncate_le(t + k).shift(k));
        prop_assert_eq!(g.truncate_le(t).direct_sum(&g.truncate_ge(t + 1)), g.clone());
        prop_assert_eq!(g.shift(k).total(), g.total());
    }

    #[test]
    fn free_series_counts_monomials(gens in proptest::collection::vec(1i64..6, 1..5)) {
        let series = PoincareSeries::free(&gens).unwrap();
        prop_assert_eq!(series.expand(25).unwrap(), count_monomials(&gens, 25));
    }
}
