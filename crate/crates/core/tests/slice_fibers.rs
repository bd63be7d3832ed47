use loopslice_core::exactnum::{determinant, q, resultant, Poly, QMatrix, Rational};
use loopslice_core::fibers::{
    derive_constants, double_root_fiber, generic_fiber, invariant_map, resultant_stratum_fiber,
    solve_transport, transport, FiberSolver, InvariantPair, Stratum, SymbolicIdentity,
};
use loopslice_core::graded::ext_leading;
use loopslice_core::slodowy::{
    build_slice_chart, centralizer_basis, principal_sl2, Coordinate, SlicePoint,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly(c: &[i64]) -> Poly {
    Poly::from_i64(c)
}

/// `det(λI − M)` by cofactor expansion over `Q[λ]`.
fn charpoly_oracle(m: &QMatrix) -> Poly {
    let k = m.rows();
    let rows: Vec<Vec<Poly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let c = Poly::constant(-m[(i, j)].clone());
                    if i == j {
                        &c + &Poly::x()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    determinant(&rows)
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

#[test]
fn sl2_brackets_up_to_twelve() {
    for k in 1..=12 {
        let t = principal_sl2(k).unwrap();
        let two = q(2);
        assert_eq!(&(&t.e * &t.f) - &(&t.f * &t.e), t.h, "k={k}");
        assert_eq!(&(&t.h * &t.e) - &(&t.e * &t.h), t.e.scale(&two));
        assert_eq!(&(&t.h * &t.f) - &(&t.f * &t.h), t.f.scale(&-two));
    }
}

/// `rank(I ⊗ e − eᵗ ⊗ I)` gives `dim z(e) = m² − rank`.
fn centralizer_dim_oracle(e: &QMatrix) -> usize {
    let m = e.rows();
    let ad = QMatrix::from_fn(m * m, m * m, |r, c| {
        let (i, j) = (r / m, r % m);
        let (k, l) = (c / m, c % m);
        let mut v = Rational::zero();
        if j == l {
            v += e[(i, k)].clone();
        }
        if i == k {
            v -= e[(l, j)].clone();
        }
        v
    });
    m * m - ad.rank()
}

#[test]
fn chart_dimension_matches_centralizer() {
    for m in 2..=6 {
        for n in 1..m {
            let chart = build_slice_chart(n, m).unwrap();
            let basis = centralizer_basis(&chart.triple.e).unwrap();
            assert_eq!(chart.dim(), basis.len(), "({n},{m})");
            assert_eq!(basis.len(), centralizer_dim_oracle(&chart.triple.e));
            assert_eq!(basis.len(), n * n + 2 * n + (m - n));
            let flat = QMatrix::from_fn(chart.dim(), m * m, |r, c| {
                let z = chart.basis_matrix(chart.coordinates()[r]).unwrap();
                z[(c / m, c % m)].clone()
            });
            assert_eq!(flat.rank(), chart.dim());
            for c in chart.coordinates() {
                let z = chart.basis_matrix(c).unwrap();
                assert!(chart.triple.e.bracket(&z).is_zero());
            }
        }
    }
}

#[test]
fn gradings_match_closed_forms_and_ext() {
    for m in 2..=6 {
        for n in 1..m {
            let chart = build_slice_chart(n, m).unwrap();
            for (c, d) in chart.grading_table() {
                let expected = match c {
                    Coordinate::X(..) => 2,
                    Coordinate::A(i) => 2 * i as i64,
                    Coordinate::V(_) | Coordinate::VStar(_) => (m - n + 1) as i64,
                };
                assert_eq!(d, expected, "{c} on ({n},{m})");
            }
            let (deg, coeff) = ext_leading(n, m).unwrap();
            assert_eq!(coeff, 1);
            assert_eq!(deg, chart.grading_of(Coordinate::V(0)).unwrap());
        }
    }
}

#[test]
fn structure_constants() {
    let chart = build_slice_chart(1, 5).unwrap();
    assert_eq!(chart.c, [q(3), q(4), q(3)]);
    for m in 2..=5 {
        for n in 1..m {
            let c = derive_constants(n, m).unwrap();
            let k = m - n;
            assert_eq!(
                *c.d_last(),
                q(-factorial(k - 1) * factorial(k - 1)),
                "({n},{m})"
            );
            assert_eq!(c.d[0], q(k as i64));
            assert_eq!(c.linear, k == 1);
        }
    }
}

#[test]
fn factorization_identity_is_symbolic() {
    for m in 2..=4 {
        for n in 1..m {
            let c = derive_constants(n, m).unwrap();
            let id = SymbolicIdentity::new(n, m).unwrap();
            let rhs = &(&id.chi_x * &id.band) + &id.pairing.scale(c.d_last());
            assert_eq!(id.det_full, rhs, "({n},{m})");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The identity evaluated numerically at random points, with the adjugate
    /// taken as `det · inverse`.
    #[test]
    fn factorization_identity_numeric(
        nm in prop_oneof![Just((1usize, 2usize)), Just((1, 3)), Just((2, 3)), Just((1, 4)), Just((2, 4)), Just((3, 4))],
        vals in proptest::collection::vec(-5i64..=5, 24),
        lam in 7i64..20,
    ) {
        let (n, m) = nm;
        let chart = build_slice_chart(n, m).unwrap();
        let coords: Vec<Rational> = vals.iter().take(chart.dim()).map(|&v| q(v)).collect();
        let p = SlicePoint::from_values(n, m, &coords).unwrap();
        let c = derive_constants(n, m).unwrap();
        let l = q(lam);
        let full = chart.assemble(&p).unwrap();
        let lhs = (&QMatrix::identity(m).scale(&l) - &full).det();
        let shifted_x = &QMatrix::identity(n).scale(&l) - &p.x;
        let chi = shifted_x.det();
        let mut point = coords.clone();
        point.push(l.clone());
        let band = c.band.eval(&point).unwrap();
        let pairing = if chi.is_zero() {
            return Ok(());
        } else {
            let inv = shifted_x.inverse().unwrap();
            let mut acc = Rational::zero();
            for i in 0..n {
                for j in 0..n {
                    acc += &p.vstar[i] * &inv[(i, j)] * &p.v[j];
                }
            }
            acc * &chi
        };
        prop_assert_eq!(lhs, chi * band + c.d_last() * pairing);
    }
}

#[test]
fn invariant_map_examples() {
    let p = SlicePoint::new(
        QMatrix::from_i64(&[&[1]]),
        vec![q(1)],
        vec![q(1)],
        vec![q(2)],
    )
    .unwrap();
    let inv = invariant_map(&p).unwrap();
    assert_eq!(
        inv,
        InvariantPair::new(poly(&[-1, 1]), poly(&[1, -3, 1])).unwrap()
    );
    let chart = build_slice_chart(1, 2).unwrap();
    assert_eq!(inv.g, charpoly_oracle(&chart.assemble(&p).unwrap()));
}

/// Random monic `f` with distinct integer roots and monic `g` coprime to `f`.
fn arb_generic(n: usize, m: usize) -> impl Strategy<Value = (Poly, Poly)> {
    (
        proptest::sample::subsequence((-6i64..=6).collect::<Vec<_>>(), n),
        proptest::collection::vec(-4i64..=4, m),
    )
        .prop_map(move |(roots, low)| {
            let f = Poly::from_roots(&roots.iter().map(|&r| q(r)).collect::<Vec<_>>());
            let mut coeffs = low;
            coeffs.push(1);
            (f, Poly::from_i64(&coeffs))
        })
        .prop_filter("nonzero resultant", |(f, g)| {
            !resultant(f, g).unwrap().is_zero()
        })
}

fn round_trip(solver: &FiberSolver, f: &Poly, g: &Poly) -> Result<(), TestCaseError> {
    let fib = solver.generic_fiber(f, g).unwrap();
    let chart = build_slice_chart(fib.base.n, fib.base.m).unwrap();
    prop_assert_eq!(&charpoly_oracle(&fib.base.x), f);
    prop_assert_eq!(&charpoly_oracle(&chart.assemble(&fib.base).unwrap()), g);
    prop_assert_eq!(fib.stratum, Stratum::Generic);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn generic_round_trip_1_2(fg in arb_generic(1, 2)) {
        round_trip(&FiberSolver::new(1, 2).unwrap(), &fg.0, &fg.1)?;
    }

    #[test]
    fn generic_round_trip_1_3(fg in arb_generic(1, 3)) {
        round_trip(&FiberSolver::new(1, 3).unwrap(), &fg.0, &fg.1)?;
    }

    #[test]
    fn generic_round_trip_2_3(fg in arb_generic(2, 3)) {
        round_trip(&FiberSolver::new(2, 3).unwrap(), &fg.0, &fg.1)?;
    }

    #[test]
    fn generic_round_trip_2_4(fg in arb_generic(2, 4)) {
        round_trip(&FiberSolver::new(2, 4).unwrap(), &fg.0, &fg.1)?;
    }
}

fn arb_invertible(n: usize) -> impl Strategy<Value = QMatrix> {
    proptest::collection::vec(-3i64..=3, n * n)
        .prop_map(move |e| QMatrix::from_fn(n, n, |i, j| q(e[i * n + j])))
        .prop_filter("invertible", |a| !a.det().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn transport_stays_in_fiber_and_is_recovered(
        fg in arb_generic(2, 4),
        a in arb_invertible(2),
    ) {
        let fib = generic_fiber(&fg.0, &fg.1).unwrap();
        let moved = transport(&fib.base, &a).unwrap();
        prop_assert_eq!(invariant_map(&moved).unwrap(), fib.invariants.clone());
        prop_assert!(fib.contains(&moved).unwrap());
        let found = solve_transport(&fib.base, &moved).unwrap();
        prop_assert_eq!(found, a);
    }

    #[test]
    fn resultant_membership_is_cross(x in -3i64..=3, y in -3i64..=3, t in 1i64..5) {
        let f = poly(&[-1, 1]);
        let g = poly(&[2, -3, 1]);
        let fib = resultant_stratum_fiber(&f, &g).unwrap();
        let p = fib.cross_point(&q(x), &q(y)).unwrap();
        prop_assert_eq!(fib.contains(&p).unwrap(), x * y == 0);
        let tq = q(t);
        let scaled = fib.cross_point(&(q(x) * &tq), &(q(y) / &tq)).unwrap();
        prop_assert_eq!(fib.contains(&scaled).unwrap(), x * y == 0);
    }
}

#[test]
fn resultant_fixture_matrix() {
    let fib = resultant_stratum_fiber(&poly(&[-1, 1]), &poly(&[2, -3, 1])).unwrap();
    let chart = build_slice_chart(1, 2).unwrap();
    let p = fib.cross_point(&q(3), &q(0)).unwrap();
    assert_eq!(
        chart.assemble(&p).unwrap(),
        QMatrix::from_i64(&[&[1, 3], &[0, 2]])
    );
    assert_eq!(fib.stratum, Stratum::ResultantZero { index: 0 });
    // (λ−1)(λ−2)(λ−3) against f = (λ−1)(λ−2): both roots are shared
    let deeper = resultant_stratum_fiber(&poly(&[2, -3, 1]), &poly(&[-6, 11, -6, 1]));
    assert!(deeper.is_err());
}

#[test]
fn double_root_fixtures() {
    let f = poly(&[1, -2, 1]);
    for g in [poly(&[1, 0, 0, 1]), poly(&[3, -3, 0, 1])] {
        let fib = double_root_fiber(&f, &g).unwrap();
        let chart = build_slice_chart(2, 3).unwrap();
        assert_eq!(charpoly_oracle(&chart.assemble(&fib.base).unwrap()), g);
        assert_eq!(charpoly_oracle(&fib.base.x), f);
        let mut bumped = fib.base.clone();
        bumped.vstar[0] += Rational::one();
        assert_ne!(invariant_map(&bumped).unwrap().g, g);
    }
    let fib = double_root_fiber(&f, &poly(&[1, 0, 0, 1])).unwrap();
    assert_eq!(fib.base.vstar, [q(-2), q(-3)]);
}

#[test]
fn double_root_with_extra_simple_roots() {
    // f = (λ−1)²(λ+2), g of degree 5 coprime to f
    let f = Poly::from_roots(&[q(1), q(1), q(-2)]);
    let g = poly(&[5, 0, 1, 0, 0, 1]);
    let fib = double_root_fiber(&f, &g).unwrap();
    let chart = build_slice_chart(3, 5).unwrap();
    assert_eq!(charpoly_oracle(&chart.assemble(&fib.base).unwrap()), g);
    assert_eq!(fib.base.v, [q(0), q(1), q(1)]);
}

#[test]
fn generic_fiber_rejects_other_strata() {
    assert!(generic_fiber(&poly(&[1, -2, 1]), &poly(&[1, 0, 0, 1])).is_err());
    assert!(generic_fiber(&poly(&[-1, 1]), &poly(&[2, -3, 1])).is_err());
    // x² + 1 has no rational roots
    assert!(generic_fiber(&poly(&[1, 0, 1]), &poly(&[1, 0, 0, 1])).is_err());
}
