use loopslice_core::exactnum::TruncatedLaurent;
use loopslice_core::lattice::{
    check_integrality, gl_canonical_pair, gl_normal_form, osp_block_form, osp_star,
    smith_diagonalize, sp_so_reduce, Coweight, FMatrix, LatticePair,
};
use proptest::prelude::*;

const P: i64 = 8;

fn tl(val: i64, c: &[i64], prec: i64) -> TruncatedLaurent {
    TruncatedLaurent::from_i64(val, c, prec)
}

/// One generator of `GL_k(O)` together with its inverse.
#[derive(Clone, Debug)]
enum Elem {
    Add(usize, usize, Vec<i64>),
    Swap(usize, usize),
    Scale(usize, i64, Vec<i64>),
}

fn arb_elem(k: usize) -> impl Strategy<Value = Elem> {
    let poly = proptest::collection::vec(-3i64..=3, 1..=3);
    prop_oneof![
        (0..k, 0..k, poly.clone()).prop_map(|(i, j, c)| Elem::Add(i, j, c)),
        (0..k, 0..k).prop_map(|(i, j)| Elem::Swap(i, j)),
        (
            0..k,
            prop_oneof![Just(-2i64), Just(-1), Just(1), Just(3)],
            poly
        )
            .prop_map(|(i, u, c)| Elem::Scale(i, u, c)),
    ]
}

fn elem_matrices(e: &Elem, k: usize) -> (FMatrix, FMatrix) {
    let mut m = FMatrix::identity(k, P);
    let mut inv = FMatrix::identity(k, P);
    match e {
        Elem::Add(i, j, c) if i != j => {
            m[(*i, *j)] = tl(0, c, P);
            inv[(*i, *j)] = -tl(0, c, P);
        }
        Elem::Add(..) => {}
        Elem::Swap(i, j) => {
            m.swap_rows(*i, *j);
            inv.swap_rows(*i, *j);
        }
        Elem::Scale(i, u, c) => {
            let mut coeffs = vec![*u];
            coeffs.extend(c);
            let x = tl(0, &coeffs, P);
            inv[(*i, *i)] = x.invert().unwrap();
            m[(*i, *i)] = x;
        }
    }
    (m, inv)
}

/// Product of generators and its inverse.
fn compose(elems: &[Elem], k: usize) -> (FMatrix, FMatrix) {
    let mut m = FMatrix::identity(k, P);
    let mut inv = FMatrix::identity(k, P);
    for e in elems {
        let (a, a_inv) = elem_matrices(e, k);
        m = &m * &a;
        inv = &a_inv * &inv;
    }
    (m, inv)
}

fn gl_fixtures() -> Vec<(usize, usize, Vec<i64>)> {
    vec![
        (1, 2, vec![2]),
        (1, 2, vec![-1]),
        (2, 3, vec![2, -1]),
        (2, 4, vec![3, -1]),
        (2, 4, vec![1, 1]),
        (3, 4, vec![2, 0, -1]),
        (3, 4, vec![1, -1, -2]),
    ]
}

fn minors_oracle(v: &FMatrix) -> Vec<i64> {
    // d_k = min valuation of the k×k minors; exponents are −(d_k − d_{k−1}).
    let (m, n) = (v.rows(), v.cols());
    let mut d = vec![0i64];
    for k in 1..=m.min(n) {
        let mut best: Option<i64> = None;
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                let minor = laurent_det(v, &rows, &cols);
                if let Some(val) = minor.valuation() {
                    best = Some(best.map_or(val, |b: i64| b.min(val)));
                }
            }
        }
        match best {
            Some(b) => d.push(b),
            None => break,
        }
    }
    d.windows(2).map(|w| -(w[1] - w[0])).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s & (1 << i) != 0).collect())
        .collect()
}

fn laurent_det(v: &FMatrix, rows: &[usize], cols: &[usize]) -> TruncatedLaurent {
    if rows.len() == 1 {
        return v[(rows[0], cols[0])].clone();
    }
    let mut acc = TruncatedLaurent::zero(1 << 20);
    for (c_idx, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &v[(rows[0], c)] * &laurent_det(v, &rows[1..], &rest);
        acc = if c_idx % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

#[test]
fn smith_oracle_fixed_cases() {
    let v = FMatrix::from_rows(vec![
        vec![tl(-2, &[1, 1], 20), tl(-1, &[2], 20), tl(0, &[1], 20)],
        vec![tl(-2, &[2, 1], 20), tl(0, &[1], 20), tl(-3, &[1], 20)],
        vec![tl(0, &[5], 20), tl(-1, &[1, 1], 20), tl(1, &[1], 20)],
    ])
    .unwrap();
    assert_eq!(smith_diagonalize(&v).unwrap().exponents, minors_oracle(&v));
}

#[test]
fn displayed_gl_form_is_integral_and_idempotent() {
    for (_, m, cw) in gl_fixtures() {
        let cw = Coweight::new(cw).unwrap();
        let pair = gl_canonical_pair(&cw, m, P).unwrap();
        assert!(check_integrality(&pair).unwrap());
        let nf = gl_normal_form(&pair).unwrap();
        assert_eq!(nf.coweight, cw);
        let again = gl_normal_form(&nf.transform.apply(&pair)).unwrap();
        assert_eq!(again.coweight, cw);
    }
}

#[test]
fn osp_symmetrization_makes_off_blocks_integral() {
    let v = osp_block_form(&[2], &[1], 2, 3, P).unwrap();
    let mut h = FMatrix::identity(6, P);
    // [[I,0],[Y,I]] with Y symmetric, followed by [[I,Y'],[0,I]]
    h[(3, 0)] = tl(0, &[1, 1], P);
    h[(4, 1)] = tl(0, &[2], P);
    h[(3, 1)] = tl(0, &[1], P);
    h[(4, 0)] = tl(0, &[1], P);
    let w = &h * &v;
    let red = sp_so_reduce(&w).unwrap();
    assert!(red.symmetrized.block(3, 0, 3, 2).is_integral().unwrap());
    assert!(red.symmetrized.block(0, 2, 3, 2).is_integral().unwrap());
    assert_eq!(red.coweight.0, vec![2, 1]);
}

fn sym_form(n: usize) -> FMatrix {
    FMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if (i + n == j) || (j + n == i) {
            TruncatedLaurent::one(P)
        } else {
            TruncatedLaurent::zero(P)
        }
    })
}

fn symp_form(m: usize) -> FMatrix {
    FMatrix::from_fn(2 * m, 2 * m, |i, j| {
        if i + m == j {
            TruncatedLaurent::one(P)
        } else if j + m == i {
            -TruncatedLaurent::one(P)
        } else {
            TruncatedLaurent::zero(P)
        }
    })
}

/// Generators of `Sp_{2k}(O)` (`sp = true`) or `O_{2k}(O)`.
#[derive(Clone, Debug)]
enum SymElem {
    Block(Vec<Elem>),
    Lower(usize, usize, Vec<i64>),
    Upper(usize, usize, Vec<i64>),
    Weyl(usize),
}

fn arb_sym_elem(k: usize) -> impl Strategy<Value = SymElem> {
    let poly = proptest::collection::vec(-2i64..=2, 1..=2);
    prop_oneof![
        proptest::collection::vec(arb_elem(k), 1..3).prop_map(SymElem::Block),
        (0..k, 0..k, poly.clone()).prop_map(|(i, j, c)| SymElem::Lower(i, j, c)),
        (0..k, 0..k, poly).prop_map(|(i, j, c)| SymElem::Upper(i, j, c)),
        (0..k).prop_map(SymElem::Weyl),
    ]
}

fn sym_elem_matrix(e: &SymElem, k: usize, sp: bool) -> FMatrix {
    let mut g = FMatrix::identity(2 * k, P);
    match e {
        SymElem::Block(es) => {
            let (a, a_inv) = compose(es, k);
            g.set_block(0, 0, &a);
            g.set_block(k, k, &a_inv.transpose());
        }
        SymElem::Lower(i, j, c) | SymElem::Upper(i, j, c) => {
            let x = tl(0, c, P);
            // Symmetric off-diagonal blocks for Sp, antisymmetric for O.
            let (r0, c0) = if matches!(e, SymElem::Lower(..)) {
                (k, 0)
            } else {
                (0, k)
            };
            if i == j {
                if sp {
                    g[(r0 + i, c0 + j)] = x;
                }
            } else {
                g[(r0 + i, c0 + j)] = x.clone();
                g[(r0 + j, c0 + i)] = if sp { x } else { -x };
            }
        }
        SymElem::Weyl(i) => {
            g[(*i, *i)] = TruncatedLaurent::zero(P);
            g[(k + i, k + i)] = TruncatedLaurent::zero(P);
            g[(*i, k + i)] = TruncatedLaurent::one(P);
            g[(k + i, *i)] = if sp {
                -TruncatedLaurent::one(P)
            } else {
                TruncatedLaurent::one(P)
            };
        }
    }
    g
}

fn sym_compose(es: &[SymElem], k: usize, sp: bool) -> FMatrix {
    let form = if sp { symp_form(k) } else { sym_form(k) };
    let mut g = FMatrix::identity(2 * k, P);
    for e in es {
        let x = sym_elem_matrix(e, k, sp);
        assert!(
            (&(&x.transpose() * &form) * &x).agrees(&form),
            "generator leaves the group: {e:?}"
        );
        g = &g * &x;
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_exponents_match_minor_valuations(
        rows in 1usize..=3,
        cols in 1usize..=3,
        data in proptest::collection::vec((-3i64..=1, -2i64..=2, -2i64..=2), 9),
    ) {
        let v = FMatrix::from_fn(rows, cols, |i, j| {
            let (val, a, b) = data[i * 3 + j];
            tl(val, &[a, b], 20)
        });
        let s = smith_diagonalize(&v).unwrap();
        prop_assert!(s.transform.is_valid());
        prop_assert!(s.exponents.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(s.exponents, minors_oracle(&v));
    }

    #[test]
    fn gl_coweight_is_orbit_invariant(
        idx in 0usize..7,
        left in proptest::collection::vec(arb_elem(4), 0..6),
        right in proptest::collection::vec(arb_elem(3), 0..6),
    ) {
        let (n, m, cw) = gl_fixtures()[idx].clone();
        let left: Vec<Elem> = left.into_iter().filter(|e| fits(e, m)).collect();
        let right: Vec<Elem> = right.into_iter().filter(|e| fits(e, n)).collect();
        let (l, l_inv) = compose(&left, m);
        let (r, r_inv) = compose(&right, n);
        let pair = gl_canonical_pair(&Coweight::new(cw.clone()).unwrap(), m, P).unwrap();
        let moved = LatticePair::gl(&(&l * &pair.v) * &r, &(&r_inv * &pair.vstar) * &l_inv).unwrap();
        prop_assert!(check_integrality(&moved).unwrap());
        let nf = gl_normal_form(&moved).unwrap();
        prop_assert_eq!(&nf.coweight.0, &cw);
        prop_assert!(nf.transform.is_valid());
        let back = nf.transform.apply(&moved);
        let canonical = gl_canonical_pair(&nf.coweight, m, P).unwrap();
        prop_assert!(back.v.congruent_mod_integral(&canonical.v));
        prop_assert!(back.vstar.congruent_mod_integral(&canonical.vstar));
    }

    #[test]
    fn osp_coweight_is_orbit_invariant(
        shape in 0usize..3,
        left in proptest::collection::vec(arb_sym_elem(3), 0..5),
        right in proptest::collection::vec(arb_sym_elem(2), 0..5),
    ) {
        let (n, m, a, b, expected) = [
            (1, 2, vec![2], vec![], vec![2]),
            (1, 2, vec![], vec![1], vec![1]),
            (2, 3, vec![2], vec![1], vec![2, 1]),
        ][shape].clone();
        let left: Vec<SymElem> = left.into_iter().filter(|e| sym_fits(e, m)).collect();
        let right: Vec<SymElem> = right.into_iter().filter(|e| sym_fits(e, n)).collect();
        let h = sym_compose(&left, m, true);
        let g = sym_compose(&right, n, false);
        let v = &(&h * &osp_block_form(&a, &b, n, m, P).unwrap()) * &g;
        prop_assert!(check_integrality(&LatticePair::osp(v.clone()).unwrap()).unwrap());
        let red = sp_so_reduce(&v).unwrap();
        prop_assert_eq!(red.coweight.0, expected);
        prop_assert!(red.symmetrized.block(m, 0, m, n).is_integral().unwrap());
        prop_assert!(red.symmetrized.block(0, n, m, n).is_integral().unwrap());
    }
}

fn fits(e: &Elem, k: usize) -> bool {
    match e {
        Elem::Add(i, j, _) | Elem::Swap(i, j) => *i < k && *j < k,
        Elem::Scale(i, _, _) => *i < k,
    }
}

fn sym_fits(e: &SymElem, k: usize) -> bool {
    match e {
        SymElem::Block(es) => es.iter().all(|x| fits(x, k)),
        SymElem::Lower(i, j, _) | SymElem::Upper(i, j, _) => *i < k && *j < k,
        SymElem::Weyl(i) => *i < k,
    }
}

#[test]
fn adjoint_identity() {
    // S·v* = vᵗ·J, i.e. ⟨v x, y⟩ for J equals ⟨x, v* y⟩ for S.
    let v = FMatrix::from_fn(4, 2, |i, j| {
        tl(-((i + j) as i64 % 2), &[(i as i64) - (j as i64), 1], P)
    });
    let lhs = &v.transpose() * &symp_form(2);
    let rhs = &sym_form(1) * &osp_star(&v);
    assert!(lhs.agrees(&rhs));
}
