//! Seeded random group elements over `O = Q[[t]]`, built as products of
//! generators and carried together with their inverses.

use loopslice_core::lattice::{FMatrix, OUnitTransform};
use loopslice_core::{Rational, TruncatedLaurent};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// A random element of `O` with small integer coefficients.
pub fn integral(rng: &mut impl Rng, prec: i64) -> TruncatedLaurent {
    let len = rng.random_range(1..=3);
    let c: Vec<i64> = (0..len).map(|_| rng.random_range(-3..=3)).collect();
    TruncatedLaurent::from_i64(0, &c, prec)
}

/// A random unit of `O` and its inverse.
pub fn unit(rng: &mut impl Rng, prec: i64) -> (TruncatedLaurent, TruncatedLaurent) {
    let lead = *[-2i64, -1, 1, 2, 3].choose(rng).expect("nonempty");
    let tail = integral(rng, prec).shift(1);
    let u = &TruncatedLaurent::constant(Rational::from_integer(lead.into()), prec) + &tail;
    let inv = u.invert().expect("units are invertible");
    (u, inv)
}

/// A random element of `GL_k(O)` as a product of `steps` generators.
pub fn gl_o(rng: &mut impl Rng, k: usize, steps: usize, prec: i64) -> (FMatrix, FMatrix) {
    let mut g = FMatrix::identity(k, prec);
    let mut inv = FMatrix::identity(k, prec);
    for _ in 0..steps {
        let i = rng.random_range(0..k);
        let j = rng.random_range(0..k);
        match rng.random_range(0..3) {
            0 if i != j => {
                let c = integral(rng, prec);
                g.add_col_multiple(j, i, &c);
                inv.add_row_multiple(i, j, &-&c);
            }
            1 => {
                g.swap_cols(i, j);
                inv.swap_rows(i, j);
            }
            _ => {
                let (u, u_inv) = unit(rng, prec);
                g.scale_col(i, &u);
                inv.scale_row(i, &u_inv);
            }
        }
    }
    (g, inv)
}

/// `(v, v*) ↦ (A v B, B⁻¹ v* A⁻¹)` with `A ∈ GL_m(O)`, `B ∈ GL_n(O)`.
pub fn gl_transform(rng: &mut impl Rng, n: usize, m: usize, prec: i64) -> OUnitTransform {
    let steps = rng.random_range(2..=6);
    let (left, left_inv) = gl_o(rng, m, steps, prec);
    let (right, right_inv) = gl_o(rng, n, steps, prec);
    OUnitTransform {
        left,
        left_inv,
        right,
        right_inv,
    }
}

/// The Gram matrix of `[[0, I], [±I, 0]]`; `symplectic` picks `−I` below.
pub fn form(k: usize, symplectic: bool, prec: i64) -> FMatrix {
    FMatrix::from_fn(2 * k, 2 * k, |i, j| {
        if i + k == j {
            TruncatedLaurent::one(prec)
        } else if j + k == i {
            if symplectic {
                -&TruncatedLaurent::one(prec)
            } else {
                TruncatedLaurent::one(prec)
            }
        } else {
            TruncatedLaurent::zero(prec)
        }
    })
}

/// A random element of `Sp_{2k}(O)` (`symplectic`) or `O_{2k}(O)` built from
/// block units `diag(A, A^{-t})`, `Sym²`/`Λ²` shears and Weyl reflections.
pub fn osp_o(rng: &mut impl Rng, k: usize, steps: usize, symplectic: bool, prec: i64) -> FMatrix {
    let mut g = FMatrix::identity(2 * k, prec);
    for _ in 0..steps {
        let mut x = FMatrix::identity(2 * k, prec);
        match rng.random_range(0..4) {
            0 => {
                let (a, a_inv) = gl_o(rng, k, 2, prec);
                x.set_block(0, 0, &a);
                x.set_block(k, k, &a_inv.transpose());
            }
            kind @ (1 | 2) => {
                let (i, j) = (rng.random_range(0..k), rng.random_range(0..k));
                let c = integral(rng, prec);
                let (r0, c0) = if kind == 1 { (k, 0) } else { (0, k) };
                if i == j {
                    if symplectic {
                        x[(r0 + i, c0 + j)] = c;
                    }
                } else {
                    x[(r0 + i, c0 + j)] = c.clone();
                    x[(r0 + j, c0 + i)] = if symplectic { c } else { -&c };
                }
            }
            _ => {
                let i = rng.random_range(0..k);
                x[(i, i)] = TruncatedLaurent::zero(prec);
                x[(k + i, k + i)] = TruncatedLaurent::zero(prec);
                x[(i, k + i)] = TruncatedLaurent::one(prec);
                x[(k + i, i)] = if symplectic {
                    -&TruncatedLaurent::one(prec)
                } else {
                    TruncatedLaurent::one(prec)
                };
            }
        }
        g = &g * &x;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_elements_are_invertible_over_o() {
        let mut r = rng(7, 0);
        for _ in 0..20 {
            let t = gl_transform(&mut r, 2, 3, 8);
            assert!(t.is_valid());
        }
    }

    #[test]
    fn osp_elements_preserve_forms() {
        let mut r = rng(3, 1);
        for sp in [true, false] {
            let f = form(2, sp, 8);
            for _ in 0..20 {
                let g = osp_o(&mut r, 2, 5, sp, 8);
                assert!((&(&g.transpose() * &f) * &g).agrees(&f));
                assert!(g.is_integral().unwrap());
            }
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let a = gl_transform(&mut rng(11, 2), 2, 4, 8);
        let b = gl_transform(&mut rng(11, 2), 2, 4, 8);
        assert_eq!(a, b);
    }
}
