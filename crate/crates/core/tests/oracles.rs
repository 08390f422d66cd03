//! Independent re-derivations checked against the library.

use std::collections::HashSet;

use num_traits::Zero;
use rbcyb::bialgebra::cybe_bracket;
use rbcyb::catalog;
use rbcyb::lie::LieAlgebra;
use rbcyb::linalg::Matrix;
use rbcyb::relative::PreLie;
use rbcyb::tensor::{RMatrix, Tensor2};
use rbcyb::GaussRat;

const PRELIE_ORBITS: usize = 96;
const POSTLIE_ORBITS: usize = 183;

/// Product on dim 2 given as `m[i][j] = e_i ▷ e_j`.
type Prod = [[[i32; 2]; 2]; 2];

fn prod_from(code: usize) -> Prod {
    let mut c = code;
    let mut p = [[[0; 2]; 2]; 2];
    for x in p.iter_mut().flatten().flatten() {
        *x = (c % 3) as i32 - 1;
        c /= 3;
    }
    p
}

fn apply(p: &Prod, x: [i32; 2], y: [i32; 2]) -> [i32; 2] {
    let mut out = [0; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[0] += x[i] * y[j] * p[i][j][0];
            out[1] += x[i] * y[j] * p[i][j][1];
        }
    }
    out
}

fn sub(a: [i32; 2], b: [i32; 2]) -> [i32; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn add(a: [i32; 2], b: [i32; 2]) -> [i32; 2] {
    [a[0] + b[0], a[1] + b[1]]
}

const BASIS: [[i32; 2]; 2] = [[1, 0], [0, 1]];

fn is_prelie(p: &Prod) -> bool {
    let assoc = |x, y, z| sub(apply(p, apply(p, x, y), z), apply(p, x, apply(p, y, z)));
    BASIS.iter().all(|&x| BASIS.iter().all(|&y| BASIS.iter().all(|&z| assoc(x, y, z) == assoc(y, x, z))))
}

fn is_postlie(br: &Prod, p: &Prod) -> bool {
    BASIS.iter().all(|&x| {
        BASIS.iter().all(|&y| {
            BASIS.iter().all(|&z| {
                let lhs1 = apply(p, x, apply(br, y, z));
                let rhs1 = add(apply(br, apply(p, x, y), z), apply(br, y, apply(p, x, z)));
                let s = add(apply(br, x, y), sub(apply(p, x, y), apply(p, y, x)));
                let lhs2 = apply(p, s, z);
                let rhs2 = sub(apply(p, x, apply(p, y, z)), apply(p, y, apply(p, x, z)));
                lhs1 == rhs1 && lhs2 == rhs2
            })
        })
    })
}

/// Relabels `e_0 ↔ e_1`.
fn swapped(p: &Prod) -> Prod {
    let mut out = [[[0; 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[1 - i][1 - j][1 - k] = p[i][j][k];
            }
        }
    }
    out
}

fn brackets() -> Vec<Prod> {
    let mut out = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            let mut br = [[[0; 2]; 2]; 2];
            br[0][1] = [a, b];
            br[1][0] = [-a, -b];
            out.push(br);
        }
    }
    out
}

/// Orbit count by Burnside: (solutions + swap-fixed solutions) / 2.
fn burnside(solutions: &[(Prod, Prod)]) -> usize {
    let fixed = solutions.iter().filter(|(b, p)| swapped(b) == *b && swapped(p) == *p).count();
    (solutions.len() + fixed) / 2
}

#[test]
fn prelie_orbit_count_matches_enumeration() {
    let zero = [[[0; 2]; 2]; 2];
    let sols: Vec<(Prod, Prod)> = (0..6561).map(prod_from).filter(is_prelie).map(|p| (zero, p)).collect();
    let orbits = burnside(&sols);
    assert_eq!(orbits, PRELIE_ORBITS);
    assert_eq!(catalog::enumerate_prelie2().len(), PRELIE_ORBITS);
}

#[test]
fn postlie_orbit_count_matches_enumeration() {
    let mut sols = Vec::new();
    for br in brackets() {
        for code in 0..6561 {
            let p = prod_from(code);
            if is_postlie(&br, &p) {
                sols.push((br, p));
            }
        }
    }
    assert_eq!(burnside(&sols), POSTLIE_ORBITS);
    assert_eq!(catalog::enumerate_postlie2().len(), POSTLIE_ORBITS);
}

#[test]
fn enumerated_tables_are_distinct_orbits() {
    let to_key = |a: &[GaussRat]| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut seen = HashSet::new();
    for a in catalog::enumerate_prelie2() {
        assert!(a.residual().is_empty());
        assert!(seen.insert(to_key(a.table())));
    }
    let mut seen = HashSet::new();
    for a in catalog::enumerate_postlie2() {
        assert!(a.residuals().is_empty());
        let key = format!("{}|{}", to_key(a.lie.dense()), to_key(a.table()));
        assert!(seen.insert(key));
    }
}

/// `[r,r]` straight from the definition, entry by entry.
fn cybe_naive(l: &LieAlgebra, t: &Matrix) -> Vec<GaussRat> {
    let n = l.dim();
    let mut out = vec![GaussRat::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let rr = &t[(a, b)] * &t[(c, d)];
                    if rr.is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        // [r12, r13] = [a, c] ⊗ b ⊗ d
                        out[(k * n + b) * n + d] += &rr * l.c(a, c, k);
                        // [r13, r23] = a ⊗ c ⊗ [b, d]
                        out[(a * n + c) * n + k] += &rr * l.c(b, d, k);
                        // [r12, r23] = a ⊗ [b, c] ⊗ d
                        out[(a * n + k) * n + d] += &rr * l.c(b, c, k);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn cybe_matches_naive_definition() {
    let l = catalog::sl2_algebra();
    let mut seed = 11u64;
    for _ in 0..20 {
        let mut vals = Vec::with_capacity(9);
        for _ in 0..9 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            vals.push(GaussRat::from_int((seed >> 60) as i64 - 8));
        }
        let t = Matrix::from_fn(3, 3, |i, j| vals[i * 3 + j].clone());
        let fast = cybe_bracket(&l, &RMatrix::new(l.clone(), Tensor2(t.clone())).unwrap());
        let slow = cybe_naive(&l, &t);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(fast.get(i, j, k), &slow[(i * 3 + j) * 3 + k]);
                }
            }
        }
    }
}

#[test]
fn prelie_r_matrix_sign() {
    // r = Σ e_i* ⊗ e_i - e_i ⊗ e_i* for T = 1 on the left regular module
    for a in catalog::enumerate_prelie2().into_iter().take(10) {
        let op = a.as_relrb0();
        let r = op.r_t();
        for i in 0..2 {
            assert_eq!(r.tensor.get(2 + i, i), &GaussRat::from_int(1));
            assert_eq!(r.tensor.get(i, 2 + i), &GaussRat::from_int(-1));
        }
        assert_eq!(r.r_plus().block(0, 2, 2, 2), Matrix::identity(2));
        let negated = RMatrix::new(r.algebra.clone(), r.tensor.scale(&GaussRat::from_int(-1))).unwrap();
        assert!(cybe_bracket(&r.algebra, &r).is_zero());
        assert!(cybe_bracket(&r.algebra, &negated).is_zero());
    }
}

#[test]
fn prelie_from_raw_table() {
    // e_0 ▷ e_0 = e_0 is pre-Lie; e_0 ▷ e_1 = e_0, e_1 ▷ e_0 = e_1 is not
    let mut a = vec![GaussRat::zero(); 8];
    a[0] = GaussRat::from_int(1);
    assert!(PreLie::new(2, a.clone()).unwrap().residual().is_empty());
    let mut b = vec![GaussRat::zero(); 8];
    b[2] = GaussRat::from_int(1);
    b[5] = GaussRat::from_int(1);
    let ok = is_prelie(&{
        let mut p = [[[0; 2]; 2]; 2];
        p[0][1] = [1, 0];
        p[1][0] = [0, 1];
        p
    });
    assert_eq!(PreLie::new(2, b).unwrap().residual().is_empty(), ok);
}
