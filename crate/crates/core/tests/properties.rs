use std::str::FromStr;

use num_traits::Zero;
use proptest::prelude::*;
use rbcyb::bialgebra::{cre_residual, cybe_bracket, dual_bracket, dual_bracket_via_cobracket, fixed_point_invariance, is_coideal};
use rbcyb::catalog::{self, Payload};
use rbcyb::linalg::{kernel, Matrix};
use rbcyb::relative::RelRB0;
use rbcyb::rotabaxter::{lift_equivalence, r_from_quadratic, QuadraticRB, RBStructure};
use rbcyb::tensor::{RMatrix, Tensor2};
use rbcyb::GaussRat;

fn rat() -> impl Strategy<Value = GaussRat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, d)| GaussRat::frac(p, d))
}

fn nonzero_rat() -> impl Strategy<Value = GaussRat> {
    rat().prop_filter("nonzero", |x| !x.is_zero())
}

fn small_matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(lo..=hi, n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| GaussRat::from_int(v[i * n + j])))
}

/// Unipotent lower times upper triangular: always invertible.
fn invertible3() -> impl Strategy<Value = Matrix> {
    (prop::collection::vec(-2i64..=2, 3), prop::collection::vec(-2i64..=2, 3), prop::collection::vec(-2i64..=2, 3)).prop_map(
        |(l, u, d)| {
            let lo = Matrix::from_i64(&[&[1, 0, 0], &[l[0], 1, 0], &[l[1], l[2], 1]]);
            let up = Matrix::from_i64(&[&[1, u[0], u[1]], &[0, 1, u[2]], &[0, 0, 1]]);
            let diag = Matrix::from_fn(3, 3, |i, j| if i == j { GaussRat::from_int(if d[i] == 0 { 1 } else { d[i] }) } else { GaussRat::zero() });
            &(&lo * &up) * &diag
        },
    )
}

fn sl2_qrb(lambda: &GaussRat) -> QuadraticRB {
    match catalog::sl2_example(lambda).unwrap().payload {
        Payload::Quadratic { qrb, .. } => qrb,
        _ => unreachable!(),
    }
}

fn transported(q: &QuadraticRB, p: &Matrix) -> QuadraticRB {
    let pinv = p.inverse().unwrap();
    let alg = q.algebra().transport(p).unwrap();
    let b = &(p * &q.rb.b) * &pinv;
    let gram = &(&pinv.transpose() * &q.form.gram) * &pinv;
    QuadraticRB::new(RBStructure::new(alg, b, q.rb.weight.clone()).unwrap(), gram).unwrap()
}

/// `Ad_g` on `sl(2)` in the basis `H, X, Y`, for `g = [[a, b], [c, -a]]` with `a² + bc = ±1`.
fn ad_involution(a: &GaussRat, b: &GaussRat, s: i64) -> Matrix {
    let c = (&GaussRat::from_int(s) - &(a * a)).checked_div(b).unwrap();
    let g = Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![c, -a]]).unwrap();
    let cols: Vec<Vec<GaussRat>> = catalog::sl2_matrices()
        .iter()
        .map(|m| {
            let u = (&(&g * m) * &g).scale(&GaussRat::from_int(s));
            vec![u[(0, 0)].clone(), u[(0, 1)].clone(), u[(1, 0)].clone()]
        })
        .collect();
    Matrix::from_cols(3, &cols).unwrap()
}

fn involution() -> impl Strategy<Value = Matrix> {
    (rat(), nonzero_rat(), prop::bool::ANY).prop_map(|(a, b, neg)| ad_involution(&a, &b, if neg { -1 } else { 1 }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transport_keeps_quadratic_structure(p in invertible3(), lam in nonzero_rat()) {
        let q = transported(&sl2_qrb(&lam), &p);
        prop_assert!(q.validate().is_valid());
        let r = r_from_quadratic(&q).unwrap();
        prop_assert!(cybe_bracket(q.algebra(), &r).is_zero());
    }

    #[test]
    fn operator_is_homomorphism_from_descendent(p in invertible3(), lam in nonzero_rat()) {
        let q = transported(&sl2_qrb(&lam), &p);
        let d = q.rb.descendent().unwrap();
        prop_assert!(d.validate().is_valid());
        prop_assert!(d.homomorphism_defect(q.algebra(), &q.rb.b).unwrap().is_empty());
    }

    #[test]
    fn relative_r_matrix_is_skew_and_tracks_validity(t in small_matrix(3, -1, 1)) {
        let l = catalog::sl2_algebra();
        let op = RelRB0::new(l.clone(), l.adjoint(), t).unwrap();
        let r = op.r_t();
        prop_assert_eq!(r.tensor.transpose21(), r.tensor.scale(&GaussRat::from_int(-1)));
        prop_assert_eq!(cybe_bracket(&r.algebra, &r).is_zero(), op.is_valid());
    }

    #[test]
    fn dual_bracket_routes_agree(t in small_matrix(3, -3, 3), xi in prop::collection::vec(rat(), 3), eta in prop::collection::vec(rat(), 3)) {
        let l = catalog::sl2_algebra();
        let r = RMatrix::new(l.clone(), Tensor2(t)).unwrap();
        prop_assert_eq!(dual_bracket(&l, &r, &xi, &eta), dual_bracket_via_cobracket(&l, &r, &xi, &eta));
    }

    #[test]
    fn reflection_residual_forms_agree(tau in involution(), lam in nonzero_rat()) {
        let q = sl2_qrb(&lam);
        prop_assert!(q.algebra().is_automorphism(&tau));
        prop_assert_eq!(&tau * &tau, Matrix::identity(3));
        let r = r_from_quadratic(&q).unwrap();
        prop_assert!(cre_residual(q.algebra(), &r, &tau).unwrap().forms_agree());
    }

    #[test]
    fn transpose_is_in_the_sampled_family(lam in nonzero_rat()) {
        let tau = match catalog::sl2_example(&lam).unwrap().payload {
            Payload::Quadratic { reflections, .. } => reflections[0].tau.clone(),
            _ => unreachable!(),
        };
        prop_assert_eq!(ad_involution(&GaussRat::zero(), &GaussRat::from_int(1), -1), tau);
    }

    #[test]
    fn fixed_point_invariance_implies_coideal(tau in involution(), lam in nonzero_rat()) {
        let q = sl2_qrb(&lam);
        let r = r_from_quadratic(&q).unwrap();
        let h = kernel(&(&tau - &Matrix::identity(3)));
        if fixed_point_invariance(q.algebra(), &r, &tau, &h).unwrap().passes() {
            prop_assert!(is_coideal(q.algebra(), &r, &h));
        }
    }

    #[test]
    fn lifted_equation_matches_reflection_residuals(tau in involution(), lam in nonzero_rat()) {
        let q = sl2_qrb(&lam);
        let eq = lift_equivalence(&q.rb, &tau).unwrap();
        prop_assert_eq!(eq.residuals_vanish, eq.cre_vanishes);
        prop_assert!(eq.forms_agree);
    }

    #[test]
    fn prelie_and_postlie_views_agree(idx in 0usize..96) {
        let a = &catalog::enumerate_prelie2()[idx];
        let p = a.as_postlie();
        prop_assert!(p.residuals().is_empty());
        prop_assert!(p.lie.is_abelian());
        prop_assert_eq!(p.subadjacent(), a.subadjacent());
        prop_assert!(a.as_relrb0().is_valid());
    }

    #[test]
    fn scalar_display_round_trips(re in rat(), im in rat()) {
        let x = GaussRat::complex(re, im);
        prop_assert_eq!(GaussRat::from_str(&x.to_string()).unwrap(), x);
    }
}
