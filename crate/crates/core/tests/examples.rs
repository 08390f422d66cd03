use num_traits::Zero;
use rbcyb::bialgebra::{cre_residual, cybe_bracket, fixed_point_invariance, symmetric_invariance, BialgebraKind};
use rbcyb::catalog::{self, Payload};
use rbcyb::linalg::{kernel, Matrix};
use rbcyb::rotabaxter::{orthogonal_fixed_checks, r_from_quadratic, reflection_residuals, QuadraticRB, ReflectionVariant};
use rbcyb::scalar::q;
use rbcyb::tensor::{RMatrix, Tensor2};
use rbcyb::GaussRat;

fn sl2(lambda: &GaussRat) -> (QuadraticRB, Matrix) {
    match catalog::sl2_example(lambda).unwrap().payload {
        Payload::Quadratic { qrb, reflections } => (qrb, reflections[0].tau.clone()),
        _ => unreachable!(),
    }
}

fn weights() -> Vec<GaussRat> {
    vec![q(1, 1), q(-1, 1), q(2, 1), q(1, 2)]
}

fn v(xs: &[i64]) -> Vec<GaussRat> {
    xs.iter().map(|&x| GaussRat::from_int(x)).collect()
}

#[test]
fn sl2_descendent_brackets() {
    for lam in weights() {
        let (qrb, _) = sl2(&lam);
        assert!(qrb.validate().is_valid());
        let d = qrb.rb.descendent().unwrap();
        let neg = -&lam;
        assert_eq!(d.basis_bracket_vec(0, 1), vec![q(0, 1), neg.clone(), q(0, 1)]);
        assert_eq!(d.basis_bracket_vec(0, 2), vec![q(0, 1), q(0, 1), neg]);
        assert_eq!(d.basis_bracket_vec(1, 2), vec![q(0, 1); 3]);
    }
}

#[test]
fn sl2_symmetric_core_is_lambda_one_minus_tau() {
    for lam in weights() {
        let (qrb, tau) = sl2(&lam);
        let res = reflection_residuals(&qrb, &tau).unwrap();
        assert_eq!(res.symmetric_core, (&Matrix::identity(3) - &tau).scale(&lam));
        assert!(res.symmetric_pairing.is_zero());
        assert!(res.holds(ReflectionVariant::RelaxedAd));
        assert!(!res.holds(ReflectionVariant::Skew));
        assert!(!res.holds(ReflectionVariant::Symmetric));
    }
}

#[test]
fn sl2_fixed_point_invariance_and_coideal() {
    for lam in weights() {
        let (qrb, tau) = sl2(&lam);
        let r = r_from_quadratic(&qrb).unwrap();
        let h = kernel(&(&tau - &Matrix::identity(3)));
        assert_eq!(h.dim(), 1);
        assert!(h.contains(&v(&[0, 1, -1])));
        assert!(fixed_point_invariance(qrb.algebra(), &r, &tau, &h).unwrap().passes());
        assert!(rbcyb::bialgebra::is_coideal(qrb.algebra(), &r, &h));
    }
}

#[test]
fn sl2_relaxed_reflection_has_nonzero_cre() {
    // the relaxed-ad variant gives fixed-point invariance but not the reflection equation
    let (qrb, tau) = sl2(&q(1, 1));
    let r = r_from_quadratic(&qrb).unwrap();
    let c = cre_residual(qrb.algebra(), &r, &tau).unwrap();
    assert!(!c.is_zero());
    assert!(c.forms_agree());
}

#[test]
fn sl2_orthogonal_fixed_set_is_subalgebra_not_ideal() {
    for lam in weights() {
        let (qrb, tau) = sl2(&lam);
        let c = orthogonal_fixed_checks(&qrb, &tau).unwrap();
        assert!(c.descendent_closed);
        assert!(!c.ideal);
        assert!(c.spaces.h0.contains(&v(&[1, 0, 0])) && c.spaces.h0.contains(&v(&[0, 1, 1])));
        let d = qrb.rb.descendent().unwrap();
        let x = v(&[0, 1, 0]);
        for a in -3..=3 {
            for b in -3..=3 {
                let elem = v(&[a, b, b]);
                let expect = vec![q(0, 1), -&(&lam * &GaussRat::from_int(a)), q(0, 1)];
                assert_eq!(d.bracket(&elem, &x), expect);
            }
        }
    }
}

#[test]
fn sl2_r_matrix_normalization() {
    let (qrb, _) = sl2(&q(1, 1));
    let r = r_from_quadratic(&qrb).unwrap();
    // I_S = diag(1/8) on H and 1/4 swapping X,Y; (B+1) = diag(1/2, 0, 1)
    let mut expected = Matrix::zeros(3, 3);
    expected[(0, 0)] = q(1, 16);
    expected[(1, 2)] = q(1, 4);
    assert_eq!(r.tensor.0, expected);

    let mut quoted = Matrix::zeros(3, 3);
    quoted[(0, 0)] = q(1, 8);
    quoted[(1, 2)] = q(1, 2);
    assert_eq!(quoted, expected.scale(&q(2, 1)));
    let quoted = RMatrix::new(qrb.algebra().clone(), Tensor2(quoted)).unwrap();
    assert!(cybe_bracket(qrb.algebra(), &r).is_zero());
    assert!(cybe_bracket(qrb.algebra(), &quoted).is_zero());
}

#[test]
fn catalog_entries_verify() {
    for name in catalog::CATALOG_NAMES {
        let e = catalog::by_name(name, &q(1, 1), 2).unwrap();
        for (label, ok) in e.verify().unwrap() {
            assert!(ok, "{name}: {label}");
        }
    }
    for lam in weights() {
        assert!(catalog::sl2_example(&lam).unwrap().all_pass().unwrap());
    }
}

#[test]
fn weight_sign_decides_kind() {
    for lam in weights() {
        let (qrb, _) = sl2(&lam);
        let r = r_from_quadratic(&qrb).unwrap();
        assert_eq!(symmetric_invariance(qrb.algebra(), &r).kind, BialgebraKind::Factorizable);
    }
    // weight 0: B = 0 on sl2 gives r = 0
    let (qrb, _) = sl2(&q(1, 1));
    let zero = rbcyb::rotabaxter::RBStructure::new(qrb.algebra().clone(), Matrix::zeros(3, 3), GaussRat::zero()).unwrap();
    let q0 = QuadraticRB::new(zero, qrb.form.gram.clone()).unwrap();
    let r0 = r_from_quadratic(&q0).unwrap();
    assert!(r0.tensor.is_zero());
    assert_eq!(symmetric_invariance(q0.algebra(), &r0).kind, BialgebraKind::Triangular);
}

#[test]
fn zero_weight_rejected_by_sl2_example() {
    assert!(catalog::sl2_example(&GaussRat::zero()).is_err());
}
