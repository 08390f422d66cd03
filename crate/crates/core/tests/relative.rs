use num_traits::Zero;
use rbcyb::bialgebra::cybe_bracket;
use rbcyb::catalog::{self, Payload};
use rbcyb::linalg::Matrix;
use rbcyb::relative::{RelRB0, RelRBW};
use rbcyb::scalar::q;
use rbcyb::GaussRat;

fn relw(entry: rbcyb::Result<catalog::CatalogEntry>) -> (RelRBW, Vec<catalog::NamedPair>) {
    match entry.unwrap().payload {
        Payload::RelativeW { op, pairs } => (op, pairs),
        _ => unreachable!(),
    }
}

#[test]
fn weight_zero_dual_is_semidirect_for_every_prelie_table() {
    for a in catalog::enumerate_prelie2() {
        let rep = a.as_relrb0().dual_semidirect_check();
        assert!(rep.skew && rep.cybe_zero && rep.equal, "{:?}", a.table());
    }
    let zero = match catalog::rel0_zero(&catalog::sl2_algebra(), 2).unwrap().payload {
        Payload::Relative0 { op, .. } => op,
        _ => unreachable!(),
    };
    let rep = zero.dual_semidirect_check();
    assert!(rep.skew && rep.cybe_zero && rep.equal);
}

#[test]
fn r_t_solves_cybe_iff_operator_is_valid() {
    let l = catalog::sl2_algebra();
    let adj = l.adjoint();
    for (t, valid) in [(Matrix::zeros(3, 3), true), (Matrix::identity(3), false)] {
        let op = RelRB0::new(l.clone(), adj.clone(), t).unwrap();
        assert_eq!(op.is_valid(), valid);
        assert_eq!(cybe_bracket(&op.r_t().algebra, &op.r_t()).is_zero(), valid);
    }
}

#[test]
fn literal_quotient_fails_and_correction_accounts_for_it() {
    for lam in [q(1, 1), q(-1, 1), q(2, 1)] {
        let (op, _) = relw(catalog::relw_sl2(&lam));
        assert!(op.is_valid());
        assert!(op.explicit_dual_check().unwrap().all_hold());
        let rep = op.sub_bialgebra_check().unwrap();
        assert!(rep.subalgebra && rep.annihilator_ideal);
        assert!(!rep.quotient_matches);
        assert!(rep.structure_holds());
        assert_ne!(op.quotient_algebra().unwrap(), op.quotient_algebra_full().unwrap());
    }
}

#[test]
fn both_quotients_agree_when_operator_vanishes() {
    let (op, _) = relw(catalog::relw_zero(&catalog::sl2_algebra(), 2, &q(1, 1)));
    let rep = op.sub_bialgebra_check().unwrap();
    assert!(rep.all_hold() && rep.structure_holds());
    assert_eq!(op.quotient_algebra().unwrap(), op.quotient_algebra_full().unwrap());
}

#[test]
fn chevalley_pair_passes_the_whole_chain() {
    let (op, pairs) = relw(catalog::relw_sl2(&q(1, 1)));
    let p = &pairs[0];
    let chain = op.reflection_chain(&p.sigma, &p.tau).unwrap();
    assert!(chain.residuals_vanish && chain.rb_reflection_vanishes && chain.cre_vanishes && chain.forms_agree);
}

#[test]
fn mismatched_pair_breaks_the_module_condition() {
    let (op, pairs) = relw(catalog::relw_sl2(&q(1, 1)));
    let sigma = &pairs[0].sigma;
    let one = Matrix::identity(3);
    let res = op.reflection_residuals(sigma, &one).unwrap();
    assert!(!res.module.is_empty());
    let chain = op.reflection_chain(sigma, &one).unwrap();
    assert!(!chain.residuals_vanish);
    assert!(!chain.rb_reflection_vanishes);
}

#[test]
fn non_involution_is_rejected() {
    let (op, _) = relw(catalog::relw_sl2(&q(1, 1)));
    let two = Matrix::scalar(3, &q(2, 1));
    assert!(op.reflection_residuals(&two, &two).is_err());
}

#[test]
fn zero_weight_relw_is_rejected() {
    let l = catalog::sl2_algebra();
    let rho = rbcyb::lie::Representation::zero(l.clone(), 1);
    let r = RelRBW::new(l, rbcyb::lie::LieAlgebra::abelian(1), rho, Matrix::zeros(3, 1), GaussRat::zero());
    assert!(r.is_err());
}

#[test]
fn postlie_survivors_give_valid_operators() {
    for a in catalog::enumerate_postlie2() {
        let op = a.as_relrbw().unwrap();
        assert!(op.is_valid());
        assert!(op.bar_lift().is_valid());
        let r = op.r_bar().unwrap();
        assert!(cybe_bracket(&r.algebra, &r).is_zero());
    }
}
