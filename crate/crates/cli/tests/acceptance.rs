//! One pass/fail line per acceptance criterion.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rbcyb::bialgebra::{cre_residual, cybe_bracket, fixed_point_invariance, is_coideal, symmetric_invariance, BialgebraKind};
use rbcyb::catalog::{self, CatalogEntry, Payload};
use rbcyb::groupeval::sample_suite;
use rbcyb::linalg::{kernel, Matrix, Subspace};
use rbcyb::relative::{RelRB0, RelRBW};
use rbcyb::rotabaxter::{
    diagram_check, dual_descendent_check, lift_equivalence, lift_reflection, lifted_fixed_subspace, orthogonal_fixed_checks,
    r_from_quadratic, r_semidirect, rb_reflection_residuals, QuadraticRB, ReflectionVariant,
};
use rbcyb::scalar::q;
use rbcyb::tensor::RMatrix;
use rbcyb::GaussRat;
use rbcyb_cli::{cmd_catalog, cmd_check, cmd_groupeval, Property};

const PRELIE_SURVIVORS: usize = 96;
const POSTLIE_SURVIVORS: usize = 183;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    /// A failure whose cause is identified and checked.
    explained: bool,
    detail: String,
}

impl Outcome {
    fn pass(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { ok, explained: false, detail: detail.into() }
    }
}

fn fixed(tau: &Matrix) -> Subspace {
    kernel(&(tau - &Matrix::identity(tau.rows())))
}

fn quadratic(e: &CatalogEntry) -> (&QuadraticRB, Vec<(Matrix, ReflectionVariant)>) {
    match &e.payload {
        Payload::Quadratic { qrb, reflections } => (qrb, reflections.iter().map(|r| (r.tau.clone(), r.variant)).collect()),
        _ => panic!("{} is not quadratic", e.name),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn weights() -> [GaussRat; 4] {
    [q(1, 1), q(-1, 1), q(2, 1), q(1, 2)]
}

fn criterion1() -> Outcome {
    let (ok, dt) = timed(|| {
        let lam = q(1, 1);
        let e = catalog::sl2_example(&lam).unwrap();
        let (qrb, refl) = quadratic(&e);
        let tau = &refl[0].0;
        let mut ok = qrb.validate().is_valid();
        let d = qrb.rb.descendent().unwrap();
        let z = GaussRat::zero();
        let m1 = q(-1, 1);
        ok &= d.basis_bracket_vec(0, 1) == vec![z.clone(), m1.clone(), z.clone()];
        ok &= d.basis_bracket_vec(0, 2) == vec![z.clone(), z.clone(), m1.clone()];
        ok &= d.basis_bracket_vec(1, 2) == vec![z.clone(); 3];
        let one = Matrix::identity(3);
        let tm = tau - &one;
        let core = &(&tm * &(&qrb.rb.b + &Matrix::scalar(3, &lam))) * &tm;
        ok &= core == (&one - tau).scale(&lam);
        let r = r_from_quadratic(qrb).unwrap();
        ok &= fixed_point_invariance(qrb.algebra(), &r, tau, &fixed(tau)).unwrap().passes();
        let h0 = orthogonal_fixed_checks(qrb, tau).unwrap();
        ok &= h0.descendent_closed && !h0.ideal;
        let x = vec![z.clone(), GaussRat::one(), z.clone()];
        for a in -2..=2 {
            for b in -2..=2 {
                let (a, b) = (GaussRat::from_int(a), GaussRat::from_int(b));
                ok &= d.bracket(&[a.clone(), b.clone(), b], &x) == vec![z.clone(), -&(&lam * &a), z.clone()];
            }
        }
        ok
    });
    Outcome::pass(ok && dt < Duration::from_secs(1), format!("sl2 at weight 1 in {:.3}s", dt.as_secs_f64()))
}

fn cybe_entry(e: &CatalogEntry) -> bool {
    let (qrb, _) = quadratic(e);
    let r = r_from_quadratic(qrb).unwrap();
    let kind = symmetric_invariance(qrb.algebra(), &r).kind;
    let want = if qrb.weight().is_zero() { BialgebraKind::Triangular } else { BialgebraKind::Factorizable };
    cybe_bracket(qrb.algebra(), &r).is_zero() && kind == want
}

fn criterion2() -> Outcome {
    let mut entries = Vec::new();
    for lam in weights() {
        let base = catalog::sl2_example(&lam).unwrap();
        entries.push(catalog::direct_sum_swap(&base).unwrap());
        entries.push(catalog::bowtie_entry(&base).unwrap());
        entries.push(catalog::double_entry(&base).unwrap());
        entries.push(base);
    }
    let sl2r = catalog::sln_realified(2, &q(1, 1)).unwrap();
    entries.push(catalog::direct_sum_swap(&sl2r).unwrap());
    entries.push(catalog::bowtie_entry(&sl2r).unwrap());
    entries.push(catalog::double_entry(&sl2r).unwrap());
    entries.push(sl2r);
    let mut ok = entries.iter().all(cybe_entry);
    let (sl3_ok, dt) = timed(|| cybe_entry(&catalog::sln_realified(3, &q(1, 1)).unwrap()));
    ok &= sl3_ok && dt < Duration::from_secs(30);
    // weight 0 on sl2: the zero operator
    let base = catalog::sl2_example(&q(1, 1)).unwrap();
    let (qrb, _) = quadratic(&base);
    let rb0 = rbcyb::rotabaxter::RBStructure::new(qrb.algebra().clone(), Matrix::zeros(3, 3), GaussRat::zero()).unwrap();
    let q0 = QuadraticRB::new(rb0, qrb.form.gram.clone()).unwrap();
    let r0 = r_from_quadratic(&q0).unwrap();
    ok &= symmetric_invariance(q0.algebra(), &r0).kind == BialgebraKind::Triangular && cybe_bracket(q0.algebra(), &r0).is_zero();
    Outcome::pass(ok, format!("{} quadratic entries and the weight-0 operator; realified sl3 in {:.2}s", entries.len(), dt.as_secs_f64()))
}

/// Automorphism of `sl(2)` swapping `X` and `Y` and negating `H`.
fn chevalley() -> Matrix {
    Matrix::from_i64(&[&[-1, 0, 0], &[0, 0, -1], &[0, -1, 0]])
}

fn criterion3() -> Outcome {
    let mut zero = 0;
    let mut total = 0;
    let mut agree = true;
    let mut relaxed_nonzero = 0;
    let mut relaxed_agree = true;
    let mut tally = |ok: bool, forms: bool| {
        total += 1;
        zero += usize::from(ok);
        agree &= forms;
    };
    let mut quad = Vec::new();
    for lam in weights() {
        let base = catalog::sl2_example(&lam).unwrap();
        quad.push(catalog::direct_sum_swap(&base).unwrap());
        quad.push(catalog::bowtie_entry(&base).unwrap());
        quad.push(catalog::double_entry(&base).unwrap());
        quad.push(base);
    }
    quad.push(catalog::sln_realified(2, &q(1, 1)).unwrap());
    quad.push(catalog::sln_realified(3, &q(1, 1)).unwrap());
    for e in &quad {
        let (qrb, refl) = quadratic(e);
        let r = r_from_quadratic(qrb).unwrap();
        for (tau, variant) in refl {
            let c = cre_residual(qrb.algebra(), &r, &tau).unwrap();
            if variant == ReflectionVariant::RelaxedAd {
                relaxed_nonzero += usize::from(!c.is_zero());
                relaxed_agree &= c.forms_agree();
            } else {
                tally(c.is_zero(), c.forms_agree());
            }
        }
    }
    for e in [catalog::minus_identity_sl2().unwrap()] {
        if let Payload::RotaBaxter { rb, reflections } = &e.payload {
            for (_, tau) in reflections.iter().filter(|(n, _)| n != "minus-one") {
                let eq = lift_equivalence(rb, tau).unwrap();
                tally(eq.cre_vanishes, eq.forms_agree);
            }
        }
    }
    for e in catalog::small_algebra_entries() {
        match &e.payload {
            Payload::PreLie { alg, involutions } => {
                let op = alg.as_relrb0();
                for m in involutions {
                    let c = op.lifted_cre(m, m).unwrap();
                    tally(c.is_zero(), c.forms_agree());
                }
            }
            Payload::PostLie { alg, involutions } => {
                let op = alg.as_relrbw().unwrap();
                for m in involutions {
                    let ch = op.reflection_chain(m, m).unwrap();
                    tally(ch.cre_vanishes, ch.forms_agree);
                }
            }
            _ => {}
        }
    }
    for name in ["relw-sl2", "rel0-zero"] {
        match catalog::by_name(name, &q(1, 1), 2).unwrap().payload {
            Payload::RelativeW { op, pairs } => {
                for p in pairs {
                    let ch = op.reflection_chain(&p.sigma, &p.tau).unwrap();
                    tally(ch.cre_vanishes, ch.forms_agree);
                }
            }
            Payload::Relative0 { op, pairs } => {
                for p in pairs {
                    let c = op.lifted_cre(&p.sigma, &p.tau).unwrap();
                    tally(c.is_zero(), c.forms_agree());
                }
            }
            _ => {}
        }
    }

    // non-reflections: each fails its residuals and gives a nonzero lifted CRE
    let mut counter = 0;
    let mut counter_ok = true;
    let mut probe = |rb: &rbcyb::rotabaxter::RBStructure, tau: &Matrix| {
        let res = rb_reflection_residuals(rb, tau).unwrap();
        let r = r_semidirect(rb).unwrap();
        let c = cre_residual(&r.algebra, &r, &lift_reflection(tau)).unwrap();
        counter += 1;
        counter_ok &= !res.is_empty() && !c.is_zero() && c.forms_agree();
    };
    for lam in [q(1, 1), q(-1, 1), q(2, 1)] {
        let e = catalog::sl2_example(&lam).unwrap();
        probe(&quadratic(&e).0.rb, &chevalley());
    }
    let (relw, pairs) = match catalog::relw_sl2(&q(1, 1)).unwrap().payload {
        Payload::RelativeW { op, pairs } => (op, pairs),
        _ => unreachable!(),
    };
    let ch = relw.reflection_chain(&pairs[0].sigma, &Matrix::identity(3)).unwrap();
    counter += 1;
    counter_ok &= !ch.residuals_vanish && !ch.cre_vanishes && ch.forms_agree;

    Outcome::pass(
        zero == total && agree && relaxed_agree && counter >= 3 && counter_ok,
        format!(
            "{zero}/{total} skew, symmetric and relative reflections give zero CRE; {counter} non-reflections give nonzero CRE; \
             relaxed-ad sl2 transpose has nonzero CRE on {relaxed_nonzero} weights and is outside the claim"
        ),
    )
}

fn relw_coideal(op: &RelRBW, sigma: &Matrix, tau: &Matrix) -> bool {
    let r = op.r_bar().unwrap();
    is_coideal(&r.algebra, &r, &fixed(&RelRBW::lift(sigma, tau)))
}

fn criterion4() -> Outcome {
    let mut coideal = (0, 0);
    let mut closed = (0, 0);
    let count = |c: &mut (usize, usize), ok: bool| {
        c.0 += usize::from(ok);
        c.1 += 1;
    };
    for lam in weights() {
        let base = catalog::sl2_example(&lam).unwrap();
        for e in [catalog::direct_sum_swap(&base).unwrap(), catalog::bowtie_entry(&base).unwrap(), catalog::double_entry(&base).unwrap(), base] {
            let (qrb, refl) = quadratic(&e);
            let r = r_from_quadratic(qrb).unwrap();
            for (tau, _) in refl {
                count(&mut coideal, is_coideal(qrb.algebra(), &r, &fixed(&tau)));
            }
        }
    }
    let mi = catalog::minus_identity_sl2().unwrap();
    if let Payload::RotaBaxter { rb, reflections } = &mi.payload {
        let r = r_semidirect(rb).unwrap();
        for (_, tau) in reflections.iter().filter(|(n, _)| n != "minus-one") {
            count(&mut coideal, is_coideal(&r.algebra, &r, &fixed(&lift_reflection(tau))));
            count(&mut closed, lifted_fixed_subspace(rb, tau).unwrap().closed);
        }
    }
    let mut relw_ops: Vec<(String, RelRBW)> = Vec::new();
    for e in catalog::small_algebra_entries() {
        match &e.payload {
            Payload::PreLie { alg, involutions } => {
                let op: RelRB0 = alg.as_relrb0();
                for m in involutions {
                    count(&mut coideal, op.lifted_coideal(m, m));
                    count(&mut closed, op.fixed_subspace(m, m).unwrap().1);
                }
            }
            Payload::PostLie { alg, involutions } => {
                let op = alg.as_relrbw().unwrap();
                for m in involutions {
                    count(&mut coideal, relw_coideal(&op, m, m));
                }
                relw_ops.push((e.name.clone(), op));
            }
            _ => {}
        }
    }
    for name in ["relw-sl2", "relw-zero"] {
        if let Payload::RelativeW { op, pairs } = catalog::by_name(name, &q(1, 1), 2).unwrap().payload {
            for p in &pairs {
                count(&mut coideal, relw_coideal(&op, &p.sigma, &p.tau));
            }
            relw_ops.push((name.to_string(), op));
        }
    }
    for lam in [q(-1, 1), q(2, 1)] {
        if let Payload::RelativeW { op, .. } = catalog::relw_sl2(&lam).unwrap().payload {
            relw_ops.push((format!("relw-sl2 weight {lam}"), op));
        }
    }
    let mut literal = 0;
    let mut structure = 0;
    let mut explained = true;
    let mut first_fail = None;
    for (name, op) in &relw_ops {
        let rep = op.sub_bialgebra_check().unwrap();
        if rep.all_hold() {
            literal += 1;
        } else if first_fail.is_none() {
            first_fail = Some(name.clone());
        }
        structure += usize::from(rep.structure_holds());
        // the only failing piece is the quotient bracket, and the correction term accounts for it
        explained &= rep.subalgebra && rep.annihilator_ideal && rep.structure_holds();
    }
    let n = relw_ops.len();
    let side_ok = coideal.0 == coideal.1 && closed.0 == closed.1;
    let ok = side_ok && literal == n;
    let detail = format!(
        "coideal {}/{}, fixed-subspace closure {}/{}, sub-bialgebra with the stated quotient bracket {literal}/{n} \
         (first failure {}), with the induced quotient bracket {structure}/{n}",
        coideal.0,
        coideal.1,
        closed.0,
        closed.1,
        first_fail.as_deref().unwrap_or("none"),
    );
    Outcome { ok, explained: side_ok && explained && structure == n, detail }
}

fn criterion5() -> Outcome {
    let mut ok = true;
    for lam in [q(1, 1), q(-1, 1), q(2, 1)] {
        let e = catalog::sl2_example(&lam).unwrap();
        let rep = dual_descendent_check(&quadratic(&e).0.rb).unwrap();
        ok &= rep.scaling_is_iso && rep.all_hold();
    }
    let pre = catalog::enumerate_prelie2();
    let mut w0 = pre.iter().filter(|a| a.as_relrb0().dual_semidirect_check().equal).count();
    for d in 1..=3 {
        if let Payload::Relative0 { op, .. } = catalog::rel0_zero(&catalog::sl2_algebra(), d).unwrap().payload {
            w0 += usize::from(op.dual_semidirect_check().equal);
        }
    }
    ok &= w0 == pre.len() + 3;
    let e = catalog::sl2_example(&q(1, 1)).unwrap();
    let diag = diagram_check(quadratic(&e).0).unwrap();
    ok &= diag.psi_iso && diag.phi_iso && diag.all_hold();
    Outcome::pass(ok, format!("scaling iso at weights 1, -1, 2; weight-0 dual {w0}/{}; sl2 diagram maps isomorphisms", pre.len() + 3))
}

fn criterion6() -> Outcome {
    let (pre, post) = (catalog::enumerate_prelie2(), catalog::enumerate_postlie2());
    let mut ok = pre.len() == PRELIE_SURVIVORS && post.len() == POSTLIE_SURVIVORS;
    for a in &pre {
        let r = a.as_relrb0().r_t();
        ok &= a.residual().is_empty() && cybe_bracket(&r.algebra, &r).is_zero();
    }
    for a in &post {
        let op = a.as_relrbw().unwrap();
        let r: RMatrix = op.r_bar().unwrap();
        ok &= a.residuals().is_empty() && op.is_valid() && cybe_bracket(&r.algebra, &r).is_zero();
    }
    Outcome::pass(ok, format!("{} pre-Lie and {} post-Lie survivors, axioms and CYBE on each", pre.len(), post.len()))
}

fn criterion7() -> Outcome {
    let e = catalog::sl2_example(&q(1, 1)).unwrap();
    let qrb = quadratic(&e).0.clone();
    let ((first, second), dt) = timed(|| {
        let a = sample_suite(&qrb, None, 100, 7).unwrap();
        let b = sample_suite(&qrb, None, 100, 7).unwrap();
        (a, b)
    });
    let render = |s: &[rbcyb::groupeval::SampleReport]| s.iter().map(|r| r.to_string()).collect::<String>();
    let mut ok = render(&first) == render(&second) && dt < Duration::from_secs(5);
    let limits = [("skew-symmetry", 1e-10), ("identity", 1e-12), ("multiplicativity", 1e-8), ("linear-part", 1e-10)];
    let mut worst = Vec::new();
    for (name, tol) in limits {
        let v = first.iter().filter_map(|s| s.get(name)).fold(0.0f64, f64::max);
        ok &= first.iter().any(|s| s.get(name).is_some()) && v < tol;
        worst.push(format!("{name} {v:.1e}"));
    }
    let doc = cmd_catalog("sl2", &q(1, 1), 2).unwrap();
    let r1 = cmd_groupeval(&doc, 100, 7).unwrap().render_text(false);
    let r2 = cmd_groupeval(&doc, 100, 7).unwrap().render_text(false);
    ok &= r1 == r2;
    Outcome::pass(ok, format!("{}; two runs in {:.2}s, identical reports", worst.join(", "), dt.as_secs_f64()))
}

fn criterion8() -> Outcome {
    let doc = cmd_catalog("sl2", &q(1, 1), 2).unwrap();
    let rep = cmd_check(&doc, Property::Cybe, &[]).unwrap();
    let rec = rep.records.iter().find(|r| r.anchor == "reference-normalization");
    let ok = rec.is_some_and(|r| {
        r.passed()
            && r.witnesses.iter().any(|w| w == "computed r = 1/16 e0⊗e0 + 1/4 e1⊗e2")
            && r.witnesses.iter().any(|w| w == "reference r = 1/8 e0⊗e0 + 1/2 e1⊗e2")
            && r.witnesses.iter().any(|w| w == "reference = 2 · computed")
    });
    let detail = rec.map(|r| r.witnesses.join("; ")).unwrap_or_else(|| "no normalization record".into());
    Outcome::pass(ok, detail)
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("sl2 example regression", criterion1),
        ("CYBE exactness", criterion2),
        ("CRE exactness", criterion3),
        ("coideal and sub-bialgebra suite", criterion4),
        ("structural isomorphisms", criterion5),
        ("brute-force enumeration", criterion6),
        ("float sampling suite", criterion7),
        ("normalization surfaced", criterion8),
    ];
    let mut unexpected = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let o = f();
        let status = match (o.ok, o.explained) {
            (true, _) => "PASS",
            (false, true) => "FAIL (explained)",
            (false, false) => "FAIL",
        };
        println!("criterion {} {title}: {status}: {}", i + 1, o.detail);
        unexpected += usize::from(!o.ok && !o.explained);
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
