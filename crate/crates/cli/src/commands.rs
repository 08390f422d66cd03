//! Command implementations shared by the binary and the tests.

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use num_traits::{One, Zero};
use rbcyb::bialgebra::{cre_residual, cybe_bracket, is_coideal, is_coideal_by_containment, symmetric_invariance, BialgebraKind};
use rbcyb::groupeval::{sample_semidirect, sample_suite, SampleReport, SemidirectData};
use rbcyb::linalg::{kernel, Matrix};
use rbcyb::relative::{RelRB0, RelRBW};
use rbcyb::rotabaxter::{
    construct_bowtie_qrb, construct_direct_sum_qrb, construct_double_qrb, dual_descendent_check, lift_equivalence,
    lift_reflection, lifted_fixed_subspace, orthogonal_fixed_checks, r_from_quadratic, r_semidirect, rb_reflection_residuals,
    reflection_residuals, semidirect_qrb, QuadraticRB, RBStructure, ReflectionVariant,
};
use rbcyb::tensor::{RMatrix, Tensor2};
use rbcyb::GaussRat;

use crate::doc::{Document, Object};
use crate::export;
use crate::report::{Record, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Cybe,
    Cre,
    Coideal,
    Quadratic,
    Reflection,
    H0,
    LemmaIso,
    PropMain,
    Weight0Dual,
}

impl Property {
    pub fn id(self) -> &'static str {
        match self {
            Property::Cybe => "cybe",
            Property::Cre => "cre",
            Property::Coideal => "coideal",
            Property::Quadratic => "quadratic",
            Property::Reflection => "reflection",
            Property::H0 => "h0",
            Property::LemmaIso => "lemma-iso",
            Property::PropMain => "prop-main",
            Property::Weight0Dual => "weight0-dual",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construct {
    Descendent,
    Semidirect,
    Bowtie,
    Double,
    Directsum,
    BarLift,
}

// Formatting

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn fmt_vec(v: &[GaussRat]) -> String {
    let cells: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", cells.join(", "))
}

pub fn fmt_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| fmt_vec(m.row(i))).collect();
    format!("[{}]", rows.join(", "))
}

/// `c e_i⊗e_j + ...` over the nonzero entries.
pub fn fmt_tensor(t: &Tensor2) -> String {
    let terms: Vec<String> = t.0.nonzeros().into_iter().map(|(i, j, c)| format!("{} e{i}⊗e{j}", coefficient(&c))).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn coefficient(c: &GaussRat) -> String {
    let s = c.to_string();
    if s.contains(['+', 'i']) && !s.starts_with('(') {
        format!("({s})")
    } else {
        s
    }
}

/// `c` with `b = c·a`, if one exists and `a` is nonzero.
pub fn proportionality(a: &Matrix, b: &Matrix) -> Option<GaussRat> {
    let (i, j, pivot) = a.nonzeros().into_iter().next()?;
    let c = b[(i, j)].checked_div(&pivot).ok()?;
    (&a.scale(&c) == b).then_some(c)
}

fn guarded(check: &str, object: &str, anchor: &'static str, f: impl FnOnce() -> Result<Record>) -> Record {
    f().unwrap_or_else(|e| Record::new(check, object, anchor, false, format!("error: {e:#}")))
}

// Reflections

enum Target {
    Quadratic(QuadraticRB),
    Rb(RBStructure),
    Rel0(RelRB0),
    RelW(RelRBW),
}

struct Refl {
    name: String,
    target: Target,
    map: Matrix,
    source: Option<Matrix>,
    variant: Option<ReflectionVariant>,
}

fn target_of(doc: &Document, name: &str) -> Result<Target> {
    let o = doc.get(name).ok_or_else(|| anyhow!("unknown object `{name}`"))?;
    Ok(match &o.object {
        Object::QuadraticRb { .. } => Target::Quadratic(doc.quadratic(name)?),
        Object::Rb { .. } => Target::Rb(doc.rb(name)?),
        Object::RelativeRb0 { .. } => Target::Rel0(doc.relative0(name)?),
        Object::RelativeRbw { .. } => Target::RelW(doc.relativew(name)?),
        Object::PreLie { .. } => Target::Rel0(doc.prelie(name)?.as_relrb0()),
        Object::PostLie { .. } => Target::RelW(doc.postlie(name)?.as_relrbw()?),
        other => bail!("`{name}` is a {}, not an operator", other.kind()),
    })
}

fn reflection(doc: &Document, name: &str) -> Result<Refl> {
    match doc.get(name).map(|o| &o.object) {
        Some(Object::Reflection { target, map, source_map, variant }) => Ok(Refl {
            name: name.into(),
            target: target_of(doc, target)?,
            map: doc.map(map)?,
            source: source_map.as_deref().map(|s| doc.map(s)).transpose()?,
            variant: *variant,
        }),
        _ => bail!("`{name}` is not a reflection"),
    }
}

fn source(r: &Refl) -> Result<&Matrix> {
    r.source.as_ref().ok_or_else(|| anyhow!("relative reflection `{}` has no source_map", r.name))
}

/// Selected names, or every object of the given kinds in document order.
fn select(doc: &Document, names: &[String], kinds: &[&str]) -> Result<Vec<String>> {
    if names.is_empty() {
        return Ok(doc.objects.iter().filter(|o| kinds.contains(&o.object.kind())).map(|o| o.name.clone()).collect());
    }
    let mut out = Vec::new();
    for n in names {
        let o = doc.get(n).ok_or_else(|| anyhow!("unknown object `{n}`"))?;
        if kinds.contains(&o.object.kind()) {
            out.push(n.clone());
        }
    }
    Ok(out)
}

// CYBE

fn cybe_record(object: &str, anchor: &'static str, r: &RMatrix, weight: Option<&GaussRat>) -> Record {
    let nz = cybe_bracket(&r.algebra, r).nonzeros().len();
    let kind = symmetric_invariance(&r.algebra, r).kind;
    let kind_ok = match weight {
        Some(w) if w.is_zero() => kind == BialgebraKind::Triangular,
        Some(_) => kind == BialgebraKind::Factorizable,
        None => true,
    };
    Record::new("cybe", object, anchor, nz == 0 && kind_ok, format!("{nz} nonzero entries in [r,r]"))
        .witness(format!("r = {}", fmt_tensor(&r.tensor)))
        .witness(format!("kind {}", format!("{kind:?}").to_lowercase()))
}

fn check_cybe(doc: &Document, names: &[String], report: &mut Report) -> Result<()> {
    let kinds = ["quadratic_rb", "rb", "relative_rb0", "relative_rbw", "prelie", "postlie", "tensor"];
    for name in select(doc, names, &kinds)? {
        let kind = doc.get(&name).expect("selected").object.kind();
        let rec = match kind {
            "quadratic_rb" => guarded("cybe", &name, "cybe-from-quadratic-rb", || {
                let q = doc.quadratic(&name)?;
                Ok(cybe_record(&name, "cybe-from-quadratic-rb", &r_from_quadratic(&q)?, Some(q.weight())))
            }),
            "rb" => guarded("cybe", &name, "cybe-from-semidirect", || {
                Ok(cybe_record(&name, "cybe-from-semidirect", &r_semidirect(&doc.rb(&name)?)?, None))
            }),
            "relative_rb0" | "prelie" => guarded("cybe", &name, "cybe-from-relative", || {
                let op = if kind == "prelie" { doc.prelie(&name)?.as_relrb0() } else { doc.relative0(&name)? };
                Ok(cybe_record(&name, "cybe-from-relative", &op.r_t(), None))
            }),
            "relative_rbw" | "postlie" => guarded("cybe", &name, "cybe-from-relative", || {
                let op = if kind == "postlie" { doc.postlie(&name)?.as_relrbw()? } else { doc.relativew(&name)? };
                Ok(cybe_record(&name, "cybe-from-relative", &op.r_bar()?, None))
            }),
            _ => guarded("cybe", &name, "cybe-reference", || Ok(cybe_record(&name, "cybe-reference", &doc.tensor(&name)?, None))),
        };
        report.push(rec);
        if kind == "tensor" {
            normalization_records(doc, &name, report);
        }
    }
    Ok(())
}

/// Compares a reference tensor with the r-matrix of every quadratic operator on the same algebra.
fn normalization_records(doc: &Document, tensor: &str, report: &mut Report) {
    let Some(Object::Tensor { algebra, .. }) = doc.get(tensor).map(|o| &o.object) else { return };
    for qname in doc.names_of_kind("quadratic_rb") {
        let same = match doc.get(&qname).map(|o| &o.object) {
            Some(Object::QuadraticRb { rb, .. }) => {
                matches!(doc.get(rb).map(|o| &o.object), Some(Object::Rb { algebra: a, .. }) if a == algebra)
            }
            _ => false,
        };
        if !same {
            continue;
        }
        let object = format!("{qname}/{tensor}");
        report.push(guarded("cybe", &object, "reference-normalization", || {
            let q = doc.quadratic(&qname)?;
            let computed = r_from_quadratic(&q)?;
            let reference = doc.tensor(tensor)?;
            let c_ok = cybe_bracket(&computed.algebra, &computed).is_zero();
            let r_ok = cybe_bracket(&reference.algebra, &reference).is_zero();
            let relation = match proportionality(&computed.tensor.0, &reference.tensor.0) {
                Some(c) if c.is_one() => "reference equals computed".to_string(),
                Some(c) => format!("reference = {} · computed", coefficient(&c)),
                None => "reference is not a multiple of computed".to_string(),
            };
            Ok(Record::new("cybe", &object, "reference-normalization", c_ok && r_ok, format!("computed solves CYBE {}, reference solves CYBE {}", yn(c_ok), yn(r_ok)))
                .witness(format!("computed r = {}", fmt_tensor(&computed.tensor)))
                .witness(format!("reference r = {}", fmt_tensor(&reference.tensor)))
                .witness(relation))
        }));
    }
}

// Reflection-based checks

fn reflection_names(doc: &Document, names: &[String]) -> Result<Vec<String>> {
    select(doc, names, &["reflection"])
}

fn check_cre(doc: &Document, names: &[String], report: &mut Report) -> Result<()> {
    for name in reflection_names(doc, names)? {
        let anchor = |r: &Refl| match r.target {
            Target::Quadratic(_) => "cre-from-reflection",
            Target::Rb(_) => "cre-from-rb-reflection",
            _ => "cre-from-relative-reflection",
        };
        report.push(guarded("cre", &name, "cre-from-reflection", || {
            let r = reflection(doc, &name)?;
            let anchor = anchor(&r);
            let (cre, extra) = match &r.target {
                Target::Quadratic(q) => {
                    let rm = r_from_quadratic(q)?;
                    let v = r.variant.map_or("none".to_string(), |v| v.tag().to_string());
                    (cre_residual(q.algebra(), &rm, &r.map)?, format!("declared variant {v}"))
                }
                Target::Rb(rb) => {
                    let eq = lift_equivalence(rb, &r.map)?;
                    let rm = r_semidirect(rb)?;
                    (cre_residual(&rm.algebra, &rm, &lift_reflection(&r.map))?, format!("operator residuals vanish {}", yn(eq.residuals_vanish)))
                }
                Target::Rel0(op) => {
                    let res = op.reflection_residuals(&r.map, source(&r)?)?;
                    (op.lifted_cre(&r.map, source(&r)?)?, format!("relative residuals vanish {}", yn(res.is_empty())))
                }
                Target::RelW(op) => {
                    let chain = op.reflection_chain(&r.map, source(&r)?)?;
                    let rm = op.r_bar()?;
                    let lift = RelRBW::lift(&r.map, source(&r)?);
                    (
                        cre_residual(&rm.algebra, &rm, &lift)?,
                        format!(
                            "relative residuals vanish {}, lifted operator residuals vanish {}",
                            yn(chain.residuals_vanish),
                            yn(chain.rb_reflection_vanishes)
                        ),
                    )
                }
            };
            let nz = cre.tensor.0.nonzeros().len();
            Ok(Record::new("cre", &name, anchor, cre.is_zero() && cre.forms_agree(), format!("{nz} nonzero entries in C_τ(r)"))
                .witness(format!("tensor and operator forms agree {}", yn(cre.forms_agree())))
                .witness(extra))
        }));
    }
    Ok(())
}

fn coideal_record(name: &str, r: &RMatrix, tau: &Matrix) -> Record {
    let h = kernel(&(tau - &Matrix::identity(tau.rows())));
    let direct = is_coideal(&r.algebra, r, &h);
    let dual = is_coideal_by_containment(&r.algebra, r, &h);
    let sub = r.algebra.is_subalgebra(&h);
    Record::new("coideal", name, "coideal-fixed-points", direct && dual && sub, format!("fixed space of dimension {}", h.dim()))
        .witness(format!("subalgebra {}", yn(sub)))
        .witness(format!("cobracket lands in g⊗h + h⊗g {}", yn(direct)))
        .witness(format!("annihilator closed under the dual bracket {}", yn(dual)))
}

fn check_coideal(doc: &Document, names: &[String], report: &mut Report) -> Result<()> {
    for name in reflection_names(doc, names)? {
        report.push(guarded("coideal", &name, "coideal-fixed-points", || {
            let r = reflection(doc, &name)?;
            Ok(match &r.target {
                Target::Quadratic(q) => coideal_record(&name, &r_from_quadratic(q)?, &r.map),
                Target::Rb(rb) => coideal_record(&name, &r_semidirect(rb)?, &lift_reflection(&r.map)),
                Target::Rel0(op) => coideal_record(&name, &op.r_t(), &RelRB0::lift(&r.map, source(&r)?)),
                Target::RelW(op) => coideal_record(&name, &op.r_bar()?, &RelRBW::lift(&r.map, source(&r)?)),
            })
        }));
        let r = match reflection(doc, &name) {
            Ok(r) => r,
            Err(_) => continue,
        };
        match &r.target {
            Target::Rb(rb) => report.push(guarded("coideal", &name, "lifted-fixed-subalgebra", || {
                let l = lifted_fixed_subspace(rb, &r.map)?;
                Ok(Record::new("coideal", &name, "lifted-fixed-subalgebra", l.closed && l.operator_stable, format!("subspace of dimension {}", l.subspace.dim()))
                    .witness(format!("closed {}", yn(l.closed)))
                    .witness(format!("operator stable {}", yn(l.operator_stable))))
            })),
            Target::Rel0(op) => report.push(guarded("coideal", &name, "lifted-fixed-subalgebra", || {
                let (w, closed) = op.fixed_subspace(&r.map, source(&r)?)?;
                Ok(Record::new("coideal", &name, "lifted-fixed-subalgebra", closed, format!("subspace of dimension {}", w.dim())))
            })),
            _ => {}
        }
    }
    Ok(())
}

fn check_reflection(doc: &Document, names: &[String], report: &mut Report) -> Result<()> {
    for name in reflection_names(doc, names)? {
        report.push(guarded("reflection", &name, "reflection-variants", || {
            let r = reflection(doc, &name)?;
            Ok(match &r.target {
                Target::Quadratic(q) => {
                    let res = reflection_residuals(q, &r.map)?;
                    let all = [ReflectionVariant::Skew, ReflectionVariant::Symmetric, ReflectionVariant::RelaxedAd];
                    let ok = match r.variant {
                        Some(v) => res.holds(v),
                        None => all.iter().any(|v| res.holds(*v)),
                    };
                    let declared = r.variant.map_or("none", |v| v.tag());
                    Record::new("reflection", &name, "reflection-variants", ok, format!("declared variant {declared}"))
                        .witness(format!("skew core zero {}, pairing zero {}, holds {}", yn(res.skew_core.is_zero()), yn(res.skew_pairing.is_zero()), yn(res.holds(ReflectionVariant::Skew))))
                        .witness(format!(
                            "symmetric core zero {}, pairing zero {}, holds {}",
                            yn(res.symmetric_core.is_zero()),
                            yn(res.symmetric_pairing.is_zero()),
                            yn(res.holds(ReflectionVariant::Symmetric))
                        ))
                        .witness(format!(
                            "relaxed-ad commutator failures skew {}, symmetric {}, holds {}",
                            res.relaxed_skew.len(),
                            res.relaxed_symmetric.len(),
                            yn(res.holds(ReflectionVariant::RelaxedAd))
                        ))
                        .witness(format!("symmetric core {}", fmt_matrix(&res.symmetric_core)))
                }
                Target::Rb(rb) => {
                    let res = rb_reflection_residuals(rb, &r.map)?;
                    Record::new("reflection", &name, "rb-reflection", res.is_empty(), format!("{} failing bracket pairs", res.homomorphism.len()))
                        .witness(format!("involution residual zero {}", yn(res.involution.is_zero())))
                        .witness(format!("operator residual {}", fmt_matrix(&res.compatibility)))
                }
                Target::Rel0(op) => {
                    let res = op.reflection_residuals(&r.map, source(&r)?)?;
                    Record::new("reflection", &name, "relative-reflection", res.is_empty(), format!("{} failing module pairs", res.module.len()))
                        .witness(format!("operator residual {}", fmt_matrix(&res.operator)))
                }
                Target::RelW(op) => {
                    let res = op.reflection_residuals(&r.map, source(&r)?)?;
                    Record::new("reflection", &name, "relative-reflection", res.is_empty(), format!("{} failing module pairs", res.module.len()))
                        .witness(format!("operator residual {}", fmt_matrix(&res.operator)))
                }
            })
        }));
    }
    Ok(())
}

fn check_h0(doc: &Document, names: &[String], report: &mut Report) -> Result<()> {
    for name in reflection_names(doc, names)? {
        let Ok(r) = reflection(doc, &name) else {
            report.push(Record::new("h0", &name, "orthogonal-fixed-subalgebra", false, "unresolved reflection"));
            continue;
        };
        let Target::Quadratic(q) = &r.target else { continue };
        report.push(guarded("h0", &name, "orthogonal-fixed-subalgebra", || {
            let c = orthogonal_fixed_checks(q, &r.map)?;
            let mut rec = Record::new(
                "h0",
                &name,
                "orthogonal-fixed-subalgebra",
                c.descendent_closed,
                format!("dim h {}, dim h0 {}", c.spaces.h.dim(), c.spaces.h0.dim()),
            )
            .witness(format!("descendent subalgebra {}", yn(c.descendent_closed)))
            .witness(format!("operator stable {}", yn(c.b_stable)))
            .witness(format!("closed in the bowtie algebra {}", yn(c.bowtie_closed)))
            .witness(format!("ideal {}", yn(c.ideal)));
            if let Some((a, b, v)) = &c.non_ideal_witness {
                rec = rec.witness(format!("not ideal: [{}, {}]_B = {} lies outside h0", fmt_vec(a), fmt_vec(b), fmt_vec(v)));
            }
            Ok(rec)
        }));
    }
    Ok(())
}

fn check_quadratic(doc: &Document, names: &[String], report: &mut Report) -> Result<()> {
    for name in select(doc, names, &["quadratic_rb"])? {
        report.push(guarded("quadratic", &name, "quadratic-rb", || {
            let v = doc.quadratic(&name)?.validate();
            Ok(Record::new("quadratic", &name, "quadratic-rb", v.is_valid(), format!("{} Rota-Baxter failures", v.rb.len()))
                .witness(format!("symmetric {}, nondegenerate {}, invariant {}", yn(v.form.symmetric()), yn(v.form.nondegenerate()), yn(v.form.invariant())))
                .witness(format!("compatibility {}", fmt_matrix(&v.compatibility))))
        }));
    }
    Ok(())
}

fn check_lemma_iso(doc: &Document, names: &[String], report: &mut Report) -> Result<()> {
    for name in select(doc, names, &["rb", "quadratic_rb"])? {
        report.push(guarded("lemma-iso", &name, "dual-descendent-iso", || {
            let rb = match doc.get(&name).map(|o| &o.object) {
                Some(Object::QuadraticRb { rb, .. }) => doc.rb(rb)?,
                _ => doc.rb(&name)?,
            };
            let c = dual_descendent_check(&rb)?;
            Ok(Record::new("lemma-iso", &name, "dual-descendent-iso", c.all_hold(), format!("scaling map is an isomorphism {}", yn(c.scaling_is_iso)))
                .witness(format!("representation valid {}", yn(c.rho_valid)))
                .witness(format!("descendent of the lift is the semidirect product {}", yn(c.descendent_is_semidirect)))
                .witness(format!("transported structure constants match {}", yn(c.constants_match))))
        }));
    }
    Ok(())
}

fn check_prop_main(doc: &Document, names: &[String], report: &mut Report) -> Result<()> {
    for name in select(doc, names, &["relative_rbw", "postlie"])? {
        let op = || -> Result<RelRBW> {
            Ok(match doc.get(&name).map(|o| &o.object) {
                Some(Object::PostLie { .. }) => doc.postlie(&name)?.as_relrbw()?,
                _ => doc.relativew(&name)?,
            })
        };
        report.push(guarded("prop-main", &name, "relative-dual-brackets", || {
            let e = op()?.explicit_dual_check()?;
            Ok(Record::new("prop-main", &name, "relative-dual-brackets", e.all_hold(), format!("pairing formula matches {}", yn(e.pairing_matches)))
                .witness(format!("module family matches {}", yn(e.module_family_matches)))
                .witness(format!("mixed family matches {}", yn(e.mixed_family_matches)))
                .witness(format!("dual family vanishes {}", yn(e.dual_family_zero))))
        }));
        report.push(guarded("prop-main", &name, "relative-sub-bialgebra", || {
            let s = op()?.sub_bialgebra_check()?;
            Ok(Record::new("prop-main", &name, "relative-sub-bialgebra", s.all_hold(), format!("stated quotient bracket matches {}", yn(s.quotient_matches)))
                .witness(format!("subalgebra {}", yn(s.subalgebra)))
                .witness(format!("annihilator is an ideal of the dual {}", yn(s.annihilator_ideal)))
                .witness(format!("stated quotient bracket is Lie {}", yn(s.quotient_is_lie)))
                .witness(format!(
                    "quotient with the correction (1/λ)(⟨ξ,Tρ(·)v⟩ - ⟨η,Tρ(·)u⟩) matches {}, is Lie {}",
                    yn(s.full_quotient_matches),
                    yn(s.full_quotient_is_lie)
                )))
        }));
    }
    Ok(())
}

fn check_weight0(doc: &Document, names: &[String], report: &mut Report) -> Result<()> {
    for name in select(doc, names, &["relative_rb0", "prelie"])? {
        report.push(guarded("weight0-dual", &name, "weight-zero-dual", || {
            let op = match doc.get(&name).map(|o| &o.object) {
                Some(Object::PreLie { .. }) => doc.prelie(&name)?.as_relrb0(),
                _ => doc.relative0(&name)?,
            };
            let c = op.dual_semidirect_check();
            Ok(Record::new("weight0-dual", &name, "weight-zero-dual", c.equal && c.skew && c.cybe_zero, format!("dual equals V_T ⋉ g* {}", yn(c.equal)))
                .witness(format!("r skew {}", yn(c.skew)))
                .witness(format!("CYBE zero {}", yn(c.cybe_zero)))
                .witness(format!("equal after negating g* {}", yn(c.equal_up_to_sign))))
        }));
    }
    Ok(())
}

pub fn cmd_check(doc: &Document, property: Property, names: &[String]) -> Result<Report> {
    for n in names {
        if doc.get(n).is_none() {
            bail!("unknown object `{n}`");
        }
    }
    let mut report = Report::new(format!("check {}", property.id()));
    match property {
        Property::Cybe => check_cybe(doc, names, &mut report)?,
        Property::Cre => check_cre(doc, names, &mut report)?,
        Property::Coideal => check_coideal(doc, names, &mut report)?,
        Property::Quadratic => check_quadratic(doc, names, &mut report)?,
        Property::Reflection => check_reflection(doc, names, &mut report)?,
        Property::H0 => check_h0(doc, names, &mut report)?,
        Property::LemmaIso => check_lemma_iso(doc, names, &mut report)?,
        Property::PropMain => check_prop_main(doc, names, &mut report)?,
        Property::Weight0Dual => check_weight0(doc, names, &mut report)?,
    }
    Ok(report)
}

// Validation

pub fn cmd_validate(doc: &Document) -> Result<Report> {
    let mut report = Report::new("validate");
    for o in &doc.objects {
        let name = o.name.as_str();
        let rec = match &o.object {
            Object::LieAlgebra { .. } => guarded("validate", name, "lie-axioms", || {
                let v = doc.lie(name)?.validate();
                Ok(Record::new(
                    "validate",
                    name,
                    "lie-axioms",
                    v.is_valid(),
                    format!("{} antisymmetry and {} Jacobi failures", v.antisymmetry.len(), v.jacobi.len()),
                ))
            }),
            Object::BilinearForm { .. } => guarded("validate", name, "invariant-form", || {
                let c = doc.form(name)?.checks();
                Ok(Record::new("validate", name, "invariant-form", c.all_hold(), format!("symmetric {}, nondegenerate {}, invariant {}", yn(c.symmetric()), yn(c.nondegenerate()), yn(c.invariant()))))
            }),
            Object::Representation { .. } => guarded("validate", name, "representation-axioms", || {
                let v = doc.representation(name)?.validate();
                Ok(Record::new("validate", name, "representation-axioms", v.is_empty(), format!("{} failing pairs", v.len())))
            }),
            Object::Rb { .. } => guarded("validate", name, "rb-identity", || {
                let r = doc.rb(name)?.residual();
                Ok(Record::new("validate", name, "rb-identity", r.is_empty(), format!("{} failing pairs", r.len())))
            }),
            Object::QuadraticRb { .. } => {
                let mut sub = Report::new("");
                check_quadratic(doc, &[name.to_string()], &mut sub)?;
                sub.records.remove(0)
            }
            Object::RelativeRb0 { .. } => guarded("validate", name, "relative-rb-identity", || {
                let r = doc.relative0(name)?.residual();
                Ok(Record::new("validate", name, "relative-rb-identity", r.is_empty(), format!("{} failing pairs", r.len())))
            }),
            Object::RelativeRbw { .. } => guarded("validate", name, "relative-rb-identity", || {
                let r = doc.relativew(name)?.residual();
                Ok(Record::new("validate", name, "relative-rb-identity", r.is_empty(), format!("{} failing pairs", r.len())))
            }),
            Object::PreLie { .. } => guarded("validate", name, "prelie-axioms", || {
                let r = doc.prelie(name)?.residual();
                Ok(Record::new("validate", name, "prelie-axioms", r.is_empty(), format!("{} associator failures", r.len())))
            }),
            Object::PostLie { .. } => guarded("validate", name, "postlie-axioms", || {
                let r = doc.postlie(name)?.residuals();
                Ok(Record::new("validate", name, "postlie-axioms", r.is_empty(), format!("{} derivation and {} identity failures", r.derivation.len(), r.action.len())))
            }),
            Object::Reflection { .. } => {
                let mut sub = Report::new("");
                check_reflection(doc, &[name.to_string()], &mut sub)?;
                sub.records.remove(0)
            }
            Object::LinearMap { .. } | Object::Tensor { .. } => continue,
        };
        report.push(Record { check: "validate".into(), ..rec });
    }
    Ok(report)
}

// Constructions

fn first_of(doc: &Document, kind: &str, name: Option<&str>) -> Result<String> {
    match name {
        Some(n) => Ok(n.to_string()),
        None => doc.names_of_kind(kind).into_iter().next().ok_or_else(|| anyhow!("document has no {kind}")),
    }
}

/// Builds a new self-contained document holding the constructed objects.
pub fn cmd_construct(doc: &Document, what: Construct, name: Option<&str>) -> Result<Document> {
    let mut out = Document::default();
    match what {
        Construct::Descendent => {
            let n = first_of(doc, "rb", name)?;
            let rb = doc.rb(&n)?;
            export::add_lie(&mut out, &format!("{n}-descendent"), &rb.descendent()?);
        }
        Construct::Semidirect => {
            let n = first_of(doc, "rb", name)?;
            let q = semidirect_qrb(&doc.rb(&n)?)?;
            export::add_quadratic(&mut out, "", &q);
            for rn in doc.names_of_kind("reflection") {
                if let Ok(Refl { target: Target::Rb(_), map, .. }) = reflection(doc, &rn) {
                    if matches!(doc.get(&rn).map(|o| &o.object), Some(Object::Reflection { target, .. }) if *target == n) {
                        export::add_reflection(&mut out, "", "q", &rn, &lift_reflection(&map), None);
                    }
                }
            }
        }
        Construct::Directsum | Construct::Bowtie => {
            let n = first_of(doc, "quadratic_rb", name)?;
            let q = doc.quadratic(&n)?;
            let (qrb, tau) = if what == Construct::Directsum { construct_direct_sum_qrb(&q)? } else { construct_bowtie_qrb(&q)? };
            let target = export::add_quadratic(&mut out, "", &qrb);
            export::add_reflection(&mut out, "", &target, "swap-like", &tau, Some(ReflectionVariant::Skew));
        }
        Construct::Double => {
            let n = first_of(doc, "quadratic_rb", name)?;
            let d = construct_double_qrb(&doc.quadratic(&n)?)?;
            let target = export::add_quadratic(&mut out, "", &d.qrb);
            export::add_reflection(&mut out, "", &target, "swap-like", &d.tau, Some(ReflectionVariant::Skew));
            export::add_map(&mut out, "psi", &d.psi);
            export::add_map(&mut out, "phi", &d.phi);
            export::add_map(&mut out, "kappa", &d.kappa);
        }
        Construct::BarLift => {
            let n = first_of(doc, "relative_rbw", name)?;
            let rb = doc.relativew(&n).with_context(|| format!("reading `{n}`"))?.bar_lift();
            export::add_rb(&mut out, "", &rb);
        }
    }
    out.check()?;
    Ok(out)
}

// Sampling

fn sample_records(object: &str, anchor: &'static str, s: &SampleReport, report: &mut Report) {
    let header = format!("formula {} frame left-trivialized samples {} seed {}", s.formula, s.samples, s.seed);
    if s.residuals.is_empty() {
        report.push(Record::new("groupeval", object, anchor, true, "no samples drawn").witness(header));
        return;
    }
    for r in &s.residuals {
        report.push(
            Record::new("groupeval", &format!("{object}/{}", r.name), anchor, r.passes(), format!("{:.6e} tol {:.0e}", r.value, r.tolerance))
                .witness(header.clone()),
        );
    }
}

pub fn cmd_groupeval(doc: &Document, samples: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new(format!("groupeval samples {samples} seed {seed}"));
    for name in doc.names_of_kind("quadratic_rb") {
        let q = doc.quadratic(&name)?;
        let suite = sample_suite(&q, None, samples, seed)?;
        sample_records(&name, "poisson-quadratic-group", &suite[0], &mut report);
        sample_records(&name, "poisson-semidirect-group", &suite[1], &mut report);
    }
    for name in select(doc, &[], &["relative_rb0", "prelie"])? {
        let op = match doc.get(&name).map(|o| &o.object) {
            Some(Object::PreLie { .. }) => doc.prelie(&name)?.as_relrb0(),
            _ => doc.relative0(&name)?,
        };
        let s = sample_semidirect(&SemidirectData::from_relative(&op), samples, seed)?;
        sample_records(&name, "poisson-semidirect-group", &s, &mut report);
    }
    Ok(report)
}

pub fn cmd_catalog(name: &str, lambda: &GaussRat, n: usize) -> Result<Document> {
    Ok(export::catalog_document(name, lambda, n)?)
}
