//! Conversion of library values and catalog entries into documents.

use num_traits::Zero;
use rbcyb::catalog::{self, CatalogEntry, Payload};
use rbcyb::lie::{LieAlgebra, Representation};
use rbcyb::linalg::Matrix;
use rbcyb::relative::{PostLie, PreLie, RelRB0, RelRBW};
use rbcyb::rotabaxter::{QuadraticRB, RBStructure, ReflectionVariant};
use rbcyb::scalar::q;
use rbcyb::GaussRat;

use crate::doc::{Document, Object};

pub fn add_lie(doc: &mut Document, name: &str, l: &LieAlgebra) -> String {
    doc.push(name, Object::LieAlgebra { dim: l.dim(), c: l.dense().to_vec() });
    name.to_string()
}

pub fn add_map(doc: &mut Document, name: &str, m: &Matrix) -> String {
    doc.push(name, Object::LinearMap { matrix: m.clone() });
    name.to_string()
}

pub fn add_representation(doc: &mut Document, name: &str, algebra: &str, rho: &Representation) -> String {
    doc.push(name, Object::Representation { algebra: algebra.into(), space_dim: rho.space_dim(), mats: rho.mats().to_vec() });
    name.to_string()
}

/// Adds `{p}g`, `{p}B` and `{p}rb`; returns the operator name.
pub fn add_rb(doc: &mut Document, p: &str, rb: &RBStructure) -> String {
    let g = add_lie(doc, &format!("{p}g"), &rb.algebra);
    let b = add_map(doc, &format!("{p}B"), &rb.b);
    let name = format!("{p}rb");
    doc.push(&name, Object::Rb { algebra: g, map: b, weight: rb.weight.clone() });
    name
}

/// Adds the operator, `{p}S` and `{p}q`; returns the quadratic operator name.
pub fn add_quadratic(doc: &mut Document, p: &str, qrb: &QuadraticRB) -> String {
    let rb = add_rb(doc, p, &qrb.rb);
    let form = format!("{p}S");
    doc.push(&form, Object::BilinearForm { algebra: format!("{p}g"), gram: qrb.form.gram.clone() });
    let name = format!("{p}q");
    doc.push(&name, Object::QuadraticRb { rb, form });
    name
}

pub fn add_reflection(doc: &mut Document, p: &str, target: &str, rname: &str, tau: &Matrix, variant: Option<ReflectionVariant>) {
    let map = add_map(doc, &format!("{p}tau-{rname}"), tau);
    doc.push(format!("{p}{rname}"), Object::Reflection { target: target.into(), map, source_map: None, variant });
}

pub fn add_pair(doc: &mut Document, p: &str, target: &str, rname: &str, sigma: &Matrix, tau: &Matrix) {
    let map = add_map(doc, &format!("{p}sigma-{rname}"), sigma);
    let source = add_map(doc, &format!("{p}tau-{rname}"), tau);
    doc.push(format!("{p}{rname}"), Object::Reflection { target: target.into(), map, source_map: Some(source), variant: None });
}

pub fn add_relative0(doc: &mut Document, p: &str, op: &RelRB0) -> String {
    let g = add_lie(doc, &format!("{p}g"), &op.g);
    let rho = add_representation(doc, &format!("{p}rho"), &g, &op.rho);
    let t = add_map(doc, &format!("{p}T"), &op.t);
    let name = format!("{p}op");
    doc.push(&name, Object::RelativeRb0 { algebra: g, representation: rho, map: t });
    name
}

pub fn add_relativew(doc: &mut Document, p: &str, op: &RelRBW) -> String {
    let g = add_lie(doc, &format!("{p}g"), &op.g);
    let k = add_lie(doc, &format!("{p}k"), &op.k);
    let rho = add_representation(doc, &format!("{p}rho"), &g, &op.rho);
    let t = add_map(doc, &format!("{p}T"), &op.t);
    let name = format!("{p}op");
    doc.push(&name, Object::RelativeRbw { algebra: g, module_algebra: k, representation: rho, map: t, weight: op.weight.clone() });
    name
}

pub fn add_prelie(doc: &mut Document, p: &str, a: &PreLie) -> String {
    let name = format!("{p}prelie");
    doc.push(&name, Object::PreLie { dim: a.dim(), table: a.table().to_vec() });
    name
}

pub fn add_postlie(doc: &mut Document, p: &str, a: &PostLie) -> String {
    let g = add_lie(doc, &format!("{p}g"), &a.lie);
    let name = format!("{p}postlie");
    doc.push(&name, Object::PostLie { algebra: g, table: a.table().to_vec() });
    name
}

/// Reference r-matrix quoted for the `sl(2)` example: `(1/8)(H⊗H + 4X⊗Y)`.
pub fn sl2_reference_tensor() -> Matrix {
    Matrix::from_fn(3, 3, |i, j| match (i, j) {
        (0, 0) => GaussRat::frac(1, 8),
        (1, 2) => GaussRat::frac(1, 2),
        _ => GaussRat::zero(),
    })
}

/// Writes one catalog entry with every object name prefixed by `p`.
pub fn export_entry(doc: &mut Document, entry: &CatalogEntry, p: &str) {
    match &entry.payload {
        Payload::Quadratic { qrb, reflections } => {
            let target = add_quadratic(doc, p, qrb);
            for r in reflections {
                add_reflection(doc, p, &target, &r.name, &r.tau, Some(r.variant));
            }
            if entry.name == "sl2" {
                doc.push(format!("{p}r-reference"), Object::Tensor { algebra: format!("{p}g"), matrix: sl2_reference_tensor() });
            }
        }
        Payload::RotaBaxter { rb, reflections } => {
            let target = add_rb(doc, p, rb);
            for (name, tau) in reflections {
                add_reflection(doc, p, &target, name, tau, None);
            }
        }
        Payload::Relative0 { op, pairs } => {
            let target = add_relative0(doc, p, op);
            for pr in pairs {
                add_pair(doc, p, &target, &pr.name, &pr.sigma, &pr.tau);
            }
        }
        Payload::RelativeW { op, pairs } => {
            let target = add_relativew(doc, p, op);
            for pr in pairs {
                add_pair(doc, p, &target, &pr.name, &pr.sigma, &pr.tau);
            }
        }
        Payload::PreLie { alg, involutions } => {
            let target = add_prelie(doc, p, alg);
            for (i, m) in involutions.iter().enumerate() {
                add_pair(doc, p, &target, &format!("inv{i}"), m, m);
            }
        }
        Payload::PostLie { alg, involutions } => {
            let target = add_postlie(doc, p, alg);
            for (i, m) in involutions.iter().enumerate() {
                add_pair(doc, p, &target, &format!("inv{i}"), m, m);
            }
        }
    }
}

pub const FAMILY_NAMES: &[&str] = &["prelie2", "postlie2"];

/// Document for a named catalog entry or enumerated family.
pub fn catalog_document(name: &str, lambda: &GaussRat, n: usize) -> rbcyb::Result<Document> {
    let mut doc = Document::default();
    match name {
        "prelie2" | "postlie2" => {
            let want = if name == "prelie2" { "prelie2-" } else { "postlie2-" };
            for e in catalog::small_algebra_entries().iter().filter(|e| e.name.starts_with(want)) {
                let idx = &e.name[want.len()..];
                export_entry(&mut doc, e, &format!("{}{idx}-", if name == "prelie2" { "p" } else { "q" }));
            }
        }
        _ => export_entry(&mut doc, &catalog::by_name(name, lambda, n)?, ""),
    }
    Ok(doc)
}

pub fn default_lambda() -> GaussRat {
    q(1, 1)
}
