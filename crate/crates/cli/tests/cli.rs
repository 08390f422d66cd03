use std::process::Command;

use proptest::prelude::*;
use rbcyb::scalar::q;
use rbcyb::GaussRat;
use rbcyb_cli::{cmd_catalog, cmd_check, cmd_construct, cmd_validate, emit, parse, Construct, DocError, Property};

const ABELIAN: &str = "format 1\n\nlie_algebra a {\n  dim 1\n}\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rbcyb"))
}

/// Objects and names, ignoring source lines.
fn content(doc: &rbcyb_cli::Document) -> Vec<(String, rbcyb_cli::Object)> {
    doc.objects.iter().map(|o| (o.name.clone(), o.object.clone())).collect()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn minimal_document_round_trips() {
    let doc = parse(ABELIAN).unwrap();
    assert_eq!(doc.objects.len(), 1);
    assert_eq!(emit(&doc), ABELIAN);
    assert_eq!(parse(&emit(&doc)).unwrap(), doc);
    assert_eq!(doc.objects[0].line, 3);
}

#[test]
fn catalog_exports_round_trip() {
    for name in ["sl2", "sl2-double", "minus-identity-sl2", "relw-sl2", "rel0-zero"] {
        let doc = cmd_catalog(name, &q(1, 1), 2).unwrap();
        let text = emit(&doc);
        let back = parse(&text).unwrap();
        assert_eq!(emit(&back), text, "{name}");
        assert_eq!(back.objects.len(), doc.objects.len());
    }
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = "# header\nformat 1\n\nlie_algebra a { # trailing\n  dim 1\n}\n";
    assert_eq!(content(&parse(text).unwrap()), content(&parse(ABELIAN).unwrap()));
}

#[test]
fn syntax_error_carries_position() {
    let err = parse("format 1\nlie_algebra g {\n  dim x\n}\n").unwrap_err();
    assert_eq!(err, DocError::Syntax { line: 3, col: 7, msg: "`x` is not an index".into() });
}

#[test]
fn dangling_reference_is_reported() {
    let err = parse("format 1\nrb b {\n  algebra g\n  map B\n  weight 1\n}\n").unwrap_err();
    assert!(matches!(err, DocError::Dangling { line: 2, ref name, .. } if name == "g"), "{err:?}");
}

#[test]
fn out_of_range_constant_is_a_dimension_error() {
    let err = parse("format 1\nlie_algebra g {\n  dim 2\n  c 1 2 3 = 1\n}\n").unwrap_err();
    assert!(matches!(err, DocError::Dimension { line: 4, .. }), "{err:?}");
}

#[test]
fn identity_reflection_passes_cre() {
    let mut text = emit(&cmd_catalog("sl2", &q(1, 1), 2).unwrap());
    text.push_str("linear_map one {\n  rows 3\n  cols 3\n  matrix {\n    1 0 0\n    0 1 0\n    0 0 1\n  }\n}\n");
    text.push_str("reflection trivial {\n  target q\n  map one\n  variant skew\n}\n");
    let doc = parse(&text).unwrap();
    let rep = cmd_check(&doc, Property::Cre, &["trivial".into()]).unwrap();
    assert!(rep.all_pass(), "{rep}");
}

#[test]
fn orthogonal_fixed_report_names_a_witness() {
    let doc = cmd_catalog("sl2", &q(1, 1), 2).unwrap();
    let rep = cmd_check(&doc, Property::H0, &[]).unwrap();
    assert!(rep.all_pass());
    assert!(rep.records[0].witnesses.iter().any(|w| w.starts_with("not ideal: ")));
}

#[test]
fn validate_passes_on_catalog_exports() {
    for name in ["sl2", "sln", "sl2-bowtie", "relw-zero"] {
        let rep = cmd_validate(&cmd_catalog(name, &q(1, 1), 2).unwrap()).unwrap();
        assert!(rep.all_pass(), "{name}: {rep}");
    }
}

#[test]
fn constructions_produce_valid_documents() {
    let doc = cmd_catalog("sl2", &q(1, 1), 2).unwrap();
    for what in [Construct::Descendent, Construct::Semidirect, Construct::Directsum, Construct::Bowtie, Construct::Double] {
        let out = cmd_construct(&doc, what, None).unwrap();
        assert!(cmd_validate(&out).unwrap().all_pass(), "{what:?}");
    }
    let relw = cmd_catalog("relw-sl2", &q(1, 1), 2).unwrap();
    assert!(cmd_validate(&cmd_construct(&relw, Construct::BarLift, None).unwrap()).unwrap().all_pass());
}

#[test]
fn exit_codes_follow_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["catalog", "sl2", "--out"]).arg(dir.path().join("sl2.txt")).output().unwrap();
    assert!(out.status.success());
    let sl2 = dir.path().join("sl2.txt");
    assert_eq!(bin().arg("validate").arg(&sl2).output().unwrap().status.code(), Some(0));
    // the transpose is a relaxed reflection, so its reflection equation residual is nonzero
    assert_eq!(bin().arg("check").arg(&sl2).arg("cre").output().unwrap().status.code(), Some(1));
    let bad = write(&dir, "bad.txt", "format 1\nlie_algebra g {\n");
    assert_eq!(bin().arg("validate").arg(&bad).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["catalog", "nope"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let sl2 = write(&dir, "sl2.txt", &emit(&cmd_catalog("sl2", &q(1, 1), 2).unwrap()));
    for args in [vec!["check", "cybe"], vec!["--json", "check", "coideal"], vec!["groupeval", "--samples", "20"]] {
        // the file goes right after the subcommand
        let pos = args.iter().position(|a| !a.starts_with("--")).unwrap();
        let run = || bin().args(&args[..=pos]).arg(&sl2).args(&args[pos + 1..]).output().unwrap().stdout;
        let (a, b) = (run(), run());
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn json_report_parses() {
    let doc = cmd_catalog("sl2", &q(1, 1), 2).unwrap();
    let rep = cmd_check(&doc, Property::Cybe, &[]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&rep.render_json(true)).unwrap();
    assert_eq!(v["all_pass"], serde_json::Value::Bool(true));
    assert!(v["coverage"].as_array().is_some_and(|a| !a.is_empty()));
}

fn rat() -> impl Strategy<Value = GaussRat> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, d)| GaussRat::frac(p, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maps_round_trip(rows in 1usize..4, cols in 1usize..4, vals in prop::collection::vec((rat(), rat()), 9)) {
        let m = rbcyb::linalg::Matrix::from_fn(rows, cols, |i, j| {
            let (re, im) = vals[i * 3 + j].clone();
            GaussRat::complex(re, im)
        });
        let mut doc = rbcyb_cli::Document::default();
        doc.push("m", rbcyb_cli::Object::LinearMap { matrix: m });
        let text = emit(&doc);
        prop_assert_eq!(content(&parse(&text).unwrap()), content(&doc));
    }
}
