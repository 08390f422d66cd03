//! Verification reports: one record per check, in canonical order.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// Claim identifiers and the statement each one stands for.
pub const ANCHORS: &[(&str, &str)] = &[
    ("lie-axioms", "structure constants are antisymmetric and satisfy Jacobi"),
    ("invariant-form", "form is symmetric, nondegenerate and ad-invariant"),
    ("representation-axioms", "action matrices form a representation"),
    ("rb-identity", "operator satisfies the Rota-Baxter identity of its weight"),
    ("quadratic-rb", "quadratic Rota-Baxter compatibility S(x,By) + S(Bx,y) + λS(x,y) = 0"),
    ("cybe-from-quadratic-rb", "quadratic Rota-Baxter operator gives a CYBE solution, triangular iff λ = 0"),
    ("cybe-from-semidirect", "Rota-Baxter operator gives a CYBE solution on g ⋉ g*"),
    ("cybe-from-relative", "relative Rota-Baxter operator gives a CYBE solution on its semidirect algebra"),
    ("cybe-reference", "reference tensor solves CYBE"),
    ("reference-normalization", "computed r-matrix compared with a reference tensor"),
    ("reflection-variants", "reflection residuals for the skew, symmetric and relaxed-ad variants"),
    ("rb-reflection", "automorphism compatible with a Rota-Baxter operator"),
    ("relative-reflection", "pair of automorphisms compatible with a relative operator"),
    ("cre-from-reflection", "reflection of a quadratic Rota-Baxter algebra solves CRE"),
    ("cre-from-rb-reflection", "Rota-Baxter reflection lifts to a CRE solution on g ⋉ g*"),
    ("cre-from-relative-reflection", "relative reflection lifts to a CRE solution"),
    ("coideal-fixed-points", "fixed points of a reflection form a coideal subalgebra"),
    ("lifted-fixed-subalgebra", "Im(τ+1) ⊕ h^⊥ is a subalgebra of the descendent"),
    ("orthogonal-fixed-subalgebra", "S-orthogonal of the fixed points is a descendent subalgebra"),
    ("dual-descendent-iso", "dual algebra of the semidirect r-matrix is isomorphic to the descendent"),
    ("weight-zero-dual", "dual of the weight-zero r-matrix is the semidirect V_T ⋉ g*"),
    ("relative-dual-brackets", "explicit dual brackets of the weight-λ r-matrix"),
    ("relative-sub-bialgebra", "g ⊕ k* is a sub-bialgebra with the stated quotient bracket"),
    ("prelie-axioms", "product has symmetric associator"),
    ("postlie-axioms", "product acts by derivations and satisfies the post-Lie identity"),
    ("relative-rb-identity", "relative operator satisfies its twisted homomorphism identity"),
    ("poisson-quadratic-group", "bivector on G from a quadratic Rota-Baxter operator is multiplicative"),
    ("poisson-semidirect-group", "bivector on the semidirect group is multiplicative with the descendent linear part"),
];

pub fn anchor_description(id: &str) -> &'static str {
    ANCHORS.iter().find(|(a, _)| *a == id).map_or("", |(_, d)| d)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub check: String,
    pub object: String,
    pub anchor: &'static str,
    pub status: Status,
    pub residual: String,
    pub witnesses: Vec<String>,
}

impl Record {
    pub fn new(check: &str, object: &str, anchor: &'static str, ok: bool, residual: impl Into<String>) -> Self {
        debug_assert!(ANCHORS.iter().any(|(a, _)| *a == anchor), "unknown anchor {anchor}");
        Record {
            check: check.into(),
            object: object.into(),
            anchor,
            status: Status::from_bool(ok),
            residual: residual.into(),
            witnesses: Vec::new(),
        }
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub records: Vec<Record>,
}

#[derive(Serialize)]
struct CoverageEntry {
    anchor: &'static str,
    claim: &'static str,
    checks: usize,
    failed: usize,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    all_pass: bool,
    records: &'a [Record],
    #[serde(skip_serializing_if = "Option::is_none")]
    coverage: Option<Vec<CoverageEntry>>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), records: Vec::new() }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(Record::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    fn coverage(&self) -> Vec<CoverageEntry> {
        let mut by: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
        for r in &self.records {
            let e = by.entry(r.anchor).or_default();
            e.0 += 1;
            e.1 += usize::from(!r.passed());
        }
        by.into_iter()
            .map(|(anchor, (checks, failed))| CoverageEntry { anchor, claim: anchor_description(anchor), checks, failed })
            .collect()
    }

    pub fn render_text(&self, coverage: bool) -> String {
        let mut out = self.to_string();
        if coverage {
            let _ = writeln!(out, "coverage");
            for c in self.coverage() {
                let _ = writeln!(out, "  {} checks {} failed {}: {}", c.anchor, c.checks, c.failed, c.claim);
            }
        }
        out
    }

    pub fn render_json(&self, coverage: bool) -> String {
        let j = JsonReport {
            command: &self.command,
            all_pass: self.all_pass(),
            records: &self.records,
            coverage: coverage.then(|| self.coverage()),
        };
        serde_json::to_string_pretty(&j).expect("report serializes") + "\n"
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report {}", self.command)?;
        for r in &self.records {
            writeln!(f, "check {} object {} anchor {} status {}", r.check, r.object, r.anchor, r.status.as_str())?;
            writeln!(f, "  residual {}", r.residual)?;
            for w in &r.witnesses {
                writeln!(f, "  witness {w}")?;
            }
        }
        let passed = self.records.iter().filter(|r| r.passed()).count();
        writeln!(f, "summary checks {} pass {} fail {}", self.records.len(), passed, self.records.len() - passed)
    }
}
