//! Report structure and its JSON and text renderings.

use std::fmt::Write as _;

use matstab_core::dstability::{BinOp, Convention, GClass};
use matstab_core::{Matrix, Region, Verdict};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "matstab-report/1";

/// How a record's verdict bears on the overall question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bearing {
    /// Proved and Refuted both transfer.
    Exact,
    /// Only Refuted transfers.
    Necessary,
    /// Only Proved transfers.
    Sufficient,
    /// Neither transfers.
    Informational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub check: String,
    /// Name of the classical result behind the check.
    pub anchor: String,
    pub bearing: Bearing,
    pub verdict: Verdict,
    /// Raw numbers for external tools (eigenvalues, discs, ratios).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    /// Set when the check failed; the verdict is then Unknown.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub matrix: Matrix,
    pub region: Region,
    pub class: GClass,
    pub op: BinOp,
    pub convention: Convention,
    /// Seed every sampled check was run with.
    pub seed: u64,
    pub records: Vec<Record>,
    pub summary: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decided_by: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format {s:?}; expected json or text")),
        }
    }
}

pub fn emit(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report is serializable");
            out.push(b'\n');
            out
        }
        Format::Text => text(report).into_bytes(),
    }
}

fn text(r: &Report) -> String {
    let mut s = String::new();
    let n = r.matrix.n();
    let conv = match r.convention {
        Convention::Hurwitz => "hurwitz",
        Convention::Positive => "positive",
    };
    let _ = writeln!(s, "{SCHEMA}");
    let _ = writeln!(s, "matrix {n}x{n}, region: {}, class: {}, op: {}, convention: {conv}", r.region, r.class, r.op);
    let _ = writeln!(s, "seed {}", r.seed);
    for rec in &r.records {
        let v = &rec.verdict;
        let _ = write!(s, "  {:<8} {:<32} {:<13} {}", v.status().to_string(), rec.check, bearing(rec.bearing), v.reason());
        if let Some(ms) = rec.wall_ms {
            let _ = write!(s, " ({ms:.1} ms)");
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "           [{}]", rec.anchor);
        if let Some(d) = v.detail() {
            let _ = writeln!(s, "           {d}");
        }
        if let Some(e) = &rec.error {
            let _ = writeln!(s, "           error: {e}");
        }
    }
    let _ = write!(s, "summary: {} ({})", r.summary.status(), r.summary.reason());
    if let Some(by) = &r.decided_by {
        let _ = write!(s, " via {by}");
    }
    let _ = writeln!(s);
    s
}

fn bearing(b: Bearing) -> &'static str {
    match b {
        Bearing::Exact => "exact",
        Bearing::Necessary => "necessary",
        Bearing::Sufficient => "sufficient",
        Bearing::Informational => "informational",
    }
}

/// Overall verdict and the check that decided it. A refutation from an exact
/// or necessary check wins, preferring one with a replayable counterexample;
/// otherwise a proof from an exact or sufficient check. Evidence in both
/// directions is reported as a conflict.
pub fn summarize(records: &[Record]) -> (Verdict, Option<String>) {
    let refuting: Vec<&Record> = records
        .iter()
        .filter(|r| r.verdict.is_refuted() && matches!(r.bearing, Bearing::Exact | Bearing::Necessary))
        .collect();
    let refuted =
        refuting.iter().find(|r| r.verdict.counterexample().is_some()).or(refuting.first()).copied();
    let proved = records
        .iter()
        .find(|r| r.verdict.is_proved() && matches!(r.bearing, Bearing::Exact | Bearing::Sufficient));
    match (refuted, proved) {
        (Some(x), Some(y)) => (
            Verdict::unknown("conflicting_evidence").with_detail(format!("{} refutes but {} proves", x.check, y.check)),
            None,
        ),
        (Some(x), None) => (x.verdict.clone(), Some(x.check.clone())),
        (None, Some(y)) => (y.verdict.clone(), Some(y.check.clone())),
        (None, None) if records.is_empty() => (Verdict::unknown("no_checks_run"), None),
        (None, None) => (Verdict::unknown("undecided"), None),
    }
}
