//! Three-valued analysis outcomes.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dstability::Counterexample;
use crate::lyapunov::Certificate;
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Proved,
    Refuted,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proved => "proved",
            Status::Refuted => "refuted",
            Status::Unknown => "unknown",
        })
    }
}

/// Evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Certificate(Certificate),
    Counterexample(Counterexample),
    /// An eigenvalue of the analysed matrix outside the region.
    Eigenvalue { value: Complex64 },
    Polynomial { label: String, coefficients: Vec<f64> },
    Minor { rows: Vec<usize>, cols: Vec<usize>, value: f64 },
    OrderSum { order: usize, value: f64 },
    Entry { row: usize, col: usize, value: f64 },
    /// A scalar test quantity against its threshold.
    Bound { value: f64, threshold: f64 },
    /// A diagonal scaling, e.g. a stabilizing `D`.
    Scaling { diagonal: Vec<f64> },
    /// A sampled symmetric `S` for which `A∘S` has a nonpositive principal minor.
    HadamardMinor { s: Matrix, rows: Vec<usize>, value: f64 },
    /// A sampled matrix from a pattern class. For a refutation, `eigenvalue`
    /// lies outside the region and belongs to `g ∘ matrix` when `g` is set,
    /// else to `matrix` itself.
    PatternMember {
        matrix: Matrix,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        g: Option<Matrix>,
        eigenvalue: Option<Complex64>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VerdictRepr", into = "VerdictRepr")]
pub struct Verdict {
    status: Status,
    reason: String,
    witness: Option<Witness>,
    detail: Option<String>,
    seed: Option<u64>,
}

impl Verdict {
    pub fn proved(reason: impl Into<String>) -> Self {
        Self::build(Status::Proved, reason.into(), None)
    }

    pub fn proved_with(reason: impl Into<String>, witness: Witness) -> Self {
        Self::build(Status::Proved, reason.into(), Some(witness))
    }

    /// Refutations always carry their evidence.
    pub fn refuted(reason: impl Into<String>, witness: Witness) -> Self {
        Self::build(Status::Refuted, reason.into(), Some(witness))
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Self::build(Status::Unknown, reason.into(), None)
    }

    fn build(status: Status, reason: String, witness: Option<Witness>) -> Self {
        assert!(!reason.is_empty(), "verdict reason must be nonempty");
        Self { status, reason, witness, detail: None, seed: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn reason(&self) -> &str {
        &self.reason
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn detail(&self) -> Option<&str> {
        self.detail.as_deref()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn is_proved(&self) -> bool {
        self.status == Status::Proved
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }

    pub fn is_unknown(&self) -> bool {
        self.status == Status::Unknown
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.witness {
            Some(Witness::Certificate(c)) => Some(c),
            _ => None,
        }
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.witness {
            Some(Witness::Counterexample(c)) => Some(c),
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct VerdictRepr {
    status: Status,
    reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

impl TryFrom<VerdictRepr> for Verdict {
    type Error = String;
    fn try_from(r: VerdictRepr) -> Result<Self, String> {
        if r.reason.is_empty() {
            return Err("verdict reason must be nonempty".into());
        }
        if r.status == Status::Refuted && r.witness.is_none() {
            return Err("refuted verdict without witness".into());
        }
        Ok(Self { status: r.status, reason: r.reason, witness: r.witness, detail: r.detail, seed: r.seed })
    }
}

impl From<Verdict> for VerdictRepr {
    fn from(v: Verdict) -> Self {
        Self { status: v.status, reason: v.reason, witness: v.witness, detail: v.detail, seed: v.seed }
    }
}
