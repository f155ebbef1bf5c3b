//! Analysis requests and the compact spellings accepted on the command line.

use std::fmt;
use std::str::FromStr;

use matstab_core::dstability::{BinOp, Convention, GClass};
use matstab_core::lyapunov::DEFAULT_BUDGET;
use matstab_core::{Matrix, Region};
use serde::{Deserialize, Serialize};

/// One stage of the analysis pipeline, in run order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Classify,
    Necessary,
    Structural,
    Sufficient,
    Certify,
    Falsify,
    Simulate,
    TotalScan,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Classify,
        Check::Necessary,
        Check::Structural,
        Check::Sufficient,
        Check::Certify,
        Check::Falsify,
        Check::Simulate,
        Check::TotalScan,
    ];
    pub const DEFAULT: [Check; 5] =
        [Check::Classify, Check::Necessary, Check::Structural, Check::Sufficient, Check::Falsify];

    fn name(self) -> &'static str {
        match self {
            Check::Classify => "classify",
            Check::Necessary => "necessary",
            Check::Structural => "structural",
            Check::Sufficient => "sufficient",
            Check::Certify => "certify",
            Check::Falsify => "falsify",
            Check::Simulate => "simulate",
            Check::TotalScan => "total-scan",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sorted, deduplicated set of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Modes(pub Vec<Check>);

impl Modes {
    pub fn contains(&self, c: Check) -> bool {
        self.0.contains(&c)
    }
}

impl Default for Modes {
    fn default() -> Self {
        Modes(Check::DEFAULT.to_vec())
    }
}

impl FromStr for Modes {
    type Err = String;

    /// Comma-separated check names, or `all`, `default`, `none`.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for word in s.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            match word {
                "all" => out.extend(Check::ALL),
                "default" => out.extend(Check::DEFAULT),
                "none" => {}
                w => out.push(
                    *Check::ALL
                        .iter()
                        .find(|c| c.name() == w)
                        .ok_or_else(|| format!("unknown mode {w:?}; expected one of {}", names(&Check::ALL)))?,
                ),
            }
        }
        out.sort();
        out.dedup();
        Ok(Modes(out))
    }
}

fn names(checks: &[Check]) -> String {
    checks.iter().map(|c| c.name()).collect::<Vec<_>>().join(", ")
}

fn number(s: &str, what: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("{what}: cannot parse {s:?} as a number"))
}

fn json<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_str(s).map_err(|e| e.to_string())
}

/// `lhp`, `rhp`, `unit-disk`, `disk:C,R`, `sector:THETA`,
/// `complement-sector:THETA`, `real-line`, `positive-real`, `negative-real`,
/// `hyperbolic`, `puncture-origin`, or the JSON form of a region.
pub fn parse_region(s: &str) -> Result<Region, String> {
    let s = s.trim();
    if s.starts_with('{') {
        let r: Region = json(s)?;
        r.validate().map_err(|e| e.to_string())?;
        return Ok(r);
    }
    let (head, arg) = s.split_once(':').map_or((s, None), |(h, a)| (h, Some(a)));
    let theta = || number(arg.ok_or(format!("{head} needs an angle, e.g. {head}:0.5"))?, head);
    let r = match head {
        "lhp" | "left" => Region::HalfPlaneLeft,
        "rhp" | "right" => Region::HalfPlaneRight,
        "unit-disk" => Region::unit_disk(),
        "disk" => {
            let arg = arg.ok_or("disk needs center and radius, e.g. disk:0,1")?;
            let (c, r) = arg.split_once(',').ok_or("disk needs center and radius, e.g. disk:0,1")?;
            Region::Disk { center: number(c, "disk center")?, radius: number(r, "disk radius")? }
        }
        "sector" => Region::SectorRight { theta: theta()? },
        "complement-sector" => Region::ComplementSector { theta: theta()? },
        "real-line" => Region::RealLine,
        "positive-real" => Region::PositiveRealAxis,
        "negative-real" => Region::NegativeRealAxis,
        "hyperbolic" => Region::Hyperbolic,
        "puncture-origin" => Region::PunctureOrigin,
        _ => return Err(format!("unknown region {s:?}")),
    };
    r.validate().map_err(|e| e.to_string())?;
    Ok(r)
}

/// `positive-diagonal`, `negative-diagonal`, `diagonal-norm-lt1`,
/// `vertex-diagonal`, `spd`, `rank:K`, or the JSON form of a class.
pub fn parse_class(s: &str) -> Result<GClass, String> {
    let s = s.trim();
    if s.starts_with('{') {
        return json(s);
    }
    Ok(match s.split_once(':') {
        Some(("rank", k)) => GClass::EntrywisePositiveRank {
            k: k.trim().parse().map_err(|_| format!("rank: cannot parse {k:?}"))?,
        },
        _ => match s {
            "positive-diagonal" => GClass::PositiveDiagonal,
            "negative-diagonal" => GClass::NegativeDiagonal,
            "diagonal-norm-lt1" => GClass::DiagonalNormLt1,
            "vertex-diagonal" => GClass::VertexDiagonal,
            "spd" => GClass::Spd,
            _ => return Err(format!("unknown class {s:?}")),
        },
    })
}

/// `multiply`, `add`, `hadamard`, or `block-hadamard:K`.
pub fn parse_op(s: &str) -> Result<BinOp, String> {
    let s = s.trim();
    Ok(match s.split_once(':') {
        Some(("block-hadamard", k)) => BinOp::BlockHadamard {
            block: k.trim().parse().map_err(|_| format!("block-hadamard: cannot parse {k:?}"))?,
        },
        _ => match s {
            "multiply" => BinOp::Multiply,
            "add" => BinOp::Add,
            "hadamard" => BinOp::Hadamard,
            _ => return Err(format!("unknown operation {s:?}")),
        },
    })
}

pub const DEFAULT_SAMPLES: u64 = 2000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisRequest {
    pub matrix: Matrix,
    /// Region to test; defaults to the half-plane of `convention`.
    pub region: Option<Region>,
    pub class: GClass,
    pub op: BinOp,
    pub modes: Modes,
    pub samples: u64,
    pub budget: usize,
    pub seed: u64,
    pub convention: Convention,
    pub simulate_horizon: Option<f64>,
    /// Record wall time per check. Off by default so reports are
    /// byte-reproducible.
    pub timings: bool,
}

impl AnalysisRequest {
    /// Multiplicative positive-diagonal request with default settings.
    pub fn new(matrix: Matrix) -> Self {
        Self {
            matrix,
            region: None,
            class: GClass::PositiveDiagonal,
            op: BinOp::Multiply,
            modes: Modes::default(),
            samples: DEFAULT_SAMPLES,
            budget: DEFAULT_BUDGET,
            seed: 0,
            convention: Convention::Hurwitz,
            simulate_horizon: None,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.samples == 0 || self.budget == 0 {
            return Err("samples and budget must be positive".into());
        }
        if let Some(h) = self.simulate_horizon {
            if !(h > 0.0 && h.is_finite()) {
                return Err(format!("simulate horizon must be positive and finite, got {h}"));
            }
        }
        if let Some(r) = &self.region {
            r.validate().map_err(|e| e.to_string())?;
        }
        self.class.validate(self.matrix.n()).map_err(|e| e.to_string())
    }

    pub fn region(&self) -> Region {
        self.region.clone().unwrap_or_else(|| self.convention.region())
    }
}
