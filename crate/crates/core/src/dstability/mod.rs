//! `(𝔇, 𝒢, ∘)`-stability: class samplers, falsification, necessary and
//! sufficient tests for D-stability and its relatives.

mod analyze;
mod falsify;
mod fisher_fuller;
mod gclass;
mod hadamard;
mod johnson_tesi;
mod necessary;
mod sufficient;
mod vertex;

use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;
use crate::spectra::Region;

pub use analyze::{analyze_d_stability, total_stability_scan, Analysis, TotalScan, TOTAL_SCAN_CAP};
pub use falsify::{escape, falsify, replay, sample_rng, Counterexample};
pub use fisher_fuller::{fisher_fuller_stabilize, real_positive_simple, EPS_MIN, GAP_RTOL, IMAG_RTOL};
pub use gclass::{apply_op, BinOp, GClass, LOG_RANGE, RANK_FACTOR_RANGE};
pub use hadamard::{hadamard_p_test, random_correlation, HADAMARD_CAP};
pub use johnson_tesi::{johnson_tesi_poly, johnson_tesi_sufficient, MultiPoly, COEFF_RTOL, JOHNSON_TESI_CAP};
pub use necessary::necessary_p0plus;
pub use sufficient::{sufficient_suite, suite_verdict, SuiteItem};
pub use vertex::{vertex_schur_check, VERTEX_CAP};

/// Which half-plane counts as stable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Spectrum in the open left half-plane.
    #[default]
    Hurwitz,
    /// Spectrum in the open right half-plane.
    Positive,
}

impl Convention {
    pub fn region(self) -> Region {
        match self {
            Convention::Hurwitz => Region::HalfPlaneLeft,
            Convention::Positive => Region::HalfPlaneRight,
        }
    }

    /// The matrix whose Hurwitz stability is equivalent to stability of `a`
    /// in this convention.
    pub fn to_hurwitz(self, a: &Matrix) -> Matrix {
        match self {
            Convention::Hurwitz => a.clone(),
            Convention::Positive => a.scale(-1.0),
        }
    }
}

/// Multiplicative (`DA`) or additive (`A - D`, Hurwitz convention) D-stability.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Multiplicative,
    Additive,
}
