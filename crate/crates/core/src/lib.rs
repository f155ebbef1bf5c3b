//! Stability analysis of real square matrices: spectral regions, matrix
//! classes, Lyapunov-type certificates, and `(𝔇, 𝒢, ∘)`-stability tests such
//! as D-stability, diagonal stability and Schur D-stability.
//!
//! Every test returns a three-valued [`Verdict`]. Proved verdicts carry a
//! certificate that can be re-verified; Refuted verdicts carry a replayable
//! witness. Sampling is seeded and deterministic.

// `!(x > 0.0)` also rejects NaN; index loops mirror the formulas
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod dstability;
pub mod error;
pub mod lyapunov;
pub mod matrix;
pub mod polynomials;
pub mod qualitative;
pub mod special_forms;
pub mod spectra;
pub mod verdict;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use spectra::Region;
pub use verdict::{Status, Verdict, Witness};
