//! Lyapunov and Stein equations, region operators and diagonal certificate
//! searches.

mod certificate;
mod engine;
mod operators;
mod redheffer;
mod scaling;
mod search;
mod solve;

pub use certificate::{
    certified_margin, inverse_certificate, transpose_certificate, verify_certificate, verify_common, Certificate,
    CertificateKind,
};
pub use operators::{emi_operator, lmi_operator, region_operator};
pub use redheffer::{redheffer_decide, shorten_narendra_reduce};
pub use search::{
    common_diagonal_search, diagonal_hyperbolicity_search, diagonal_stability_search, spd_lyapunov_certificate,
    DEFAULT_BUDGET,
};
pub use solve::{
    apply_gen_lyap, definiteness_tol, is_negative_definite, solve_lyapunov, solve_stein, GenLyapCoeffs, KRONECKER_CAP,
};
