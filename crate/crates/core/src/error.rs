use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix data has {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },

    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{op} supports n <= {cap}, got n = {n}")]
    DimensionCap { op: &'static str, n: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("eigenvalue iteration did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("singular operator: {0}")]
    SingularOperator(String),

    #[error("ill-conditioned solve: residual {residual:e} exceeds {bound:e}")]
    IllConditioned { residual: f64, bound: f64 },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(op: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::DimensionCap { op, n, cap })
    } else {
        Ok(())
    }
}
