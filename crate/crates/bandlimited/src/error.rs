//! Crate-wide error type. Numerical failure modes that the algorithms are
//! expected to survive (CG stagnation, stopping rules not firing) are reported
//! through traces and reports instead of this enum; `Error` covers contract
//! violations and genuinely unrecoverable failures.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("infeasible sampling request: {0}")]
    Infeasible(String),

    #[error("too few samples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("zero data: {0}")]
    ZeroData(String),

    #[error("matrix is not Hermitian: {0}")]
    NotHermitian(String),

    #[error("SVD failed to converge")]
    SvdFailed,

    #[error("rank-deficient system: {0}")]
    RankDeficient(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
