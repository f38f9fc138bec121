use thiserror::Error;

/// Errors raised by the symbolic layers and the numerical oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid rank {n} for root system of type {kind}")]
    InvalidRank { kind: &'static str, n: usize },

    #[error("illegal restricted root coefficients {0:?}")]
    IllegalRoot(Vec<i64>),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point {0} is not in the fundamental polytope")]
    OutsidePolytope(String),

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("unsupported space: {0}")]
    Unsupported(String),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("oracle failure: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
