use thiserror::Error;

/// Errors raised by the cone primitives, calculus and membership engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SoccError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("non-finite entry at index {0}")]
    NonFinite(usize),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("pair is not in the complementarity set: {0}")]
    NotInOmega(String),

    #[error("case classification is unstable at the tolerance boundary: {0}")]
    AmbiguousCase(String),

    #[error("projection is not differentiable at a point of region {0}")]
    NotDifferentiable(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("operation requires case {expected}, got {found}")]
    WrongCase { expected: String, found: String },

    #[error("unsupported region for this operation: {0}")]
    UnsupportedRegion(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, SoccError>;
