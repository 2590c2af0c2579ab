use thiserror::Error;

/// Errors raised by ring arithmetic, substitutions and the automorphism search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ring spec mismatch: {left} vs {right}")]
    SpecMismatch { left: String, right: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("search space too large: {size} candidates exceeds ceiling {ceiling}")]
    SearchSpaceTooLarge { size: String, ceiling: u128 },

    #[error("rejected input: {0}")]
    RejectedInput(String),

    #[error("{0} is not an automorphism")]
    NotAutomorphism(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
