use thiserror::Error;

use crate::field::FieldError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    /// A construction constraint is violated; the message names it.
    #[error("parameter constraint violated: {0}")]
    Parameter(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("insufficient data: need {need}, got {got}")]
    InsufficientData { need: usize, got: usize },
    #[error("insufficient nodes: need {need}, got {got}")]
    InsufficientNodes { need: usize, got: usize },
    #[error("inconsistent symbols: {0}")]
    Corruption(String),
    #[error("missing transfer from helper {helper} for {thread}")]
    MissingTransfer { helper: usize, thread: String },
    #[error("unrecoverable: accumulated rank {rank} < required {needed}")]
    Unrecoverable { rank: usize, needed: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Result<T, E = CodeError> = std::result::Result<T, E>;
