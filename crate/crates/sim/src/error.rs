use std::path::PathBuf;

use lrc_core::CodeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("malformed node file {}: {reason}", path.display())]
    Format { path: PathBuf, reason: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("event {index}: {count} simultaneous failures in one group exceed γ = {gamma}")]
    Unrecoverable {
        index: usize,
        count: usize,
        gamma: usize,
    },
    #[error("integrity check failed: {0}")]
    Integrity(String),
}

impl SimError {
    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| SimError::Io { path, source }
    }
}

pub type Result<T, E = SimError> = std::result::Result<T, E>;
