use std::io;

use skg_core::SkgError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error(transparent)]
    Params(#[from] SkgError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("malformed edge file at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("binary edge file does not start with the SKG1 magic")]
    BadMagic,
    #[error("metadata: {0}")]
    Metadata(String),
    #[error("could not build a thread pool: {0}")]
    ThreadPool(String),
}

impl GenError {
    pub fn token(&self) -> &'static str {
        match self {
            GenError::Params(e) => e.token(),
            GenError::Io(_) => "Io",
            GenError::Malformed { .. } => "MalformedFile",
            GenError::BadMagic => "MalformedFile",
            GenError::Metadata(_) => "BadMetadata",
            GenError::ThreadPool(_) => "ThreadPool",
        }
    }
}

pub type Result<T> = std::result::Result<T, GenError>;
