use std::io;

use thiserror::Error;

/// Errors produced by image IO, filters and solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] io::Error),

    #[error("unsupported image format: {0}")]
    Format(String),

    #[error("decode error: {0}")]
    Decode(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("expected {expected} channel(s), got {actual}")]
    Channels { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("constraint error: {0}")]
    Constraint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
