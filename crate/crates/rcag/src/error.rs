//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A data file could not be parsed; carries the offending line number.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    /// No calibrated (or reference) threshold is available for this
    /// combination of series length and significance level.
    #[error(
        "no threshold entry for m={m}, alpha={alpha}; \
         run `calibrate --m {m} --alpha {alpha}` or pass --calibrate-if-missing"
    )]
    MissingThreshold { m: usize, alpha: f64 },

    /// A threshold cache file had an unsupported version tag.
    #[error("threshold cache version {found} not supported (expected {expected})")]
    CacheVersion { found: u32, expected: u32 },

    /// A threshold cache file was structurally malformed.
    #[error("malformed threshold cache {path}: {message}")]
    CacheFormat { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
