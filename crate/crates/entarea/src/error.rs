//! Error types shared across the crate.

use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Model parameters violate a validity constraint (e.g. 2cd >= 1).
    #[error("invalid model: {0}")]
    ModelInvalid(String),

    /// An argument is outside its documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A spectral operation required a positive symbol and did not get one.
    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    /// A dense allocation would exceed the configured element budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A numerical result is inconsistent with a proven property; this
    /// signals an implementation or conditioning problem, not bad input.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
