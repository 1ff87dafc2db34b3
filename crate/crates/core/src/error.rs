//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the arithmetic and algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violates a mathematical precondition.
    #[error("{0}")]
    Domain(String),
    /// An exhaustive search would exceed its fixed budget.
    #[error("{0}")]
    Capacity(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
