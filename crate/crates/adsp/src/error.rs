//! Error type shared by the whole crate.
//!
//! Every fallible operation returns one of three kinds of failure, and the
//! kind determines the process exit code used by the command-line front end:
//! bad input data (1), an internal consistency check that fired (2), or a
//! configured resource cap that was exceeded (3).

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// The input data is malformed or violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An internal self-check failed.  This always indicates a bug, never a
    /// property of the input.
    #[error("internal error: {0}")]
    Internal(String),

    /// A configured resource cap (lattice box size, enumeration state count,
    /// ...) was exceeded.  Re-run with a larger cap if you have the budget.
    #[error("resource cap exceeded: {0}")]
    ResourceExceeded(String),
}

impl Error {
    /// Process exit code associated with this error kind.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) => 1,
            Error::Internal(_) => 2,
            Error::ResourceExceeded(_) => 3,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceExceeded(msg.into())
    }

    /// Prefix the message with a context label (a file name, say), keeping
    /// the error kind and therefore the exit code.
    pub fn in_context(self, label: impl std::fmt::Display) -> Self {
        match self {
            Error::InvalidInput(m) => Error::InvalidInput(format!("{label}: {m}")),
            Error::Internal(m) => Error::Internal(format!("{label}: {m}")),
            Error::ResourceExceeded(m) => Error::ResourceExceeded(format!("{label}: {m}")),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
