use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Error)]
pub enum Error {
    /// The caller broke a documented precondition.
    #[error("usage error: {0}")]
    Usage(String),
    /// An internal consistency check failed; this signals a bug (or a false
    /// theorem), never bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
