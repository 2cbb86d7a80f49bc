use thiserror::Error;

/// Errors raised by the toolkit.
///
/// The variants split into two families that callers (the CLI in particular)
/// treat differently: mathematical/verification failures and
/// resource/input problems. See [`Error::is_verification`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("degenerate state: {0}")]
    Degenerate(String),
}

impl Error {
    /// True for failures of a mathematical check (as opposed to bad input or
    /// an exceeded budget).
    pub fn is_verification(&self) -> bool {
        matches!(
            self,
            Error::Verification(_) | Error::NonCommuting(..) | Error::Degenerate(_)
        )
    }

    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
