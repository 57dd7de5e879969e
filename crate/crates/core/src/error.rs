use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inputs violate an operation's precondition (degree mismatch, malformed data).
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The request would exceed the configured resource bound.
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn bound(msg: impl Into<String>) -> Self {
        Error::ResourceBound(msg.into())
    }
}
