use thiserror::Error;

/// Failure signals raised by the verification engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A tripwire fired: two routes that must agree did not.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("expansion not representable: {0}")]
    NotRepresentable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
