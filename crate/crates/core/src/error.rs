use thiserror::Error;

/// Errors raised by the counting and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("resource limit exceeded: {what} needs {needed}, budget allows {limit}")]
    ResourceLimit {
        what: String,
        needed: String,
        limit: String,
    },

    /// An exactness check failed. This always indicates a bug upstream.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn limit(what: impl Into<String>, needed: impl ToString, limit: impl ToString) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
