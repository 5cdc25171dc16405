use thiserror::Error;

use crate::logic::parser::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),

    /// A configured size or work bound would be exceeded.
    #[error("resource limit exceeded: {what} (bound {bound})")]
    Resource { what: String, bound: u64 },

    /// An operation was applied to a structure that lacks a required property.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, bound: u64) -> Self {
        Error::Resource { what: what.into(), bound }
    }
}
