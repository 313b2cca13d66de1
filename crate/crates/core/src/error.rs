//! Error type shared by every module.

use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed textual input; `pos` is a byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A documented precondition of the called operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The requested instance exceeds a configured size limit.
    #[error("size budget exceeded: {what} is {actual}, limit {limit}")]
    Budget {
        what: String,
        actual: u64,
        limit: u64,
    },

    /// An internal cross-check disagreed. Always indicates a bug or corrupt input.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    /// Inversion of the zero field element.
    #[error("inverse of zero")]
    ZeroInverse,

    /// Intermediate value left the i128 range.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// Short stable tag used in machine-readable error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Precondition(_) | Error::ZeroInverse => "precondition",
            Error::Budget { .. } => "budget",
            Error::Inconsistency(_) | Error::Overflow(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
