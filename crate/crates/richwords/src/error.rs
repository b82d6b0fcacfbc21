use thiserror::Error;

/// Errors across the crate, grouped by how a caller should react.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text (word, morphism spec, sequence syntax).
    #[error("parse error: {0}")]
    Parse(String),
    /// Structurally valid input that violates an operation's precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Operation requires a rich word but the input is not rich.
    #[error("word is not rich: {0}")]
    NotRich(String),
    /// Operation requires a non-rich word but the input is rich.
    #[error("word is rich: {0}")]
    RichInput(String),
    /// An internal consistency check failed. This signals a bug in the
    /// implementation, never a property of the input.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line interface.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Precondition(_) | Error::NotRich(_) | Error::RichInput(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
