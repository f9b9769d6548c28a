use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text or JSON could not be read.
    #[error("malformed input: {0}")]
    Parse(String),
    /// Well-formed input that violates an operation's precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A local rewrite was requested where its pattern does not occur.
    #[error("pattern mismatch: {0}")]
    Pattern(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
