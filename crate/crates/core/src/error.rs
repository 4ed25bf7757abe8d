use thiserror::Error;

/// Errors raised by every analysis in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} components, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("size limit exceeded: {what} is {actual}, limit is {limit}")]
    Size {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    /// The input violates a structural requirement (monotonicity, antichain).
    #[error("model error: {0}")]
    Model(String),

    /// A parameter lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("graph is not connected")]
    Disconnected,

    /// The graph falls in a category the operation does not support.
    #[error("unsupported graph category: {0}")]
    Class(String),

    #[error("witness error: {0}")]
    Witness(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation error: {0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn check_size(what: &'static str, actual: usize, limit: usize) -> Result<()> {
        if actual > limit {
            Err(Error::Size { what, actual, limit })
        } else {
            Ok(())
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
