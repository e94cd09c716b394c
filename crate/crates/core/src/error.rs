use thiserror::Error;

use crate::terms::Term;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("meet of an empty argument list")]
    EmptyMeet,

    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("brute-force oracle supports at most {limit} constants, got {got}")]
    TooManyConstants { limit: usize, got: usize },

    #[error("no shared witness term exists for {lhs} <= {rhs}")]
    NoSharedWitness { lhs: Term, rhs: Term },

    #[error("mixed clause cannot be separated: {0}")]
    NotSeparable(String),

    #[error("goal is not entailed: {0}")]
    NotEntailed(String),

    #[error("result verification failed: {0}")]
    VerificationFailed(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for errors caused by malformed or unsuitable input, as opposed to
    /// failures of the reasoning engine itself.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::EmptyMeet
                | Error::InvalidIdentifier(_)
                | Error::Parse { .. }
                | Error::Usage(_)
                | Error::TooManyConstants { .. }
        )
    }
}
