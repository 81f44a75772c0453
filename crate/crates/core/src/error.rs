use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count {0} out of range (expected 1..=16)")]
    VariableCount(usize),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("truth table is not rotation symmetric: orbit {orbit} (representative {representative}) is not constant")]
    NotRotationSymmetric { orbit: usize, representative: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("search space of 2^{exponent} functions exceeds the limit {limit}")]
    TooLarge { exponent: usize, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}
