use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid letter: {0}")]
    InvalidLetter(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("not an inverse pair at position {pos}")]
    NotInversePair { pos: usize },

    #[error("invalid system:\n{}", .0.join("\n"))]
    Invalid(Vec<String>),

    #[error("needs at least three components (got {0})")]
    TooFewComponents(usize),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("move rejected: {0}")]
    MoveRejected(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("incomparable: linking numbers differ")]
    Incomparable,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
