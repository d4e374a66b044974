use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("negative entry {value} at ({row}, {col}); a non-negative matrix is required")]
    NegativeEntry { row: usize, col: usize, value: String },

    #[error("negative input {0}")]
    NegativeInput(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("outcome {outcome} has probability zero; no post-measurement state exists")]
    ImpossibleOutcome { outcome: usize },

    #[error("resource cap of {limit} elements exceeded ({context})")]
    ResourceExhausted { limit: usize, context: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid device: {0}")]
    InvalidDevice(String),

    #[error("invalid digit {0:?}; expected one of 1, 2, 3")]
    InvalidDigit(char),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable identifier for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::NotSquare { .. } => "not-square",
            Error::NegativeEntry { .. } => "negative-entry",
            Error::NegativeInput(_) => "negative-input",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::ImpossibleOutcome { .. } => "impossible-outcome",
            Error::ResourceExhausted { .. } => "resource-exhausted",
            Error::InvalidInstance(_) => "invalid-instance",
            Error::InvalidDevice(_) => "invalid-device",
            Error::InvalidDigit(_) => "invalid-digit",
            Error::Parse(_) => "parse",
        }
    }
}
