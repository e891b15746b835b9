use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live on different spaces ({0})")]
    SpaceMismatch(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("convolution closure exceeded {cap} components")]
    ClosureBound { cap: usize },
    #[error("measure is not reduced: {0}")]
    NotReduced(String),
    #[error("invalid direction set: {0}")]
    InvalidDirectionSet(String),
    #[error("vector is not in the subspace: {0}")]
    NotInSubspace(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical check failed: {0}")]
    NumericalCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
