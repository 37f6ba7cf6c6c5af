use thiserror::Error;

/// Errors raised by the exact algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The data does not carry enough terms to decide the question asked.
    #[error("insufficient precision or singular: {available} terms available, {required} required")]
    InsufficientPrecision { available: i64, required: i64 },

    #[error("matrix is singular within the available precision")]
    SingularWithinPrecision,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
