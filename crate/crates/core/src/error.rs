//! Shared error type for the whole crate.

use thiserror::Error;

/// Errors produced by model validation, parsing, graph analysis and fitting.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lacked the semantic annotation required by the active matcher.
    #[error("parameter '{parameter}' has no concept annotation required for semantic matching")]
    AnnotationMissing { parameter: String },

    /// A document could not be parsed; position is 1-based when known.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Structurally valid input that violates a model invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// An operation that requires non-empty input received none.
    #[error("empty input: {0}")]
    EmptyInput(String),

    /// The requested quantity is mathematically undefined on this input.
    #[error("undefined value: {0}")]
    UndefinedValue(String),

    /// Not enough data to run a statistical procedure.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A numerical routine failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad user input rather than internal failure.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Numerical(_) | Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
