use std::io;

use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed structure: {0}")]
    Structure(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    Degree { expected: usize, found: usize },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("syntax error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("unbound function symbol `{0}`")]
    UnboundSymbol(String),

    #[error("non-polynomial input: {0}")]
    NonPolynomial(String),

    #[error("{file}:{line}: {msg}")]
    Format { file: String, line: usize, msg: String },

    #[error("resource guard: {0}")]
    ResourceLimit(String),

    #[error("computation cancelled")]
    Cancelled,

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }

    pub(crate) fn format(file: &str, line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            file: file.to_string(),
            line,
            msg: msg.into(),
        }
    }

    /// True for errors caused by bad user input (as opposed to resource or cancellation).
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::ResourceLimit(_) | Error::Cancelled)
    }
}
