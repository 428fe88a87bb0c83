use thiserror::Error;

/// Errors raised while ingesting tables or running the reduction pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed CSV structure. `row` is the 1-based data row (header excluded).
    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("validation error at row {row}, column '{column}': {message}")]
    Validation {
        row: usize,
        column: String,
        message: String,
    },

    /// A column named on the command line or in options is absent from the header.
    #[error("unknown column '{0}'")]
    UnknownColumn(String),

    #[error("invalid argument: {0}")]
    Argument(String),
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
