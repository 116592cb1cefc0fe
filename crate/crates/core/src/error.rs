use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Malformed line in a text document (edge list, experiment spec).
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Well-formed line that breaks a graph invariant (self-loop, duplicate edge).
    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },

    /// A measure needed for the requested operation is absent.
    #[error("incomplete measures: {0}")]
    Incomplete(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors caused by bad user-supplied values rather than the
    /// environment.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Json(_))
    }
}
