use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("graph is disconnected; {0}")]
    Disconnected(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("non-finite value encountered at outer iteration {iteration}")]
    NonFinite { iteration: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse classification used to pick process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Numeric,
    Io,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. } | Error::Invalid(_) | Error::Disconnected(_) => {
                ErrorClass::Validation
            }
            Error::Numeric(_) | Error::NonFinite { .. } => ErrorClass::Numeric,
            Error::Io(_) => ErrorClass::Io,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
