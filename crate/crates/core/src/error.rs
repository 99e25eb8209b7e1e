use thiserror::Error;

/// Errors raised by the library.
///
/// `Integrity` always indicates an implementation bug or corrupted input data,
/// never a legitimate mathematical outcome.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! usage {
    ($($arg:tt)*) => { $crate::error::Error::Usage(format!($($arg)*)) };
}
macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
macro_rules! integrity {
    ($($arg:tt)*) => { $crate::error::Error::Integrity(format!($($arg)*)) };
}
pub(crate) use {domain, integrity, usage};

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Domain(_) | Error::Precondition(_) => 2,
            Error::Integrity(_) => 3,
            Error::NotFound(_) => 4,
            Error::Io(_) | Error::Json(_) => 5,
        }
    }
}
