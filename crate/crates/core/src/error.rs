use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input supplied by the caller.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A computed object failed an identity it is required to satisfy.
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("module dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: u64, cap: u64 },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Consistency(_) => 1,
            Error::InvalidInput(_) | Error::DimensionCap { .. } | Error::Io(_) => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
