use thiserror::Error;
use xsect_core::transition::BuildError;

/// Failures of a run, each with its own exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// Unreadable or invalid configuration.
    #[error("{0}")]
    Config(String),
    /// The inputs are valid but an analysis precondition does not hold.
    #[error("{0}")]
    Precondition(String),
    /// A build would exceed the cell cap.
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Io(_) => 1,
            Error::Config(_) => 2,
            Error::Precondition(_) => 3,
            Error::Resource(_) => 4,
        }
    }
}

impl From<BuildError> for Error {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::CellCap { .. } => Error::Resource(e.to_string()),
            BuildError::Flow(_) => Error::Precondition(e.to_string()),
            _ => Error::Config(e.to_string()),
        }
    }
}
