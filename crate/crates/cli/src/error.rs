use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ordered_ramsey::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{}:{line}: corrupt cache record ({reason}); remove the file or pass --no-cache", path.display())]
    CorruptCache { path: PathBuf, line: usize, reason: String },
}

impl CliError {
    /// Process exit code: 3 for resource limits, 2 for everything the user
    /// has to fix.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource_limit() => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
