use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{file}line {line}, column {column}: {message}")]
    Doc { file: String, line: usize, column: usize, message: String },
    #[error(transparent)]
    Core(#[from] convkit_core::Error),
    #[error(transparent)]
    Fan(#[from] convkit_fan::FanError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl HarnessError {
    /// Exit status: every error here is a usage or input error.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
