use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    /// Process exit code: 2 for usage problems (including unwritable or
    /// malformed inputs), 3 for solver failures. Assertion failures are not
    /// errors; the caller maps them to exit code 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) | HarnessError::Io(_) => 2,
            HarnessError::Numerical(_) => 3,
        }
    }
}
