use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Lib(#[from] aging_arcsine::Error),
}

impl CliError {
    /// 1 for usage and input errors, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_numeric() => 2,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Lib(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Lib(e.into())
    }
}
