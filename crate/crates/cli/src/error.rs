use thiserror::Error;

/// Failure of a `djsim` invocation, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error in '{key}': {message}")]
    Config { key: String, message: String },

    #[error("numerical failure: {0}")]
    Numerical(djsim_core::Error),

    #[error("{0}")]
    Core(djsim_core::Error),

    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },

    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn config(key: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Numerical(_) => 3,
            _ => 1,
        }
    }
}

impl From<djsim_core::Error> for CliError {
    fn from(e: djsim_core::Error) -> CliError {
        if e.is_numerical() {
            CliError::Numerical(e)
        } else {
            CliError::Core(e)
        }
    }
}
