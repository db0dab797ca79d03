use thiserror::Error;

/// Failure of a command, carrying its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Degenerate(witness_lab::Error),
    #[error("numerical failure: {0}")]
    Numerical(witness_lab::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Numerical(_) | CliError::Io(_) => 4,
        }
    }
}

impl From<witness_lab::Error> for CliError {
    fn from(e: witness_lab::Error) -> Self {
        match e {
            witness_lab::Error::DegenerateGround { .. } => CliError::Degenerate(e),
            witness_lab::Error::NoConvergence { .. } => CliError::Numerical(e),
            other => CliError::Input(other.to_string()),
        }
    }
}
