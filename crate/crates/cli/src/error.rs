use thiserror::Error;

pub const EXIT_NOT_CONVERGED: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    /// Malformed or non-physical input matrix.
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Runtime(#[from] cstre::separability::SepError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
