//! Configuration-driven front end: run disorder ensembles to an
//! eigenvalue archive, compute diagnostics tables from archives, account
//! gate costs, and emit the figure manifest.

pub mod archive;
pub mod config;
pub mod diagnose;
pub mod figures;
pub mod manifest;
pub mod runner;

use thiserror::Error;

/// Front-end errors with their process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("capacity: {0}")]
    Capacity(String),

    #[error("numerical: {0}")]
    Numerical(String),

    #[error("archive error: {0}")]
    Archive(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 = config error, 3 = capacity error, 4 = numerical error,
    /// 1 = anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Numerical(_) => 4,
            CliError::Archive(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<syklab::Error> for CliError {
    fn from(e: syklab::Error) -> Self {
        use syklab::Error as E;
        match e {
            E::Capacity(m) => CliError::Capacity(m),
            E::Numerical(m) | E::Unfolding(m) => CliError::Numerical(m),
            E::InvalidParameter(m) | E::Input(m) => CliError::Config(m),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
