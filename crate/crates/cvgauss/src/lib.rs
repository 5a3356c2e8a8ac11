//! Front end for the Gaussian-state toolkit: JSON state descriptors, CSV
//! output, sweep configuration, validation suites and the command bodies of
//! the `cvgauss` binary.
//!
//! Every command is a pure function from parsed input to a report string (or
//! a set of CSV files), so identical inputs give byte-identical output.

pub mod commands;
pub mod config;
pub mod descriptor;
pub mod output;
pub mod validate;

pub use config::{Config, SweepConfig, Tolerances, Truncation};
pub use descriptor::{State, StateDescriptor};

/// Errors surfaced to the command line, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed or unphysical input, bad flags or configuration.
    #[error("{0}")]
    Input(String),
    /// A validation check exceeded its tolerance.
    #[error("{0}")]
    Breach(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Breach(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<cvgauss_core::Error> for CliError {
    fn from(e: cvgauss_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<cvgauss_fock::FockError> for CliError {
    fn from(e: cvgauss_fock::FockError) -> Self {
        match e {
            cvgauss_fock::FockError::Io(io) => CliError::Io(io),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
