//! Command implementations behind the `cpn` binary.
//!
//! Every command renders its output to a `String`; `main` decides where it
//! goes and maps [`CliError`] onto the exit-code contract (0 success,
//! 1 numerical failure, 2 validation failure).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod format;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{0}")]
    CheckFailed(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) | CliError::CheckFailed(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<cpn::Error> for CliError {
    fn from(e: cpn::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Default)]
pub struct GlobalOptions {
    pub json: bool,
    pub hbar: Option<f64>,
    pub tol: Option<f64>,
    pub perturb: Option<f64>,
}
