//! `wsurf`: command-line orchestration over the surface crates.
//!
//! Surfaces travel as [`SurfaceDocument`] JSON with exact coefficients;
//! every analysis command produces a [`ReportDocument`] whose checks carry
//! residual statistics, the tolerance applied and a witness sample. Exit
//! codes: 0 when every check passes, 1 on a failed check, 2 on a usage error.

pub mod args;
pub mod commands;
pub mod document;
pub mod report;
pub mod surface;

use thiserror::Error;

pub use args::Cli;
pub use commands::{run, Outcome};
pub use document::{SurfaceDocument, SCHEMA_VERSION};
pub use report::{Check, ReportDocument, Stats, Status, Tolerance, Witness};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
    /// A computation that the input should have supported failed.
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<weierstrass::WeierstrassError> for CliError {
    fn from(e: weierstrass::WeierstrassError) -> Self {
        match e {
            weierstrass::WeierstrassError::ParameterDomain { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Failure(e.to_string())
            }
        }
    )*};
}

failure_from!(
    moebius::MoebiusError,
    adjoint::AdjointError,
    harmonic::HarmonicError,
    twistor::TwistorError
);
