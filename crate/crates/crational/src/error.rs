use thiserror::Error;

/// Failures of the exact and jet layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CrationalError {
    #[error("division by a jet with zero constant term")]
    DivisionByZeroJet,
    #[error("branch of log/sqrt/pow requested at a zero constant term")]
    NonpositiveBranch,
    #[error("pole order mismatch at {pole}: expected {expected}, found {found}")]
    PoleOrderMismatch {
        pole: String,
        expected: usize,
        found: usize,
    },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("malformed rational literal: {0}")]
    Parse(String),
}
