//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("inconsistent table: {0}")]
    Consistency(String),

    #[error("problem too large: {0}")]
    Size(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("linear program failed: {0}")]
    LpFailure(String),

    #[error("the MLE does not exist for this table")]
    NonexistentMle,

    #[error("iteration did not converge within {0} steps")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
