use thiserror::Error;

use crate::advice::AdviceError;
use crate::lower_bounds::LowerBoundError;
use crate::model::{InstanceFileError, ModelError};
use crate::offline::SolverError;
use crate::tape::TapeError;

/// Crate-wide error, one variant per subsystem.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Tape(#[from] TapeError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Advice(#[from] AdviceError),
    #[error(transparent)]
    LowerBound(#[from] LowerBoundError),
    #[error(transparent)]
    Instance(#[from] InstanceFileError),
    #[error("{0}")]
    Harness(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
