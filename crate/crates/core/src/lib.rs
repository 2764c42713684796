//! Online bin packing with advice.
//!
//! Items arrive one at a time and must be placed irrevocably into unit
//! bins. An offline oracle may write an advice tape that the online
//! algorithm reads; the number of tape cells it touches is its advice cost.
//! Every size is an exact rational, so packings and bounds are checked
//! without rounding.
//!
//! The crate provides the tape codecs ([`tape`]), advice-free baselines
//! ([`baselines`]), an exact offline optimum ([`offline`]), the advice
//! algorithms with their oracles ([`advice`]), adversarial families and
//! lower-bound tools ([`lower_bounds`]), and an experiment harness
//! ([`harness`]).

// errors carry the offending exact size
#![allow(clippy::result_large_err)]

pub mod advice;
pub mod baselines;
pub mod error;
pub mod harness;
pub mod lower_bounds;
pub mod model;
pub mod offline;
pub mod online;
pub mod size;
pub mod tape;

pub use error::{Error, Result};
pub use model::{
    packing_violations, replay, verify_packing, Bin, Decision, ModelError, Packing,
    RequestSequence, RunResult, Target, Violation,
};
pub use offline::{opt_configurations, opt_exact, OptSolution, SolverError};
pub use online::{run_online, OnlineAlgorithm};
pub use size::ExactSize;
pub use tape::{AdviceTape, BitString};
