//! Adversarial families, the partition counting bound, the reduction from
//! string guessing to bin packing, and the advice lower-bound formulas.

mod bounds;
mod counting;
mod families;
mod reduction;

use thiserror::Error;

pub use bounds::{
    binpack_bound, binpack_coefficient, guessing_coefficient, sgkh_bound, sgkh_bound_known_zeros,
};
pub use counting::{count_partition_solutions, partition_bound, COUNT_GUARD};
pub use families::{
    gen_power_sequence, gen_scaled_sequence, power_packing, PowerFamily, PowerVector,
    ScaledInstance,
};
pub use reduction::{
    guessing_from_separation, reduce_bin_packing, BinPackingSeparation, CheatSeparation, Class,
    GuessStep, GuessingTrace, ReductionParams, ReductionTrace, SeparationSolver,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowerBoundError {
    #[error("invalid family vector: {0}")]
    InvalidVector(String),
    #[error("invalid levels: {0}")]
    InvalidLevels(String),
    #[error("invalid reduction parameters: {0}")]
    InvalidParams(String),
    #[error("{0}")]
    Domain(String),
    #[error("enumeration would exceed {limit} states")]
    GuardExceeded { limit: u64 },
}
