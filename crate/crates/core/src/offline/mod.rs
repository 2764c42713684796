//! Offline optimum: the ground truth every online cost is compared with.
//!
//! Two independent solvers are provided and cross-checked in tests: an
//! item-by-item branch-and-bound ([`opt_exact`]) and a configuration search
//! for instances with few distinct sizes ([`opt_configurations`]).

mod configurations;
mod enumerate;
mod exact;
mod weights;

use thiserror::Error;

use crate::model::Packing;
use crate::size::ExactSize;

pub use configurations::{
    enumerate_configurations, opt_configurations, ConfigSolution, MAX_CONFIGURATIONS, MAX_ITEMS,
    MAX_STATES,
};
pub use enumerate::enumerate_optimal_packings;
pub use exact::{opt_exact, DEFAULT_NODE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("node budget exhausted before optimality was certified (bounds {lower}..={upper})")]
    BudgetExhausted { lower: usize, upper: usize },
    #[error("more than {limit} configurations or states; too many distinct sizes")]
    ConfigurationExplosion { limit: usize },
    #[error("more than {limit} items")]
    TooManyItems { limit: u64 },
    #[error("more than {limit} optimal packings")]
    LimitExceeded { limit: usize },
    #[error("{0} is not an item size")]
    InvalidSize(ExactSize),
}

/// A certified optimum and a packing achieving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptSolution {
    pub cost: usize,
    pub witness: Packing,
}
