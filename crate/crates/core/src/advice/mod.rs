//! Online algorithms that read an advice tape, each with the offline oracle
//! that writes it.
//!
//! | algorithm | advice | guarantee |
//! |---|---|---|
//! | [`FullIndex`] | `⌈log OPT⌉` bits per item | optimal |
//! | [`DistinctReplay`] | one count per distinct size | optimal |
//! | [`ThreeHalves`] | number of items in `(1/2, 2/3]` | `3/2·OPT + 3` |
//! | [`PairPacker`] | one bit per item | optimal on two-per-bin instances |
//! | [`FourThirds`] | two bits per item plus a header | `(4/3 + ε)·OPT + 3` |
//!
//! Oracles may solve the offline problem; algorithms only see the tape and
//! the items revealed so far. When the tape contradicts the input the
//! algorithm raises its `advice_inconsistent` flag and falls back to a plain
//! strategy instead of aborting.

mod distinct;
mod four_thirds;
mod full_index;
mod harmonic3;
mod pair;
mod three_halves;

use thiserror::Error;

use crate::size::ExactSize;

pub use distinct::{distinct_replay_advice_bits, frequency_oracle, DistinctReplay};
pub use four_thirds::{
    four_thirds_header_bits, four_thirds_oracle, four_thirds_plan, FourThirds, FourThirdsParams,
    FourThirdsPlan, ItemCode, NormalType,
};
pub use full_index::{full_index_advice, full_index_advice_bound, full_index_oracle, FullIndex};
pub use harmonic3::{harmonic_type3, harmonic_weight};
pub use pair::{pair_advice_from_witness, pair_packer_oracle, PairPacker, PairPool};
pub use three_halves::{
    three_halves_advice_bits, three_halves_class, three_halves_oracle, SizeClass, ThreeHalves,
    ThreeHalvesBin,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdviceError {
    #[error("item of size {0} is not in the declared universe")]
    UnknownSize(ExactSize),
    #[error("advice requires a bin for item #{item} but none has room")]
    NoFeasibleBin { item: usize },
    #[error("item #{item} has size {size}, outside {range}")]
    OutOfRange {
        item: usize,
        size: ExactSize,
        range: &'static str,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("optimal packing has a bin with {items} items; two per bin required")]
    NotPairable { items: usize },
}
