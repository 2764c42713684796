//! Integer scaling of exact sizes for the search routines.
//!
//! Sizes are multiplied by the common denominator so the hot loops add
//! machine integers. When that denominator is too large for `u128` the
//! searches fall back to exact rationals.

#[cfg(test)]
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::size::{common_denominator, ExactSize};

pub(crate) trait Weight: Clone + Ord + std::fmt::Debug {
    fn zero() -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    /// `⌈self / cap⌉`.
    fn bins_for(&self, cap: &Self) -> usize;
}

impl Weight for u128 {
    fn zero() -> Self {
        0
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn bins_for(&self, cap: &Self) -> usize {
        self.div_ceil(*cap) as usize
    }
}

impl Weight for ExactSize {
    fn zero() -> Self {
        ExactSize::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn bins_for(&self, cap: &Self) -> usize {
        (self / cap).ceil().to_usize().unwrap_or(usize::MAX)
    }
}

pub(crate) enum Scaled {
    Int {
        weights: Vec<u128>,
        cap: u128,
    },
    Exact {
        weights: Vec<ExactSize>,
        cap: ExactSize,
    },
}

/// Headroom so that sums of up to 2^24 scaled items stay in range.
const MAX_SCALE_BITS: u64 = 100;

pub(crate) fn scale(sizes: &[ExactSize]) -> Scaled {
    let lcm = common_denominator(sizes);
    if lcm.bits() <= MAX_SCALE_BITS && sizes.len() < (1 << 24) {
        let weights: Option<Vec<u128>> = sizes
            .iter()
            .map(|s| (s.numer() * (&lcm / s.denom())).to_u128())
            .collect();
        if let (Some(weights), Some(cap)) = (weights, lcm.to_u128()) {
            return Scaled::Int { weights, cap };
        }
    }
    Scaled::Exact {
        weights: sizes.to_vec(),
        cap: ExactSize::one(),
    }
}

#[cfg(test)]
fn lcm_bits(sizes: &[ExactSize]) -> u64 {
    let lcm: BigInt = common_denominator(sizes);
    lcm.bits()
}
