use super::AdviceError;
use crate::baselines::{FirstFitPool, Pool};
use crate::error::Result;
use crate::model::{Decision, Packing, RequestSequence, Target};
use crate::offline::{opt_configurations, ConfigSolution};
use crate::online::{place_next, OnlineAlgorithm};
use crate::size::ExactSize;
use crate::tape::{bit_len, self_delimited_len, AdviceTape, BitString};

fn check_universe(universe: &[ExactSize]) -> Result<(), AdviceError> {
    for (i, size) in universe.iter().enumerate() {
        if !size.is_item_size() {
            return Err(AdviceError::InvalidParameter(format!(
                "universe size {size} is not in (0, 1]"
            )));
        }
        if universe[..i].contains(size) {
            return Err(AdviceError::InvalidParameter(format!(
                "universe lists {size} twice"
            )));
        }
    }
    Ok(())
}

/// Writes how often each universe size occurs: `X = ⌈log(n+1)⌉`
/// self-delimited, then one `X`-bit count per universe entry.
pub fn frequency_oracle(seq: &RequestSequence, universe: &[ExactSize]) -> Result<BitString> {
    check_universe(universe)?;
    let mut counts = vec![0u64; universe.len()];
    for size in seq {
        let class = universe
            .iter()
            .position(|u| u == size)
            .ok_or_else(|| AdviceError::UnknownSize(size.clone()))?;
        counts[class] += 1;
    }
    let width = bit_len(seq.len() as u64);
    let mut tape = BitString::new();
    tape.push_self_delimited(u64::from(width));
    for count in counts {
        tape.push_fixed(count, width)?;
    }
    Ok(tape)
}

/// `m⌈log(n+1)⌉ + e(⌈log(n+1)⌉)`.
pub fn distinct_replay_advice_bits(n: usize, universe_len: usize) -> u64 {
    let width = u64::from(bit_len(n as u64));
    universe_len as u64 * width + self_delimited_len(width)
}

/// Reads the multiset of sizes, solves it offline, and fills the optimal
/// configurations as items arrive: each item takes the first witness bin
/// with a free slot of its exact size.
#[derive(Debug, Clone)]
pub struct DistinctReplay {
    tape: AdviceTape,
    universe: Vec<ExactSize>,
    plan: ConfigSolution,
    free_slots: Vec<Vec<u64>>,
    physical: Vec<Option<usize>>,
    fallback: FirstFitPool,
    packing: Packing,
    inconsistent: bool,
}

impl DistinctReplay {
    pub fn new(tape: BitString, universe: Vec<ExactSize>) -> Result<Self> {
        check_universe(&universe)?;
        let mut tape = AdviceTape::new(tape);
        let width = tape.read_self_delimited().min(64) as u32;
        let counts: Vec<(ExactSize, u64)> = universe
            .iter()
            .map(|size| (size.clone(), tape.read_fixed(width)))
            .collect();
        // counts no solver run can cover are inconsistent advice
        let (plan, inconsistent) = match opt_configurations(&counts) {
            Ok(plan) => (plan, false),
            Err(_) => (
                ConfigSolution {
                    sizes: universe.clone(),
                    bins: Vec::new(),
                },
                true,
            ),
        };
        Ok(DistinctReplay {
            tape,
            free_slots: plan.bins.clone(),
            physical: vec![None; plan.bins.len()],
            plan,
            universe,
            fallback: FirstFitPool::default(),
            packing: Packing::new(),
            inconsistent,
        })
    }

    /// The offline plan the algorithm follows.
    pub fn plan(&self) -> &ConfigSolution {
        &self.plan
    }
}

impl OnlineAlgorithm for DistinctReplay {
    fn name(&self) -> String {
        "distinct".into()
    }

    fn serve(&mut self, size: &ExactSize) -> Result<Decision> {
        let class = self
            .universe
            .iter()
            .position(|u| u == size)
            .ok_or_else(|| AdviceError::UnknownSize(size.clone()))?;
        let Some(slot) = self.free_slots.iter().position(|free| free[class] > 0) else {
            self.inconsistent = true;
            return Ok(self.fallback.place(&mut self.packing, size)?);
        };
        self.free_slots[slot][class] -= 1;
        let target = self.physical[slot].map_or(Target::New, Target::Existing);
        let decision = place_next(&mut self.packing, target, size)?;
        self.physical[slot] = Some(decision.bin);
        Ok(decision)
    }

    fn packing(&self) -> &Packing {
        &self.packing
    }

    fn advice_bits_read(&self) -> u64 {
        self.tape.bits_accessed()
    }

    fn advice_inconsistent(&self) -> bool {
        self.inconsistent
    }
}
