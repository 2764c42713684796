use num_traits::ToPrimitive;

use super::pair::PairPool;
use super::AdviceError;
use crate::baselines::{FirstFitPool, HarmonicPool, Pool};
use crate::error::Result;
use crate::model::{Decision, Packing, RequestSequence, Target};
use crate::offline::{opt_configurations, opt_exact, ConfigSolution};
use crate::online::{place_next, OnlineAlgorithm};
use crate::size::ExactSize;
use crate::tape::{bit_len, self_delimited_len, AdviceTape, BitString};

/// Derived constants for a target ratio `4/3 + ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourThirdsParams {
    epsilon: ExactSize,
    epsilon_prime: ExactSize,
    tiny: ExactSize,
    grid: u64,
}

impl FourThirdsParams {
    /// Requires `0 < ε < 1/11`, so that `ε′ = 11ε/60 < 1/60`.
    pub fn new(epsilon: ExactSize) -> Result<Self, AdviceError> {
        if epsilon <= ExactSize::zero() || epsilon >= ExactSize::ratio(1, 11) {
            return Err(AdviceError::InvalidParameter(format!(
                "epsilon {epsilon} is not in (0, 1/11)"
            )));
        }
        let epsilon_prime = &epsilon * &ExactSize::ratio(11, 60);
        let grid = (ExactSize::one() / &epsilon_prime)
            .ceil()
            .to_u64()
            .ok_or_else(|| {
                AdviceError::InvalidParameter(format!("epsilon {epsilon} is too small"))
            })?;
        Ok(FourThirdsParams {
            tiny: &epsilon_prime * &ExactSize::integer(5),
            epsilon,
            epsilon_prime,
            grid,
        })
    }

    pub fn epsilon(&self) -> &ExactSize {
        &self.epsilon
    }

    pub fn epsilon_prime(&self) -> &ExactSize {
        &self.epsilon_prime
    }

    /// `5ε′`: bad-bin items below it are tiny; good bins hold at least this
    /// much in items under 1/4.
    pub fn tiny_threshold(&self) -> &ExactSize {
        &self.tiny
    }

    /// Number of rounding classes, `⌈1/ε′⌉`.
    pub fn grid(&self) -> u64 {
        self.grid
    }

    /// Rounding class `⌈x/ε′⌉`, in `1..=grid`.
    pub fn class_of(&self, size: &ExactSize) -> u64 {
        let class = (size / &self.epsilon_prime)
            .ceil()
            .to_u64()
            .unwrap_or(u64::MAX);
        class.clamp(1, self.grid)
    }

    /// Reserved size for a class: `min(class·ε′, 1)`.
    pub fn rounded(&self, class: u64) -> ExactSize {
        let size = &self.epsilon_prime * &ExactSize::from(class as i64);
        size.min(ExactSize::one())
    }

    /// Good-bin items above 1/6 get reserved space.
    pub fn is_large(size: &ExactSize) -> bool {
        *size > ExactSize::ratio(1, 6)
    }
}

/// Two advice bits per item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ItemCode {
    /// `00`: packed in a good bin of the optimum.
    Good,
    /// `01`: bad and tiny, alone in the normal-item repacking, or one of
    /// three or more there.
    BadTypeOneOrThree,
    /// `1b`: one of two normal items sharing a bin; `b` says whether the
    /// other one came first.
    BadPair { partner_seen: bool },
}

impl ItemCode {
    pub fn bits(self) -> [bool; 2] {
        match self {
            ItemCode::Good => [false, false],
            ItemCode::BadTypeOneOrThree => [false, true],
            ItemCode::BadPair { partner_seen } => [true, partner_seen],
        }
    }

    pub fn from_bits(bits: [bool; 2]) -> Self {
        match bits {
            [false, false] => ItemCode::Good,
            [false, true] => ItemCode::BadTypeOneOrThree,
            [true, partner_seen] => ItemCode::BadPair { partner_seen },
        }
    }
}

/// Number of normal items sharing the item's bin in the repacking of
/// bad-bin normal items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormalType {
    One,
    Two,
    Three,
}

/// Everything the oracle derives from an optimal packing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourThirdsPlan {
    pub opt: usize,
    pub good_bins: usize,
    pub bad_bins: usize,
    /// Items in bad bins below the tiny threshold.
    pub tiny_bad: Vec<usize>,
    /// Per item; `None` for good and tiny items.
    pub normal_types: Vec<Option<NormalType>>,
    pub codes: Vec<ItemCode>,
    /// Good items above 1/6 per rounding class, class `c` at index `c - 1`.
    pub class_counts: Vec<u64>,
}

pub fn four_thirds_plan(
    seq: &RequestSequence,
    params: &FourThirdsParams,
    node_budget: u64,
) -> Result<FourThirdsPlan> {
    let n = seq.len();
    let opt = opt_exact(seq, node_budget)?;
    let quarter = ExactSize::ratio(1, 4);
    let mut good = vec![false; n];
    let mut good_bins = 0;
    let mut bad_bins = 0;
    for bin in opt.witness.bins().iter().filter(|b| !b.is_empty()) {
        let under_quarter: ExactSize = bin
            .contents()
            .iter()
            .map(|&i| &seq.items()[i])
            .filter(|&s| *s < quarter)
            .sum();
        if under_quarter >= *params.tiny_threshold() {
            good_bins += 1;
            for &i in bin.contents() {
                good[i] = true;
            }
        } else {
            bad_bins += 1;
        }
    }

    let mut class_counts = vec![0u64; params.grid() as usize];
    for (i, size) in seq.iter().enumerate() {
        if good[i] && FourThirdsParams::is_large(size) {
            class_counts[params.class_of(size) as usize - 1] += 1;
        }
    }

    let mut tiny_bad = Vec::new();
    let mut normal = Vec::new();
    for (i, size) in seq.iter().enumerate() {
        if good[i] {
            continue;
        }
        if size < params.tiny_threshold() {
            tiny_bad.push(i);
        } else {
            normal.push(i);
        }
    }
    let normal_seq =
        RequestSequence::new(normal.iter().map(|&i| seq.items()[i].clone()).collect())?;
    let repacked = opt_exact(&normal_seq, node_budget)?;

    let mut normal_types = vec![None; n];
    let mut codes = vec![ItemCode::Good; n];
    for &i in &tiny_bad {
        codes[i] = ItemCode::BadTypeOneOrThree;
    }
    for bin in repacked.witness.bins().iter().filter(|b| !b.is_empty()) {
        let members: Vec<usize> = bin.contents().iter().map(|&j| normal[j]).collect();
        match members[..] {
            [a, b] => {
                normal_types[a] = Some(NormalType::Two);
                normal_types[b] = Some(NormalType::Two);
                codes[a] = ItemCode::BadPair {
                    partner_seen: b < a,
                };
                codes[b] = ItemCode::BadPair {
                    partner_seen: a < b,
                };
            }
            _ => {
                let kind = if members.len() == 1 {
                    NormalType::One
                } else {
                    NormalType::Three
                };
                for &i in &members {
                    normal_types[i] = Some(kind);
                    codes[i] = ItemCode::BadTypeOneOrThree;
                }
            }
        }
    }

    Ok(FourThirdsPlan {
        opt: opt.cost,
        good_bins,
        bad_bins,
        tiny_bad,
        normal_types,
        codes,
        class_counts,
    })
}

/// Header: `n` self-delimited, then one `⌈log(n+1)⌉`-bit count per
/// rounding class. Then two bits per item in arrival order.
pub fn four_thirds_oracle(
    seq: &RequestSequence,
    params: &FourThirdsParams,
    node_budget: u64,
) -> Result<BitString> {
    let plan = four_thirds_plan(seq, params, node_budget)?;
    let width = bit_len(seq.len() as u64);
    let mut tape = BitString::new();
    tape.push_self_delimited(seq.len() as u64);
    for &count in &plan.class_counts {
        tape.push_fixed(count, width)?;
    }
    for code in plan.codes {
        for bit in code.bits() {
            tape.push(bit);
        }
    }
    Ok(tape)
}

pub fn four_thirds_header_bits(n: usize, params: &FourThirdsParams) -> u64 {
    self_delimited_len(n as u64) + params.grid() * u64::from(bit_len(n as u64))
}

#[derive(Debug, Clone)]
struct GoodBin {
    free: Vec<u64>,
    // reserved space of missing large items plus everything placed
    level: ExactSize,
    physical: Option<usize>,
}

/// Good items go into a reserved-slot packing of their rounded sizes; bad
/// items are split by their code between a tiny First-Fit pool, single
/// bins, the pair strategy and Harmonic.
#[derive(Debug, Clone)]
pub struct FourThirds {
    tape: AdviceTape,
    params: FourThirdsParams,
    plan: ConfigSolution,
    good: Vec<GoodBin>,
    tiny: FirstFitPool,
    pairs: PairPool,
    harmonic: HarmonicPool,
    fallback: FirstFitPool,
    packing: Packing,
    inconsistent: bool,
}

impl FourThirds {
    pub fn new(tape: BitString, params: FourThirdsParams) -> Result<Self> {
        let mut tape = AdviceTape::new(tape);
        let n = tape.read_self_delimited();
        let width = bit_len(n);
        let counts: Vec<(ExactSize, u64)> = (1..=params.grid())
            .map(|class| (params.rounded(class), tape.read_fixed(width)))
            .collect();
        // counts that cannot belong to an n-item sequence, or that the solver
        // refuses, leave every large item to the fallback
        let total = counts
            .iter()
            .try_fold(0u64, |acc, (_, k)| acc.checked_add(*k));
        let plan = match total
            .filter(|&t| t <= n)
            .map(|_| opt_configurations(&counts))
        {
            Some(Ok(plan)) => Some(plan),
            _ => None,
        };
        let inconsistent = plan.is_none();
        let plan = plan.unwrap_or_else(|| ConfigSolution {
            sizes: counts.into_iter().map(|(size, _)| size).collect(),
            bins: Vec::new(),
        });
        let good = plan
            .bins
            .iter()
            .map(|slots| GoodBin {
                level: slots
                    .iter()
                    .zip(&plan.sizes)
                    .map(|(&k, size)| size * &ExactSize::from(k as i64))
                    .sum(),
                free: slots.clone(),
                physical: None,
            })
            .collect();
        Ok(FourThirds {
            tape,
            params,
            plan,
            good,
            tiny: FirstFitPool::default(),
            pairs: PairPool::default(),
            harmonic: HarmonicPool::new(3),
            fallback: FirstFitPool::default(),
            packing: Packing::new(),
            inconsistent,
        })
    }

    pub fn params(&self) -> &FourThirdsParams {
        &self.params
    }

    /// The approximate packing of good large items read from the header.
    pub fn reserved_plan(&self) -> &ConfigSolution {
        &self.plan
    }

    fn fallback(&mut self, size: &ExactSize) -> Result<Decision> {
        self.inconsistent = true;
        Ok(self.fallback.place(&mut self.packing, size)?)
    }

    fn put_good(&mut self, bin: usize, size: &ExactSize) -> Result<Decision> {
        let target = self.good[bin]
            .physical
            .map_or(Target::New, Target::Existing);
        let decision = place_next(&mut self.packing, target, size)?;
        self.good[bin].physical = Some(decision.bin);
        Ok(decision)
    }

    fn serve_good(&mut self, size: &ExactSize) -> Result<Decision> {
        if FourThirdsParams::is_large(size) {
            let class = self.params.class_of(size);
            let slot = class as usize - 1;
            let Some(bin) = self.good.iter().position(|b| b.free[slot] > 0) else {
                return self.fallback(size);
            };
            let decision = self.put_good(bin, size)?;
            let reserved = self.params.rounded(class);
            let b = &mut self.good[bin];
            b.free[slot] -= 1;
            b.level = &(&b.level - &reserved) + size;
            return Ok(decision);
        }
        let one = ExactSize::one();
        let bin = match self.good.iter().position(|b| &b.level + size <= one) {
            Some(bin) => bin,
            None => {
                self.good.push(GoodBin {
                    free: vec![0; self.params.grid() as usize],
                    level: ExactSize::zero(),
                    physical: None,
                });
                self.good.len() - 1
            }
        };
        let decision = self.put_good(bin, size)?;
        self.good[bin].level += size;
        Ok(decision)
    }
}

impl OnlineAlgorithm for FourThirds {
    fn name(&self) -> String {
        format!("four-thirds:{}", self.params.epsilon())
    }

    fn serve(&mut self, size: &ExactSize) -> Result<Decision> {
        let code = ItemCode::from_bits([self.tape.read_bit(), self.tape.read_bit()]);
        match code {
            ItemCode::Good => self.serve_good(size),
            ItemCode::BadTypeOneOrThree if size < self.params.tiny_threshold() => {
                Ok(self.tiny.place(&mut self.packing, size)?)
            }
            ItemCode::BadTypeOneOrThree if *size > ExactSize::ratio(1, 2) => {
                Ok(place_next(&mut self.packing, Target::New, size)?)
            }
            ItemCode::BadTypeOneOrThree => Ok(self.harmonic.place(&mut self.packing, size)?),
            ItemCode::BadPair { partner_seen } => {
                match self.pairs.place(&mut self.packing, size, partner_seen)? {
                    Some(decision) => Ok(decision),
                    None => self.fallback(size),
                }
            }
        }
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
