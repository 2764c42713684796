use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baselines::BestFit;
use crate::error::{Error, Result};
use crate::lower_bounds::{
    gen_power_sequence, gen_scaled_sequence, reduce_bin_packing, PowerFamily, ReductionParams,
};
use crate::model::RequestSequence;
use crate::size::ExactSize;

/// Denominator bound of the uniform generator.
pub const UNIFORM_DENOMINATOR: i64 = 64;
const PAIR_DENOMINATOR: i64 = 96;
const TRIPLE_DENOMINATOR: i64 = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Sizes `k/D` with `k` uniform in `1..=D`.
    Uniform,
    /// Shuffled pairs, every item above 1/3, each pair fitting one bin.
    Pairs,
    /// Shuffled triples of items in `(1/4, 1/2]`, each triple fitting one bin.
    Triples,
    /// A random member of the powers-of-two family.
    T1Family,
    /// A random member of the scaled family with capacity `2m`.
    T2Family,
    /// The instance the guessing reduction builds against Best-Fit from
    /// random bits.
    SgkhBits,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 6] = [
        GeneratorKind::Uniform,
        GeneratorKind::Pairs,
        GeneratorKind::Triples,
        GeneratorKind::T1Family,
        GeneratorKind::T2Family,
        GeneratorKind::SgkhBits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Uniform => "uniform",
            GeneratorKind::Pairs => "pairs",
            GeneratorKind::Triples => "triples",
            GeneratorKind::T1Family => "t1-family",
            GeneratorKind::T2Family => "t2-family",
            GeneratorKind::SgkhBits => "sgkh-bits",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| bad(format!("unknown generator {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorParams {
    pub n: usize,
    pub seed: u64,
    /// Uniform denominator; defaults to [`UNIFORM_DENOMINATOR`].
    pub denominator: Option<i64>,
    /// Bins of the powers-of-two family; defaults to `max(1, n/3)`.
    pub k: Option<usize>,
    /// Half capacity of the scaled family; defaults to 6.
    pub m: Option<usize>,
}

impl GeneratorParams {
    pub fn new(n: usize, seed: u64) -> Self {
        GeneratorParams {
            n,
            seed,
            denominator: None,
            k: None,
            m: None,
        }
    }
}

fn bad(msg: String) -> Error {
    Error::Harness(format!("bad generator parameters: {msg}"))
}

pub fn random_bits(n: usize, seed: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen()).collect()
}

pub fn generate(kind: GeneratorKind, params: &GeneratorParams) -> Result<RequestSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n;
    let items = match kind {
        GeneratorKind::Uniform => {
            let d = params.denominator.unwrap_or(UNIFORM_DENOMINATOR);
            if d < 1 {
                return Err(bad(format!("denominator {d} must be positive")));
            }
            (0..n)
                .map(|_| ExactSize::ratio(rng.gen_range(1..=d), d))
                .collect()
        }
        GeneratorKind::Pairs => {
            if !n.is_multiple_of(2) {
                return Err(bad(format!("pairs need an even n, got {n}")));
            }
            let d = PAIR_DENOMINATOR;
            let mut items = Vec::with_capacity(n);
            for _ in 0..n / 2 {
                let x = rng.gen_range(d / 3 + 1..d * 2 / 3);
                let slack = rng.gen_range(0..d * 2 / 3 - x);
                items.push(ExactSize::ratio(x, d));
                items.push(ExactSize::ratio(d - x - slack, d));
            }
            items.shuffle(&mut rng);
            items
        }
        GeneratorKind::Triples => {
            if !n.is_multiple_of(3) {
                return Err(bad(format!("triples need n divisible by 3, got {n}")));
            }
            let d = TRIPLE_DENOMINATOR;
            let (lo, hi) = (d / 4 + 1, d / 2);
            let mut items = Vec::with_capacity(n);
            for _ in 0..n / 3 {
                let a = rng.gen_range(lo..=hi.min(d - 2 * lo));
                let b = rng.gen_range(lo..=hi.min(d - a - lo));
                let c = rng.gen_range(lo..=hi.min(d - a - b));
                items.extend([a, b, c].map(|x| ExactSize::ratio(x, d)));
            }
            items.shuffle(&mut rng);
            items
        }
        GeneratorKind::T1Family => {
            let k = params.k.unwrap_or((n / 3).max(1));
            let family = PowerFamily::new(n, k)?;
            let index = rng.gen_range(0..family.size());
            let v = family.member(index).expect("index below family size");
            return Ok(gen_power_sequence(&v));
        }
        GeneratorKind::T2Family => {
            let m = params.m.unwrap_or(6);
            if m < 3 || !n.is_multiple_of(2) {
                return Err(bad(format!(
                    "t2-family needs m >= 3 and even n (m={m}, n={n})"
                )));
            }
            let mut levels = vec![0usize; m - 2];
            let mut rest = n / 2;
            while rest > 0 {
                let level = rng.gen_range(1..=rest.min(m - 2));
                levels[level - 1] += 1;
                rest -= level;
            }
            return Ok(gen_scaled_sequence(n, m, &levels)?.sequence);
        }
        GeneratorKind::SgkhBits => {
            let bits = random_bits(n, params.seed);
            let trace = reduce_bin_packing(BestFit::new(), &bits, ReductionParams::default())?;
            return Ok(trace.instance);
        }
    };
    Ok(RequestSequence::new(items)?)
}
