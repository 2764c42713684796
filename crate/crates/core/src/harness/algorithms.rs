use std::fmt;
use std::str::FromStr;

use crate::advice::{
    distinct_replay_advice_bits, four_thirds_header_bits, four_thirds_oracle, frequency_oracle,
    full_index_advice, full_index_advice_bound, pair_packer_oracle, three_halves_advice_bits,
    three_halves_oracle, DistinctReplay, FourThirds, FourThirdsParams, FullIndex, PairPacker,
    ThreeHalves,
};
use crate::baselines::{BestFit, FirstFit, Harmonic, NextFit};
use crate::error::{Error, Result};
use crate::model::{RequestSequence, RunResult};
use crate::offline::{opt_exact, OptSolution};
use crate::online::{run_online, OnlineAlgorithm};
use crate::size::ExactSize;
use crate::tape::BitString;

/// An algorithm as named on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AlgorithmId {
    NextFit,
    FirstFit,
    BestFit,
    Harmonic(u32),
    FullIndex,
    Distinct,
    ThreeHalves,
    FourThirds(ExactSize),
    Pair,
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgorithmId::NextFit => f.write_str("nf"),
            AlgorithmId::FirstFit => f.write_str("ff"),
            AlgorithmId::BestFit => f.write_str("bf"),
            AlgorithmId::Harmonic(k) => write!(f, "harmonic:{k}"),
            AlgorithmId::FullIndex => f.write_str("full-index"),
            AlgorithmId::Distinct => f.write_str("distinct"),
            AlgorithmId::ThreeHalves => f.write_str("three-halves"),
            AlgorithmId::FourThirds(eps) => write!(f, "four-thirds:{eps}"),
            AlgorithmId::Pair => f.write_str("pair"),
        }
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::Harness(format!("unknown algorithm {s:?}"));
        Ok(match s.split_once(':') {
            None => match s {
                "nf" => AlgorithmId::NextFit,
                "ff" => AlgorithmId::FirstFit,
                "bf" => AlgorithmId::BestFit,
                "full-index" => AlgorithmId::FullIndex,
                "distinct" => AlgorithmId::Distinct,
                "three-halves" => AlgorithmId::ThreeHalves,
                "pair" => AlgorithmId::Pair,
                _ => return Err(unknown()),
            },
            Some(("harmonic", k)) => {
                let k: u32 = k.parse().map_err(|_| unknown())?;
                if k == 0 {
                    return Err(Error::Harness("harmonic needs K >= 1".into()));
                }
                AlgorithmId::Harmonic(k)
            }
            Some(("four-thirds", eps)) => {
                let eps: ExactSize = eps.parse().map_err(|_| unknown())?;
                FourThirdsParams::new(eps.clone())?;
                AlgorithmId::FourThirds(eps)
            }
            Some(_) => return Err(unknown()),
        })
    }
}

/// How the advice read by a run is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdviceBudget {
    Exactly(u64),
    AtMost(u64),
}

impl AdviceBudget {
    pub fn admits(self, bits: u64) -> bool {
        match self {
            AdviceBudget::Exactly(b) => bits == b,
            AdviceBudget::AtMost(b) => bits <= b,
        }
    }
}

/// Distinct sizes of `seq` in order of first appearance.
pub fn universe_of(seq: &RequestSequence) -> Vec<ExactSize> {
    let mut universe: Vec<ExactSize> = Vec::new();
    for size in seq {
        if !universe.contains(size) {
            universe.push(size.clone());
        }
    }
    universe
}

impl AlgorithmId {
    pub fn uses_advice(&self) -> bool {
        !matches!(
            self,
            AlgorithmId::NextFit
                | AlgorithmId::FirstFit
                | AlgorithmId::BestFit
                | AlgorithmId::Harmonic(_)
        )
    }

    /// Writes the tape for `seq`. `opt` is reused when given.
    pub fn oracle(
        &self,
        seq: &RequestSequence,
        opt: Option<&OptSolution>,
        node_budget: u64,
    ) -> Result<Option<BitString>> {
        Ok(Some(match self {
            AlgorithmId::FullIndex => match opt {
                Some(opt) => full_index_advice(seq, &opt.witness)?,
                None => full_index_advice(seq, &opt_exact(seq, node_budget)?.witness)?,
            },
            AlgorithmId::Distinct => frequency_oracle(seq, &universe_of(seq))?,
            AlgorithmId::ThreeHalves => three_halves_oracle(seq)?,
            AlgorithmId::FourThirds(eps) => {
                four_thirds_oracle(seq, &FourThirdsParams::new(eps.clone())?, node_budget)?
            }
            AlgorithmId::Pair => pair_packer_oracle(seq, node_budget)?,
            _ => return Ok(None),
        }))
    }

    /// The online algorithm, reading `tape` if it takes advice.
    pub fn build(
        &self,
        seq: &RequestSequence,
        tape: BitString,
    ) -> Result<Box<dyn OnlineAlgorithm>> {
        Ok(match self {
            AlgorithmId::NextFit => Box::new(NextFit::new()),
            AlgorithmId::FirstFit => Box::new(FirstFit::new()),
            AlgorithmId::BestFit => Box::new(BestFit::new()),
            AlgorithmId::Harmonic(k) => Box::new(Harmonic::new(*k)),
            AlgorithmId::FullIndex => Box::new(FullIndex::new(tape, seq.len())),
            AlgorithmId::Distinct => Box::new(DistinctReplay::new(tape, universe_of(seq))?),
            AlgorithmId::ThreeHalves => Box::new(ThreeHalves::new(tape)),
            AlgorithmId::FourThirds(eps) => {
                Box::new(FourThirds::new(tape, FourThirdsParams::new(eps.clone())?)?)
            }
            AlgorithmId::Pair => Box::new(PairPacker::new(tape)),
        })
    }

    /// Declared advice budget, given the optimum where it matters.
    pub fn advice_budget(&self, seq: &RequestSequence, opt: Option<usize>) -> Option<AdviceBudget> {
        let n = seq.len();
        Some(match self {
            AlgorithmId::FullIndex => AdviceBudget::AtMost(full_index_advice_bound(n, opt?)),
            AlgorithmId::Distinct => {
                AdviceBudget::Exactly(distinct_replay_advice_bits(n, universe_of(seq).len()))
            }
            AlgorithmId::ThreeHalves => AdviceBudget::Exactly(three_halves_advice_bits(n)),
            AlgorithmId::FourThirds(eps) => {
                let params = FourThirdsParams::new(eps.clone()).ok()?;
                AdviceBudget::AtMost(2 * n as u64 + four_thirds_header_bits(n, &params))
            }
            AlgorithmId::Pair => AdviceBudget::Exactly(n as u64),
            _ => AdviceBudget::Exactly(0),
        })
    }

    /// Whether `cost` meets the algorithm's guarantee; `None` when it has
    /// none.
    pub fn guarantee_holds(&self, n: usize, cost: usize, opt: usize) -> Option<bool> {
        match self {
            AlgorithmId::FullIndex | AlgorithmId::Distinct => Some(cost == opt),
            AlgorithmId::ThreeHalves => Some(2 * cost <= 3 * opt + 6),
            AlgorithmId::FourThirds(eps) => {
                let bound = &(&(ExactSize::ratio(4, 3) + eps.clone())
                    * &ExactSize::from(opt as i64))
                    + &ExactSize::integer(3);
                Some(ExactSize::from(cost as i64) <= bound)
            }
            AlgorithmId::Pair => Some(2 * cost == n),
            _ => None,
        }
    }
}

/// One run with the tape it used.
#[derive(Debug, Clone)]
pub struct AlgorithmRun {
    pub result: RunResult,
    pub tape: Option<BitString>,
}

/// Writes the advice (if any) and runs the algorithm on `seq`.
pub fn run_algorithm(
    id: &AlgorithmId,
    seq: &RequestSequence,
    opt: Option<&OptSolution>,
    node_budget: u64,
) -> Result<AlgorithmRun> {
    let tape = id.oracle(seq, opt, node_budget)?;
    let result = run_with_tape(id, seq, tape.clone().unwrap_or_default())?;
    Ok(AlgorithmRun { result, tape })
}

/// Runs `id` on `seq` with a given tape.
pub fn run_with_tape(
    id: &AlgorithmId,
    seq: &RequestSequence,
    tape: BitString,
) -> Result<RunResult> {
    let mut algo = id.build(seq, tape)?;
    run_online(&mut algo, seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::verify_packing;

    #[test]
    fn names_round_trip() {
        for name in [
            "nf",
            "ff",
            "bf",
            "harmonic:3",
            "full-index",
            "distinct",
            "three-halves",
            "four-thirds:1/12",
            "pair",
        ] {
            assert_eq!(name.parse::<AlgorithmId>().unwrap().to_string(), name);
        }
        for bad in [
            "xf",
            "harmonic:0",
            "harmonic:x",
            "four-thirds:1/10",
            "pair:2",
        ] {
            assert!(bad.parse::<AlgorithmId>().is_err(), "{bad}");
        }
    }

    #[test]
    fn every_algorithm_runs() {
        let seq = RequestSequence::new(
            ["0.6", "0.4", "0.7", "0.3"]
                .iter()
                .map(|s| s.parse().unwrap())
                .collect(),
        )
        .unwrap();
        let opt = opt_exact(&seq, 10_000).unwrap();
        for name in [
            "nf",
            "ff",
            "bf",
            "harmonic:3",
            "full-index",
            "distinct",
            "three-halves",
            "four-thirds:1/12",
            "pair",
        ] {
            let id: AlgorithmId = name.parse().unwrap();
            let run = run_algorithm(&id, &seq, Some(&opt), 10_000).unwrap();
            assert!(verify_packing(&seq, &run.result.packing));
            assert_ne!(
                id.guarantee_holds(seq.len(), run.result.cost, opt.cost),
                Some(false),
                "{name}"
            );
            let budget = id.advice_budget(&seq, Some(opt.cost)).unwrap();
            assert!(budget.admits(run.result.advice_bits_read), "{name}");
            assert_eq!(run.tape.is_some(), id.uses_advice());
        }
    }

    #[test]
    fn universe_keeps_first_appearance_order() {
        let seq = RequestSequence::new(vec![
            ExactSize::ratio(1, 2),
            ExactSize::ratio(1, 3),
            ExactSize::ratio(1, 2),
        ])
        .unwrap();
        assert_eq!(
            universe_of(&seq),
            vec![ExactSize::ratio(1, 2), ExactSize::ratio(1, 3)]
        );
    }
}
