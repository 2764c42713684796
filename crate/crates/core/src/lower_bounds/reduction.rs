//! String guessing with a known number of zeros, solved through binary
//! separation, solved through online bin packing.

use super::LowerBoundError;
use crate::error::Result;
use crate::model::{Packing, RequestSequence};
use crate::online::OnlineAlgorithm;
use crate::size::ExactSize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    Small,
    Large,
}

/// An online algorithm for binary separation: each value is classified
/// before its true class is revealed.
pub trait SeparationSolver {
    fn classify(&mut self, value: &ExactSize) -> Result<Class>;
    fn reveal(&mut self, actual: Class) -> Result<()>;
}

/// Knows every class in advance.
#[derive(Debug, Clone)]
pub struct CheatSeparation {
    classes: Vec<Class>,
    next: usize,
}

impl CheatSeparation {
    pub fn new(classes: Vec<Class>) -> Self {
        CheatSeparation { classes, next: 0 }
    }

    /// Classes of a guessing instance: bit 0 is large.
    pub fn for_bits(bits: &[bool]) -> Self {
        Self::new(
            bits.iter()
                .map(|&b| if b { Class::Small } else { Class::Large })
                .collect(),
        )
    }
}

impl SeparationSolver for CheatSeparation {
    fn classify(&mut self, _value: &ExactSize) -> Result<Class> {
        let class = self.classes.get(self.next).copied().unwrap_or(Class::Small);
        self.next += 1;
        Ok(class)
    }

    fn reveal(&mut self, _actual: Class) -> Result<()> {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessStep {
    /// Interval bounds before the step.
    pub small: ExactSize,
    pub large: ExactSize,
    pub value: ExactSize,
    pub class_guess: Class,
    pub bit_guess: bool,
    pub actual_bit: bool,
    pub mistake: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GuessingTrace {
    pub steps: Vec<GuessStep>,
    pub mistakes: usize,
}

/// Guesses `bits` by asking `solver` to classify the midpoint of the
/// interval between the largest value known small and the smallest known
/// large. A large guess means bit 0. The solver must have been told the
/// number of zeros.
pub fn guessing_from_separation<S: SeparationSolver + ?Sized>(
    solver: &mut S,
    bits: &[bool],
) -> Result<GuessingTrace> {
    let two = ExactSize::integer(2);
    let mut small = ExactSize::zero();
    let mut large = ExactSize::one();
    let mut trace = GuessingTrace::default();
    for &actual_bit in bits {
        let value = &(&small + &large) / &two;
        let class_guess = solver.classify(&value)?;
        let bit_guess = class_guess == Class::Small;
        let mistake = bit_guess != actual_bit;
        trace.mistakes += usize::from(mistake);
        trace.steps.push(GuessStep {
            small: small.clone(),
            large: large.clone(),
            value: value.clone(),
            class_guess,
            bit_guess,
            actual_bit,
            mistake,
        });
        if actual_bit {
            solver.reveal(Class::Small)?;
            small = value;
        } else {
            solver.reveal(Class::Large)?;
            large = value;
        }
    }
    Ok(trace)
}

/// `0 < ε_min < ε_max < 1/6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionParams {
    eps_min: ExactSize,
    eps_max: ExactSize,
}

impl ReductionParams {
    pub fn new(eps_min: ExactSize, eps_max: ExactSize) -> Result<Self, LowerBoundError> {
        if eps_min <= ExactSize::zero() || eps_min >= eps_max || eps_max >= ExactSize::ratio(1, 6) {
            return Err(LowerBoundError::InvalidParams(format!(
                "need 0 < eps_min < eps_max < 1/6, got {eps_min} and {eps_max}"
            )));
        }
        Ok(ReductionParams { eps_min, eps_max })
    }

    pub fn eps_min(&self) -> &ExactSize {
        &self.eps_min
    }

    pub fn eps_max(&self) -> &ExactSize {
        &self.eps_max
    }

    /// `f(τ) = ε_min + (ε_max - ε_min)/(1 + τ)`, decreasing in `τ > 0`.
    pub fn f(&self, tau: &ExactSize) -> ExactSize {
        let spread = &self.eps_max - &self.eps_min;
        &self.eps_min + &(&spread / &(ExactSize::one() + tau))
    }

    /// The bin packing item standing for value `τ`: `1/2 - f(τ)`.
    pub fn probe(&self, tau: &ExactSize) -> ExactSize {
        ExactSize::ratio(1, 2) - self.f(tau)
    }
}

impl Default for ReductionParams {
    fn default() -> Self {
        ReductionParams {
            eps_min: ExactSize::ratio(1, 100),
            eps_max: ExactSize::ratio(1, 10),
        }
    }
}

/// Separation through an advice-free online bin packing algorithm. `n₁`
/// items of size `1/2 + ε_min` come first; each value then becomes a probe
/// item and is called large iff the algorithm puts it next to one of them.
#[derive(Debug)]
pub struct BinPackingSeparation<A> {
    inner: A,
    params: ReductionParams,
    large_count: usize,
    items: Vec<ExactSize>,
    probe: Option<usize>,
    small_probes: Vec<usize>,
    large_probes: Vec<usize>,
}

impl<A: OnlineAlgorithm> BinPackingSeparation<A> {
    pub fn new(mut inner: A, large_count: usize, params: ReductionParams) -> Result<Self> {
        let big = ExactSize::ratio(1, 2) + params.eps_min.clone();
        let mut items = Vec::with_capacity(2 * large_count);
        for _ in 0..large_count {
            inner.serve(&big)?;
            items.push(big.clone());
        }
        Ok(BinPackingSeparation {
            inner,
            params,
            large_count,
            items,
            probe: None,
            small_probes: Vec::new(),
            large_probes: Vec::new(),
        })
    }

    /// Feeds the complements of the small probes and returns the whole
    /// instance, the algorithm's packing, and the pairing that packs it in
    /// `n` bins.
    pub fn finish(mut self) -> Result<(RequestSequence, Packing, Packing)> {
        let mut groups: Vec<Vec<usize>> = (0..self.large_count).map(|i| vec![i]).collect();
        for (slot, &probe) in self.large_probes.iter().enumerate() {
            if let Some(group) = groups.get_mut(slot) {
                group.push(probe);
            } else {
                groups.push(vec![probe]);
            }
        }
        for &probe in &self.small_probes {
            let complement = ExactSize::one() - &self.items[probe];
            self.inner.serve(&complement)?;
            groups.push(vec![probe, self.items.len()]);
            self.items.push(complement);
        }
        let seq = RequestSequence::new(self.items)?;
        let witness = Packing::from_groups(&seq, &groups)?;
        Ok((seq, self.inner.packing().clone(), witness))
    }
}

impl<A: OnlineAlgorithm> SeparationSolver for BinPackingSeparation<A> {
    fn classify(&mut self, value: &ExactSize) -> Result<Class> {
        let size = self.params.probe(value);
        let decision = self.inner.serve(&size)?;
        let index = self.items.len();
        self.items.push(size);
        self.probe = Some(index);
        let bin = &self.inner.packing().bins()[decision.bin];
        let beside_big = bin
            .contents()
            .iter()
            .any(|&i| i < self.large_count && i != index);
        Ok(if beside_big {
            Class::Large
        } else {
            Class::Small
        })
    }

    fn reveal(&mut self, actual: Class) -> Result<()> {
        let Some(index) = self.probe.take() else {
            return Err(crate::error::Error::Harness(
                "reveal without a pending value".into(),
            ));
        };
        match actual {
            Class::Small => self.small_probes.push(index),
            Class::Large => self.large_probes.push(index),
        }
        Ok(())
    }
}

/// End-to-end record of guessing `bits` through bin packing.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub guessing: GuessingTrace,
    pub instance: RequestSequence,
    pub packing: Packing,
    pub cost: usize,
    /// The pairing packing; its cost is the number of bits.
    pub witness: Packing,
    pub extra_bins: usize,
}

pub fn reduce_bin_packing<A: OnlineAlgorithm>(
    inner: A,
    bits: &[bool],
    params: ReductionParams,
) -> Result<ReductionTrace> {
    let zeros = bits.iter().filter(|&&b| !b).count();
    let mut separation = BinPackingSeparation::new(inner, zeros, params)?;
    let guessing = guessing_from_separation(&mut separation, bits)?;
    let (instance, packing, witness) = separation.finish()?;
    let cost = packing.cost();
    Ok(ReductionTrace {
        guessing,
        instance,
        extra_bins: cost.saturating_sub(witness.cost()),
        packing,
        cost,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{BestFit, FirstFit};
    use crate::model::verify_packing;
    use crate::offline::opt_exact;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn midpoints_follow_the_bits() {
        let mut cheat = CheatSeparation::for_bits(&bits("01"));
        let trace = guessing_from_separation(&mut cheat, &bits("01")).unwrap();
        assert_eq!(trace.steps[0].value, ExactSize::ratio(1, 2));
        assert_eq!(trace.steps[0].class_guess, Class::Large);
        assert_eq!(trace.steps[1].value, ExactSize::ratio(1, 4));
        assert_eq!(trace.steps[1].large, ExactSize::ratio(1, 2));
        assert_eq!(trace.steps[1].class_guess, Class::Small);
        assert_eq!(trace.mistakes, 0);
    }

    #[test]
    fn cheat_never_errs() {
        let b = bits("0110100111010001");
        let mut cheat = CheatSeparation::for_bits(&b);
        assert_eq!(
            guessing_from_separation(&mut cheat, &b).unwrap().mistakes,
            0
        );
    }

    #[test]
    fn f_is_decreasing_into_range() {
        let p = ReductionParams::default();
        let taus = [
            ExactSize::ratio(1, 1000),
            ExactSize::ratio(1, 2),
            ExactSize::ratio(999, 1000),
        ];
        for w in taus.windows(2) {
            assert!(p.f(&w[0]) > p.f(&w[1]));
            assert!(p.probe(&w[0]) < p.probe(&w[1]));
        }
        for t in &taus {
            assert!(p.f(t) > *p.eps_min() && p.f(t) < *p.eps_max());
        }
    }

    #[test]
    fn params_are_checked() {
        assert!(ReductionParams::new(ExactSize::ratio(1, 10), ExactSize::ratio(1, 100)).is_err());
        assert!(ReductionParams::new(ExactSize::ratio(1, 100), ExactSize::ratio(1, 6)).is_err());
        assert!(ReductionParams::new(ExactSize::zero(), ExactSize::ratio(1, 10)).is_err());
    }

    #[test]
    fn alternating_bits_with_best_fit() {
        let b: Vec<bool> = (0..20).map(|i| i % 2 == 1).collect();
        let trace = reduce_bin_packing(BestFit::new(), &b, ReductionParams::default()).unwrap();
        assert!(verify_packing(&trace.instance, &trace.packing));
        assert!(verify_packing(&trace.instance, &trace.witness));
        assert_eq!(trace.witness.cost(), 20);
        assert_eq!(trace.instance.len(), 40);
        assert!(trace.guessing.mistakes <= 4 * trace.extra_bins);
        for step in &trace.guessing.steps {
            assert!(step.small < step.value && step.value < step.large);
            assert_eq!(step.class_guess == Class::Small, step.bit_guess);
        }
    }

    #[test]
    fn constructed_optimum_is_exact() {
        for s in ["0", "1", "01", "10", "0011", "1100", "0101", "111000"] {
            let b = bits(s);
            let trace =
                reduce_bin_packing(FirstFit::new(), &b, ReductionParams::default()).unwrap();
            let opt = opt_exact(&trace.instance, 1_000_000).unwrap();
            assert_eq!(opt.cost, b.len());
            assert!(trace.guessing.mistakes <= 4 * trace.extra_bins);
        }
    }
}
