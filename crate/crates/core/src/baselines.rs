//! Advice-free online strategies: Next-Fit, First-Fit, Best-Fit and Harmonic.
//!
//! Each strategy is a *pool*: a set of bins it manages inside a shared
//! [`Packing`]. Composite algorithms run several pools side by side on one
//! packing; the plain baselines are a single pool wrapped in [`Baseline`].

use num_traits::ToPrimitive;

use crate::error::Result;
use crate::model::{Decision, ModelError, Packing, Target};
use crate::online::{place_next, OnlineAlgorithm};
use crate::size::ExactSize;

/// A strategy managing its own subset of the bins of a shared packing.
pub trait Pool {
    fn place(&mut self, packing: &mut Packing, size: &ExactSize) -> Result<Decision, ModelError>;
}

/// First bin (in the given order) with room for `size`.
pub fn first_fit_choice(
    packing: &Packing,
    bins: impl IntoIterator<Item = usize>,
    size: &ExactSize,
) -> Option<usize> {
    bins.into_iter()
        .find(|&b| packing.bin(b).is_some_and(|bin| bin.fits(size)))
}

/// Feasible bin with the least residual capacity; ties go to the lowest index.
pub fn best_fit_choice(
    packing: &Packing,
    bins: impl IntoIterator<Item = usize>,
    size: &ExactSize,
) -> Option<usize> {
    bins.into_iter()
        .filter_map(|b| {
            let bin = packing.bin(b)?;
            bin.fits(size).then(|| (bin.residual(), b))
        })
        .min()
        .map(|(_, b)| b)
}

/// Keeps a single open bin; closes it when the next item does not fit.
#[derive(Debug, Clone, Default)]
pub struct NextFitPool {
    open: Option<usize>,
}

impl NextFitPool {
    pub fn open_bin(&self) -> Option<usize> {
        self.open
    }
}

impl Pool for NextFitPool {
    fn place(&mut self, packing: &mut Packing, size: &ExactSize) -> Result<Decision, ModelError> {
        let target = match self.open {
            Some(b) if packing.bin(b).is_some_and(|bin| bin.fits(size)) => Target::Existing(b),
            _ => Target::New,
        };
        let decision = place_next(packing, target, size)?;
        self.open = Some(decision.bin);
        Ok(decision)
    }
}

#[derive(Debug, Clone, Default)]
pub struct FirstFitPool {
    bins: Vec<usize>,
}

impl FirstFitPool {
    pub fn bins(&self) -> &[usize] {
        &self.bins
    }
}

impl Pool for FirstFitPool {
    fn place(&mut self, packing: &mut Packing, size: &ExactSize) -> Result<Decision, ModelError> {
        match first_fit_choice(packing, self.bins.iter().copied(), size) {
            Some(b) => place_next(packing, Target::Existing(b), size),
            None => {
                let decision = place_next(packing, Target::New, size)?;
                self.bins.push(decision.bin);
                Ok(decision)
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BestFitPool {
    bins: Vec<usize>,
}

impl BestFitPool {
    pub fn bins(&self) -> &[usize] {
        &self.bins
    }
}

impl Pool for BestFitPool {
    fn place(&mut self, packing: &mut Packing, size: &ExactSize) -> Result<Decision, ModelError> {
        match best_fit_choice(packing, self.bins.iter().copied(), size) {
            Some(b) => place_next(packing, Target::Existing(b), size),
            None => {
                let decision = place_next(packing, Target::New, size)?;
                self.bins.push(decision.bin);
                Ok(decision)
            }
        }
    }
}

/// Harmonic type of an item: `i` for sizes in `(1/(i+1), 1/i]` when `i < k`,
/// and `k` for sizes in `(0, 1/k]`.
pub fn harmonic_type(size: &ExactSize, k: u32) -> u32 {
    debug_assert!(size.is_item_size());
    let inverse = (ExactSize::one() / size).floor();
    inverse.to_u32().unwrap_or(u32::MAX).clamp(1, k.max(1))
}

/// Harmonic_K: Next-Fit run separately for each item type.
#[derive(Debug, Clone)]
pub struct HarmonicPool {
    k: u32,
    classes: Vec<NextFitPool>,
}

impl HarmonicPool {
    pub fn new(k: u32) -> Self {
        assert!(k >= 1, "Harmonic needs K >= 1");
        HarmonicPool {
            k,
            classes: vec![NextFitPool::default(); k as usize],
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

impl Pool for HarmonicPool {
    fn place(&mut self, packing: &mut Packing, size: &ExactSize) -> Result<Decision, ModelError> {
        let class = harmonic_type(size, self.k) as usize - 1;
        self.classes[class].place(packing, size)
    }
}

/// A plain online algorithm made of a single pool over all bins.
#[derive(Debug, Clone)]
pub struct Baseline<P> {
    name: String,
    pool: P,
    packing: Packing,
}

pub type NextFit = Baseline<NextFitPool>;
pub type FirstFit = Baseline<FirstFitPool>;
pub type BestFit = Baseline<BestFitPool>;
pub type Harmonic = Baseline<HarmonicPool>;

impl<P> Baseline<P> {
    pub fn with_pool(name: impl Into<String>, pool: P) -> Self {
        Baseline {
            name: name.into(),
            pool,
            packing: Packing::new(),
        }
    }

    pub fn pool(&self) -> &P {
        &self.pool
    }
}

impl NextFit {
    pub fn new() -> Self {
        Baseline::with_pool("nf", NextFitPool::default())
    }
}

impl FirstFit {
    pub fn new() -> Self {
        Baseline::with_pool("ff", FirstFitPool::default())
    }
}

impl BestFit {
    pub fn new() -> Self {
        Baseline::with_pool("bf", BestFitPool::default())
    }
}

impl Harmonic {
    pub fn new(k: u32) -> Self {
        Baseline::with_pool(format!("harmonic:{k}"), HarmonicPool::new(k))
    }
}

impl Default for NextFit {
    fn default() -> Self {
        Self::new()
    }
}

impl Default for FirstFit {
    fn default() -> Self {
        Self::new()
    }
}

impl Default for BestFit {
    fn default() -> Self {
        Self::new()
    }
}

impl<P: Pool> OnlineAlgorithm for Baseline<P> {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn serve(&mut self, size: &ExactSize) -> Result<Decision> {
        Ok(self.pool.place(&mut self.packing, size)?)
    }

    fn packing(&self) -> &Packing {
        &self.packing
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{verify_packing, RequestSequence};
    use crate::online::run_online;

    fn seq(sizes: &[(i64, i64)]) -> RequestSequence {
        RequestSequence::new(sizes.iter().map(|&(n, d)| ExactSize::ratio(n, d)).collect()).unwrap()
    }

    fn cost<A: OnlineAlgorithm>(mut algo: A, s: &RequestSequence) -> usize {
        let run = run_online(&mut algo, s).unwrap();
        assert!(verify_packing(s, &run.packing));
        run.cost
    }

    #[test]
    fn next_fit_examples() {
        let halves = seq(&[(1, 2), (1, 2), (1, 2)]);
        let run = run_online(&mut NextFit::new(), &halves).unwrap();
        assert_eq!(run.cost, 2);
        assert_eq!(run.packing.canonical_groups(), vec![vec![0, 1], vec![2]]);
        assert_eq!(cost(NextFit::new(), &seq(&[(2, 3), (2, 3)])), 2);
        assert_eq!(cost(NextFit::new(), &seq(&[(1, 3), (1, 3), (1, 3)])), 1);
    }

    #[test]
    fn next_fit_never_reopens_closed_bins() {
        // 0.6 | 0.5 closes bin 0; the final 0.3 would fit bin 0 but NF ignores it
        let s = seq(&[(3, 5), (1, 2), (3, 5), (3, 10)]);
        let run = run_online(&mut NextFit::new(), &s).unwrap();
        assert_eq!(
            run.trace.iter().map(|d| d.bin).collect::<Vec<_>>(),
            vec![0, 1, 2, 2]
        );
    }

    #[test]
    fn first_fit_examples() {
        assert_eq!(
            cost(FirstFit::new(), &seq(&[(3, 5), (2, 5), (3, 5), (2, 5)])),
            2
        );
        assert_eq!(cost(FirstFit::new(), &seq(&[(1, 2), (1, 2), (1, 2)])), 2);
        assert_eq!(cost(FirstFit::new(), &RequestSequence::empty()), 0);
    }

    #[test]
    fn best_fit_prefers_tightest_bin() {
        // residuals 1/2 and 2/5 after the first two items
        let s = seq(&[(1, 2), (3, 5), (2, 5)]);
        let run = run_online(&mut BestFit::new(), &s).unwrap();
        assert_eq!(run.trace[2].bin, 1);

        let s = seq(&[(1, 2), (3, 5), (9, 20)]);
        let run = run_online(&mut BestFit::new(), &s).unwrap();
        assert_eq!(run.trace[2].bin, 0);

        let run = run_online(&mut BestFit::new(), &seq(&[(3, 10)])).unwrap();
        assert_eq!(
            run.trace[0],
            Decision {
                bin: 0,
                opened_new: true
            }
        );
    }

    #[test]
    fn best_fit_ties_go_to_lowest_index() {
        let s = seq(&[(1, 2), (1, 2), (7, 10), (7, 10), (1, 5)]);
        let run = run_online(&mut BestFit::new(), &s).unwrap();
        // bins 1 and 2 both have residual 3/10
        assert_eq!(run.trace[4].bin, 1);
    }

    #[test]
    fn harmonic_types_use_half_open_intervals() {
        assert_eq!(harmonic_type(&ExactSize::one(), 3), 1);
        assert_eq!(harmonic_type(&ExactSize::ratio(1, 2), 3), 2);
        assert_eq!(harmonic_type(&ExactSize::ratio(51, 100), 3), 1);
        assert_eq!(harmonic_type(&ExactSize::ratio(1, 3), 3), 3);
        assert_eq!(harmonic_type(&ExactSize::ratio(34, 100), 3), 2);
        assert_eq!(harmonic_type(&ExactSize::ratio(1, 100), 3), 3);
        assert_eq!(harmonic_type(&ExactSize::ratio(1, 100), 1), 1);
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(
            cost(Harmonic::new(3), &seq(&[(45, 100), (45, 100), (45, 100)])),
            2
        );
        assert_eq!(
            cost(Harmonic::new(3), &seq(&[(3, 10), (3, 10), (3, 10)])),
            1
        );
        assert_eq!(cost(Harmonic::new(3), &seq(&[(45, 100), (3, 10)])), 2);
    }
}
