use std::collections::BTreeMap;

use crate::error::Result;
use crate::model::{Decision, Packing, RequestSequence, Target};
use crate::online::{place_next, OnlineAlgorithm};
use crate::size::ExactSize;
use crate::tape::{bit_len, self_delimited_len, AdviceTape, BitString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SizeClass {
    /// `(0, 1/3]`
    Tiny,
    /// `(1/3, 1/2]`
    Small,
    /// `(1/2, 2/3]`
    Medium,
    /// `(2/3, 1]`
    Large,
}

pub fn three_halves_class(size: &ExactSize) -> SizeClass {
    if *size <= ExactSize::ratio(1, 3) {
        SizeClass::Tiny
    } else if *size <= ExactSize::ratio(1, 2) {
        SizeClass::Small
    } else if *size <= ExactSize::ratio(2, 3) {
        SizeClass::Medium
    } else {
        SizeClass::Large
    }
}

/// The number of medium items, on `⌈log(n+1)⌉` bits after a self-delimited
/// width.
pub fn three_halves_oracle(seq: &RequestSequence) -> Result<BitString> {
    let medium = seq
        .iter()
        .filter(|s| three_halves_class(s) == SizeClass::Medium)
        .count() as u64;
    let width = bit_len(seq.len() as u64);
    let mut tape = BitString::new();
    tape.push_self_delimited(u64::from(width));
    tape.push_fixed(medium, width)?;
    Ok(tape)
}

pub fn three_halves_advice_bits(n: usize) -> u64 {
    let width = u64::from(bit_len(n as u64));
    width + self_delimited_len(width)
}

/// Bookkeeping for one bin, in First-Fit order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeHalvesBin {
    pub virtual_level: ExactSize,
    pub actual_level: ExactSize,
    pub is_critical: bool,
    pub has_medium: bool,
}

/// Reserves 2/3 of a bin for each announced medium item and packs the rest
/// First-Fit on virtual levels.
///
/// Critical bins come first in First-Fit order, regular bins after them.
/// A critical bin nobody has used yet is only a number: all of them look
/// alike, so the lowest unused index stands in for the rest and a tape
/// announcing a huge `α` costs nothing.
#[derive(Debug, Clone)]
pub struct ThreeHalves {
    tape: AdviceTape,
    alpha: u64,
    // used critical bins by index, with their physical bin
    critical: BTreeMap<u64, (ThreeHalvesBin, usize)>,
    regular: Vec<(ThreeHalvesBin, usize)>,
    packing: Packing,
    inconsistent: bool,
}

impl ThreeHalves {
    pub fn new(tape: BitString) -> Self {
        let mut tape = AdviceTape::new(tape);
        let width = tape.read_self_delimited().min(64) as u32;
        let alpha = tape.read_fixed(width);
        ThreeHalves {
            tape,
            alpha,
            critical: BTreeMap::new(),
            regular: Vec::new(),
            packing: Packing::new(),
            inconsistent: false,
        }
    }

    /// States of the bins in use, critical ones first.
    pub fn bin_states(&self) -> Vec<ThreeHalvesBin> {
        self.critical
            .values()
            .chain(&self.regular)
            .map(|(state, _)| state.clone())
            .collect()
    }

    /// Critical bins announced but not used yet.
    pub fn unused_critical(&self) -> u64 {
        self.alpha - self.critical.len() as u64
    }

    fn lowest_unused(&self) -> Option<u64> {
        let mut expected = 0;
        for &index in self.critical.keys() {
            if index != expected {
                break;
            }
            expected += 1;
        }
        (expected < self.alpha).then_some(expected)
    }

    // First critical bin, in index order, satisfying `accepts`; `fresh`
    // tells whether an unused one (level 2/3, no medium) would.
    fn critical_choice(
        &self,
        accepts: impl Fn(&ThreeHalvesBin) -> bool,
        fresh: bool,
    ) -> Option<u64> {
        let used = self
            .critical
            .iter()
            .find(|(_, (state, _))| accepts(state))
            .map(|(&index, _)| index);
        let unused = self.lowest_unused().filter(|_| fresh);
        match (used, unused) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn put_critical(
        &mut self,
        index: u64,
        size: &ExactSize,
    ) -> Result<(Decision, &mut ThreeHalvesBin)> {
        let target = self
            .critical
            .get(&index)
            .map_or(Target::New, |(_, bin)| Target::Existing(*bin));
        let decision = place_next(&mut self.packing, target, size)?;
        let (state, _) = self.critical.entry(index).or_insert_with(|| {
            (
                ThreeHalvesBin {
                    virtual_level: ExactSize::ratio(2, 3),
                    actual_level: ExactSize::zero(),
                    is_critical: true,
                    has_medium: false,
                },
                decision.bin,
            )
        });
        state.actual_level += size;
        Ok((decision, state))
    }

    fn open_regular(&mut self, size: &ExactSize) -> Result<Decision> {
        let decision = place_next(&mut self.packing, Target::New, size)?;
        self.regular.push((
            ThreeHalvesBin {
                virtual_level: size.clone(),
                actual_level: size.clone(),
                is_critical: false,
                has_medium: false,
            },
            decision.bin,
        ));
        Ok(decision)
    }
}

impl OnlineAlgorithm for ThreeHalves {
    fn name(&self) -> String {
        "three-halves".into()
    }

    fn serve(&mut self, size: &ExactSize) -> Result<Decision> {
        match three_halves_class(size) {
            SizeClass::Large => self.open_regular(size),
            SizeClass::Medium => {
                let Some(index) = self.critical_choice(|b| !b.has_medium, true) else {
                    self.inconsistent = true;
                    return self.open_regular(size);
                };
                let (decision, state) = self.put_critical(index, size)?;
                state.has_medium = true;
                state.virtual_level = state.actual_level.clone();
                Ok(decision)
            }
            SizeClass::Small | SizeClass::Tiny => {
                let one = ExactSize::one();
                let fits = |b: &ThreeHalvesBin| &b.virtual_level + size <= one;
                let fresh = &ExactSize::ratio(2, 3) + size <= one;
                if let Some(index) = self.critical_choice(fits, fresh) {
                    let (decision, state) = self.put_critical(index, size)?;
                    state.virtual_level += size;
                    return Ok(decision);
                }
                let Some(slot) = self.regular.iter().position(|(b, _)| fits(b)) else {
                    return self.open_regular(size);
                };
                let (state, bin) = &mut self.regular[slot];
                let decision = place_next(&mut self.packing, Target::Existing(*bin), size)?;
                state.actual_level += size;
                state.virtual_level += size;
                Ok(decision)
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::FirstFit;
    use crate::model::verify_packing;
    use crate::online::run_online;
    use proptest::prelude::*;

    fn seq(sizes: &[&str]) -> RequestSequence {
        RequestSequence::new(sizes.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    fn run(s: &RequestSequence) -> (crate::model::RunResult, ThreeHalves) {
        let mut algo = ThreeHalves::new(three_halves_oracle(s).unwrap());
        let result = run_online(&mut algo, s).unwrap();
        assert!(verify_packing(s, &result.packing));
        assert_eq!(result.advice_bits_read, three_halves_advice_bits(s.len()));
        assert!(!result.advice_inconsistent);
        (result, algo)
    }

    fn check_levels(states: &[ThreeHalvesBin]) {
        let two_thirds = ExactSize::ratio(2, 3);
        for b in states {
            assert!(b.actual_level <= b.virtual_level);
            assert!(b.virtual_level <= &b.actual_level + &two_thirds);
            assert!(b.virtual_level <= ExactSize::one());
        }
        let first_regular = states.iter().position(|b| !b.is_critical);
        if let Some(i) = first_regular {
            assert!(states[i..].iter().all(|b| !b.is_critical));
        }
    }

    #[test]
    fn classes_use_half_open_intervals() {
        assert_eq!(three_halves_class(&ExactSize::ratio(1, 3)), SizeClass::Tiny);
        assert_eq!(
            three_halves_class(&ExactSize::ratio(1, 2)),
            SizeClass::Small
        );
        assert_eq!(
            three_halves_class(&ExactSize::ratio(2, 3)),
            SizeClass::Medium
        );
        assert_eq!(three_halves_class(&ExactSize::one()), SizeClass::Large);
    }

    #[test]
    fn medium_shares_critical_bin() {
        let s = seq(&["0.55", "0.3", "0.7"]);
        let (result, algo) = run(&s);
        assert_eq!(result.cost, 2);
        assert_eq!(result.packing.bin_of(0), result.packing.bin_of(1));
        assert_eq!(algo.bin_states()[0].actual_level, "0.85".parse().unwrap());
        assert_eq!(algo.unused_critical(), 0);
    }

    #[test]
    fn all_medium() {
        for k in 1..6 {
            let s = RequestSequence::new(vec![ExactSize::ratio(3, 5); k]).unwrap();
            assert_eq!(run(&s).0.cost, k);
        }
    }

    #[test]
    fn empty() {
        let (result, _) = run(&RequestSequence::empty());
        assert_eq!(result.cost, 0);
        assert_eq!(result.advice_bits_read, 1);
    }

    #[test]
    fn reserved_space_is_not_used_by_small_items() {
        // 0.4 would fit next to nothing in the reserved bin (2/3 + 0.4 > 1)
        let s = seq(&["0.4", "0.6"]);
        let (result, _) = run(&s);
        assert_eq!(result.cost, 2);
    }

    #[test]
    fn missing_reservation_is_flagged() {
        let s = seq(&["0.6", "0.6"]);
        let mut tape = BitString::new();
        tape.push_self_delimited(2);
        tape.push_fixed(1, 2).unwrap();
        let result = run_online(&mut ThreeHalves::new(tape), &s).unwrap();
        assert!(result.advice_inconsistent);
        assert_eq!(result.cost, 2);
    }

    #[test]
    fn without_mediums_matches_first_fit() {
        let s = seq(&["0.3", "0.8", "0.45", "0.2", "0.5", "0.1"]);
        let (result, _) = run(&s);
        let ff = run_online(&mut FirstFit::new(), &s).unwrap();
        assert_eq!(result.packing, ff.packing);
    }

    proptest! {
        #[test]
        fn levels_stay_consistent(nums in prop::collection::vec(1i64..=60, 0..24)) {
            let s = RequestSequence::new(nums.iter().map(|&k| ExactSize::ratio(k, 60)).collect()).unwrap();
            let mut algo = ThreeHalves::new(three_halves_oracle(&s).unwrap());
            for size in &s {
                algo.serve(size).unwrap();
                check_levels(&algo.bin_states());
            }
            prop_assert!(verify_packing(&s, algo.packing()));
            prop_assert!(!algo.advice_inconsistent());
            // every critical bin received its medium item
            prop_assert!(algo.bin_states().iter().all(|b| !b.is_critical || b.has_medium));
            prop_assert_eq!(algo.unused_critical(), 0);
        }
    }

    #[test]
    fn huge_alpha_is_cheap() {
        // an all-ones tape announces an enormous α
        let tape: BitString = "1".repeat(200).parse().unwrap();
        let s = seq(&["0.3", "0.6", "0.3", "0.5"]);
        let mut algo = ThreeHalves::new(tape);
        let result = run_online(&mut algo, &s).unwrap();
        assert!(verify_packing(&s, &result.packing));
        assert_eq!(result.cost, 3);
        assert!(algo.unused_critical() > 1 << 40);
        assert_eq!(algo.bin_states().len(), 3);
    }

    #[test]
    fn critical_bins_keep_index_order() {
        // α = 3: the medium skips nothing, 0.3 joins critical bin 0 (level
        // 2/3 + 0.3), the next 0.3 finds bin 0 full and goes to bin 1
        let mut tape = BitString::new();
        tape.push_self_delimited(2);
        tape.push_fixed(3, 2).unwrap();
        let s = seq(&["0.3", "0.3", "0.6"]);
        let mut algo = ThreeHalves::new(tape);
        let result = run_online(&mut algo, &s).unwrap();
        assert_ne!(result.packing.bin_of(0), result.packing.bin_of(1));
        // the medium goes to the lowest critical bin without one: bin 0
        assert_eq!(result.packing.bin_of(2), result.packing.bin_of(0));
        assert_eq!(algo.unused_critical(), 1);
    }
}
