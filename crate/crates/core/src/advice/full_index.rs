use std::collections::HashMap;

use crate::baselines::{best_fit_choice, first_fit_choice};
use crate::error::Result;
use crate::model::{Decision, Packing, RequestSequence, Target};
use crate::offline::opt_exact;
use crate::online::{place_next, OnlineAlgorithm};
use crate::size::ExactSize;
use crate::tape::{ceil_log2, AdviceTape, BitString};

/// Writes the bin index of every item but the last two, from an optimal
/// packing found by [`opt_exact`].
pub fn full_index_oracle(seq: &RequestSequence, node_budget: u64) -> Result<BitString> {
    let opt = opt_exact(seq, node_budget)?;
    full_index_advice(seq, &opt.witness)
}

/// Tape layout: `X = ⌈log OPT⌉` in unary, then `X` bits per item for the
/// first `n - 2` items naming the item's bin in `witness`. Empty when
/// `n ≤ 2`, where Best-Fit alone is optimal.
pub fn full_index_advice(seq: &RequestSequence, witness: &Packing) -> Result<BitString> {
    let canonical = witness.canonical(seq)?;
    let width = ceil_log2(canonical.cost() as u64);
    let mut tape = BitString::new();
    if seq.len() <= 2 {
        return Ok(tape);
    }
    tape.push_unary(u64::from(width));
    for item in 0..seq.len().saturating_sub(2) {
        let bin = canonical
            .bin_of(item)
            .expect("canonical witness packs every item");
        tape.push_fixed(bin as u64, width)?;
    }
    Ok(tape)
}

/// Bits the algorithm reads: header plus the per-item indices.
pub fn full_index_advice_bound(n: usize, opt: usize) -> u64 {
    if n <= 2 {
        return 0;
    }
    let width = u64::from(ceil_log2(opt as u64));
    width + 1 + width * n.saturating_sub(2) as u64
}

/// Replays bin indices from the tape, then packs the last two items with
/// Best-Fit. The sequence length is given up front so the algorithm knows
/// when the tail starts.
#[derive(Debug, Clone)]
pub struct FullIndex {
    tape: AdviceTape,
    len: usize,
    width: u32,
    label_bins: HashMap<u64, usize>,
    packing: Packing,
    inconsistent: bool,
}

impl FullIndex {
    pub fn new(tape: BitString, len: usize) -> Self {
        let mut tape = AdviceTape::new(tape);
        let width = if len > 2 {
            tape.read_unary().min(64) as u32
        } else {
            0
        };
        FullIndex {
            tape,
            len,
            width,
            label_bins: HashMap::new(),
            packing: Packing::new(),
            inconsistent: false,
        }
    }

    fn all_bins(&self) -> std::ops::Range<usize> {
        0..self.packing.bins().len()
    }

    fn fallback(&mut self, size: &ExactSize) -> Result<Decision> {
        self.inconsistent = true;
        let target = first_fit_choice(&self.packing, self.all_bins(), size)
            .map_or(Target::New, Target::Existing);
        Ok(place_next(&mut self.packing, target, size)?)
    }
}

impl OnlineAlgorithm for FullIndex {
    fn name(&self) -> String {
        "full-index".into()
    }

    fn serve(&mut self, size: &ExactSize) -> Result<Decision> {
        let item = self.packing.item_count();
        if item + 2 >= self.len {
            let target = best_fit_choice(&self.packing, self.all_bins(), size)
                .map_or(Target::New, Target::Existing);
            return Ok(place_next(&mut self.packing, target, size)?);
        }
        let label = self.tape.read_fixed(self.width);
        match self.label_bins.get(&label) {
            Some(&bin) if self.packing.bins()[bin].fits(size) => {
                Ok(place_next(&mut self.packing, Target::Existing(bin), size)?)
            }
            Some(_) => self.fallback(size),
            None => {
                let decision = place_next(&mut self.packing, Target::New, size)?;
                self.label_bins.insert(label, decision.bin);
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
    use crate::model::verify_packing;
    use crate::online::run_online;

    fn seq(sizes: &[&str]) -> RequestSequence {
        RequestSequence::new(sizes.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn powers_of_two_example() {
        let s = seq(&[
            "1/4", "1/8", "1/16", "1/32", "1/64", "0.734375", "0.84375", "0.9375",
        ]);
        let tape = full_index_oracle(&s, 100_000).unwrap();
        // X = 2 in unary, then 6 two-bit indices: bins 0,1,2,1,0,0
        assert_eq!(tape.to_string(), "110".to_owned() + "000110010000");
        let run = run_online(&mut FullIndex::new(tape, s.len()), &s).unwrap();
        assert_eq!(run.cost, 3);
        assert_eq!(run.advice_bits_read, 15);
        assert!(run.advice_bits_read <= 8 * 2);
        assert!(!run.advice_inconsistent);
        assert!(verify_packing(&s, &run.packing));
    }

    #[test]
    fn two_items_need_no_advice() {
        let s = seq(&["1/2", "1/2"]);
        let tape = full_index_oracle(&s, 1000).unwrap();
        assert!(tape.is_empty());
        let run = run_online(&mut FullIndex::new(tape, 2), &s).unwrap();
        assert_eq!(run.cost, 1);
        assert_eq!(run.advice_bits_read, 0);
    }

    #[test]
    fn single_bin_still_reads_the_header() {
        let s = seq(&["1/4", "1/4", "1/4"]);
        let tape = full_index_oracle(&s, 1000).unwrap();
        assert_eq!(tape.to_string(), "0");
        let run = run_online(&mut FullIndex::new(tape, 3), &s).unwrap();
        assert_eq!(run.cost, 1);
        assert_eq!(run.advice_bits_read, 1);
    }

    #[test]
    fn empty_sequence() {
        let s = RequestSequence::empty();
        let tape = full_index_oracle(&s, 10).unwrap();
        let run = run_online(&mut FullIndex::new(tape, 0), &s).unwrap();
        assert_eq!(run.cost, 0);
        assert_eq!(run.advice_bits_read, 0);
    }

    #[test]
    fn corrupted_index_is_flagged_not_fatal() {
        let s = seq(&["0.6", "0.6", "0.3", "0.3", "0.1"]);
        // X = 1, indices 0,0,... : second 0.6 is sent into the first bin
        let tape: BitString = "10000".parse().unwrap();
        let run = run_online(&mut FullIndex::new(tape, s.len()), &s).unwrap();
        assert!(run.advice_inconsistent);
        assert!(verify_packing(&s, &run.packing));
    }

    #[test]
    fn bound_formula() {
        assert_eq!(full_index_advice_bound(8, 3), 3 + 12);
        assert_eq!(full_index_advice_bound(3, 1), 1);
        assert_eq!(full_index_advice_bound(2, 1), 0);
        assert_eq!(full_index_advice_bound(0, 0), 0);
    }
}
