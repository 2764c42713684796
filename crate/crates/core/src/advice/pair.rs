use super::AdviceError;
use crate::baselines::best_fit_choice;
use crate::error::Result;
use crate::model::{Decision, ModelError, Packing, RequestSequence, Target};
use crate::offline::{enumerate_optimal_packings, opt_exact};
use crate::online::{place_next, OnlineAlgorithm};
use crate::size::ExactSize;
use crate::tape::{AdviceTape, BitString};

/// How many optimal packings the oracle inspects when the first witness is
/// not a perfect pairing.
const PAIRING_SEARCH_LIMIT: usize = 10_000;

/// Bins of the pair strategy. A bin stays a candidate until it holds two
/// items.
#[derive(Debug, Clone, Default)]
pub struct PairPool {
    singles: Vec<usize>,
}

impl PairPool {
    /// Without a seen partner the item opens a bin; otherwise it goes
    /// Best-Fit into a bin holding a single item. `None` when no such bin
    /// has room.
    pub fn place(
        &mut self,
        packing: &mut Packing,
        size: &ExactSize,
        partner_seen: bool,
    ) -> Result<Option<Decision>, ModelError> {
        if !partner_seen {
            let decision = place_next(packing, Target::New, size)?;
            self.singles.push(decision.bin);
            return Ok(Some(decision));
        }
        let Some(bin) = best_fit_choice(packing, self.singles.iter().copied(), size) else {
            return Ok(None);
        };
        self.singles.retain(|&b| b != bin);
        place_next(packing, Target::Existing(bin), size).map(Some)
    }

    pub fn singles(&self) -> &[usize] {
        &self.singles
    }
}

/// One bit per item: whether its partner in `witness` came earlier.
pub fn pair_advice_from_witness(seq: &RequestSequence, witness: &Packing) -> Result<BitString> {
    let mut partner = vec![usize::MAX; seq.len()];
    for bin in witness.bins().iter().filter(|b| !b.is_empty()) {
        let &[a, b] = bin.contents() else {
            return Err(AdviceError::NotPairable { items: bin.len() }.into());
        };
        partner[a] = b;
        partner[b] = a;
    }
    if let Some(item) = partner.iter().position(|&p| p == usize::MAX) {
        return Err(ModelError::ItemOutOfRange {
            item,
            len: seq.len(),
        }
        .into());
    }
    Ok(partner
        .iter()
        .enumerate()
        .map(|(item, &p)| p < item)
        .collect())
}

/// Advice from an optimal packing with exactly two items per bin. The first
/// solver witness is used when it qualifies; otherwise optimal packings are
/// enumerated until one does.
pub fn pair_packer_oracle(seq: &RequestSequence, node_budget: u64) -> Result<BitString> {
    let opt = opt_exact(seq, node_budget)?;
    match pair_advice_from_witness(seq, &opt.witness) {
        Ok(tape) => Ok(tape),
        Err(first) => {
            let all = enumerate_optimal_packings(seq, PAIRING_SEARCH_LIMIT, node_budget)?;
            all.iter()
                .find_map(|p| pair_advice_from_witness(seq, p).ok())
                .ok_or(first)
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PairPacker {
    tape: AdviceTape,
    pool: PairPool,
    packing: Packing,
}

impl PairPacker {
    pub fn new(tape: BitString) -> Self {
        PairPacker {
            tape: AdviceTape::new(tape),
            ..Default::default()
        }
    }
}

impl OnlineAlgorithm for PairPacker {
    fn name(&self) -> String {
        "pair".into()
    }

    fn serve(&mut self, size: &ExactSize) -> Result<Decision> {
        let item = self.packing.item_count();
        let partner_seen = self.tape.read_bit();
        self.pool
            .place(&mut self.packing, size, partner_seen)?
            .ok_or_else(|| AdviceError::NoFeasibleBin { item }.into())
    }

    fn packing(&self) -> &Packing {
        &self.packing
    }

    fn advice_bits_read(&self) -> u64 {
        self.tape.bits_accessed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::model::verify_packing;
    use crate::online::run_online;

    fn seq(sizes: &[&str]) -> RequestSequence {
        RequestSequence::new(sizes.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    fn run(s: &RequestSequence) -> crate::model::RunResult {
        let tape = pair_packer_oracle(s, 100_000).unwrap();
        let result = run_online(&mut PairPacker::new(tape), s).unwrap();
        assert!(verify_packing(s, &result.packing));
        assert_eq!(result.advice_bits_read, s.len() as u64);
        result
    }

    #[test]
    fn two_pairs() {
        let s = seq(&["0.6", "0.7", "0.4", "0.3"]);
        assert_eq!(pair_packer_oracle(&s, 1000).unwrap().to_string(), "0011");
        assert_eq!(run(&s).cost, 2);
    }

    #[test]
    fn best_fit_remaps_partners() {
        let s = seq(&["0.5", "0.6", "0.4", "0.5"]);
        let tape: BitString = "0011".parse().unwrap();
        let result = run_online(&mut PairPacker::new(tape), &s).unwrap();
        assert_eq!(result.cost, 2);
        assert_eq!(result.packing.bin_of(2), result.packing.bin_of(1));
        assert_eq!(result.packing.bin_of(3), result.packing.bin_of(0));
    }

    #[test]
    fn single_pair() {
        let s = seq(&["0.5", "0.5"]);
        assert_eq!(run(&s).cost, 1);
    }

    #[test]
    fn triple_bins_are_rejected() {
        let s = seq(&["0.3", "0.3", "0.3"]);
        match pair_packer_oracle(&s, 1000) {
            Err(Error::Advice(AdviceError::NotPairable { items: 3 })) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn searches_past_a_non_pairing_witness() {
        // some optima put 0.5, 0.25, 0.25 together
        let s = seq(&["0.5", "0.25", "0.5", "0.25", "0.5", "0.5"]);
        let tape = pair_packer_oracle(&s, 1000).unwrap();
        let result = run_online(&mut PairPacker::new(tape), &s).unwrap();
        assert_eq!(result.cost, 3);
    }

    #[test]
    fn bad_bit_is_a_hard_error() {
        let s = seq(&["0.6", "0.6"]);
        let tape: BitString = "01".parse().unwrap();
        assert!(run_online(&mut PairPacker::new(tape), &s).is_err());
    }
}
