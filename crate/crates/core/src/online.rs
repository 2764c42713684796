//! The online-algorithm interface shared by baselines and advice algorithms.

use crate::error::Result;
use crate::model::{Decision, ModelError, Packing, RequestSequence, RunResult, Target};
use crate::size::ExactSize;

/// An online bin packing algorithm. Items are served one at a time and the
/// item index is the number of items served before it.
pub trait OnlineAlgorithm {
    fn name(&self) -> String;

    /// Irrevocably places the next item.
    fn serve(&mut self, size: &ExactSize) -> Result<Decision>;

    fn packing(&self) -> &Packing;

    fn advice_bits_read(&self) -> u64 {
        0
    }

    fn advice_inconsistent(&self) -> bool {
        false
    }
}

impl<A: OnlineAlgorithm + ?Sized> OnlineAlgorithm for Box<A> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn serve(&mut self, size: &ExactSize) -> Result<Decision> {
        (**self).serve(size)
    }
    fn packing(&self) -> &Packing {
        (**self).packing()
    }
    fn advice_bits_read(&self) -> u64 {
        (**self).advice_bits_read()
    }
    fn advice_inconsistent(&self) -> bool {
        (**self).advice_inconsistent()
    }
}

/// Feeds `seq` to `algo` item by item and collects the run record.
pub fn run_online<A: OnlineAlgorithm + ?Sized>(
    algo: &mut A,
    seq: &RequestSequence,
) -> Result<RunResult> {
    let mut trace = Vec::with_capacity(seq.len());
    for size in seq {
        trace.push(algo.serve(size)?);
    }
    let packing = algo.packing().clone();
    Ok(RunResult {
        cost: packing.cost(),
        packing,
        advice_bits_read: algo.advice_bits_read(),
        trace,
        advice_inconsistent: algo.advice_inconsistent(),
    })
}

/// Places the next item (index = items placed so far) and reports the decision.
pub(crate) fn place_next(
    packing: &mut Packing,
    target: Target,
    size: &ExactSize,
) -> Result<Decision, ModelError> {
    let item = packing.item_count();
    let opened_new = match target {
        Target::New => true,
        Target::Existing(b) => packing.bin(b).is_some_and(|bin| bin.is_empty()),
    };
    let bin = packing.place(target, item, size)?;
    Ok(Decision { bin, opened_new })
}
