use super::AdviceError;
use crate::baselines::Harmonic;
use crate::error::Result;
use crate::model::{RequestSequence, RunResult};
use crate::online::run_online;
use crate::size::ExactSize;

/// Weight used to bound Harmonic on items in `(1/4, 1/2]`: 1/2 above 1/3,
/// 1/3 otherwise. `None` outside the range.
pub fn harmonic_weight(size: &ExactSize) -> Option<ExactSize> {
    if *size <= ExactSize::ratio(1, 4) || *size > ExactSize::ratio(1, 2) {
        None
    } else if *size > ExactSize::ratio(1, 3) {
        Some(ExactSize::ratio(1, 2))
    } else {
        Some(ExactSize::ratio(1, 3))
    }
}

/// Harmonic with three types on a sequence whose items all lie in
/// `(1/4, 1/2]`, so only the pair and triple classes are used.
pub fn harmonic_type3(seq: &RequestSequence) -> Result<RunResult> {
    if let Some((item, size)) = seq
        .iter()
        .enumerate()
        .find(|(_, s)| harmonic_weight(s).is_none())
    {
        return Err(AdviceError::OutOfRange {
            item,
            size: size.clone(),
            range: "(1/4, 1/2]",
        }
        .into());
    }
    run_online(&mut Harmonic::new(3), seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::verify_packing;
    use crate::offline::opt_exact;

    fn x(s: &str) -> ExactSize {
        s.parse().unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(harmonic_weight(&x("0.26")), Some(ExactSize::ratio(1, 3)));
        assert_eq!(harmonic_weight(&x("0.35")), Some(ExactSize::ratio(1, 2)));
        assert_eq!(harmonic_weight(&x("1/3")), Some(ExactSize::ratio(1, 3)));
        assert_eq!(harmonic_weight(&x("1/2")), Some(ExactSize::ratio(1, 2)));
        assert_eq!(harmonic_weight(&x("1/4")), None);
        assert_eq!(harmonic_weight(&x("0.6")), None);
    }

    #[test]
    fn single_item() {
        let s = RequestSequence::new(vec![x("0.3")]).unwrap();
        assert_eq!(harmonic_type3(&s).unwrap().cost, 1);
    }

    #[test]
    fn repeated_triples() {
        for k in 1..=5usize {
            let items: Vec<_> = (0..k)
                .flat_map(|_| [x("0.4"), x("0.3"), x("0.3")])
                .collect();
            let s = RequestSequence::new(items).unwrap();
            let run = harmonic_type3(&s).unwrap();
            assert!(verify_packing(&s, &run.packing));
            // k pairs of 0.4 need ⌈k/2⌉ bins, 2k items of 0.3 need ⌈2k/3⌉
            assert_eq!(run.cost, k.div_ceil(2) + (2 * k).div_ceil(3));
            if k <= 4 {
                assert_eq!(opt_exact(&s, 1_000_000).unwrap().cost, k);
            }
            assert!(3 * run.cost <= 4 * k + 9);
        }
    }

    #[test]
    fn rejects_out_of_range() {
        let s = RequestSequence::new(vec![x("0.3"), x("0.2")]).unwrap();
        assert!(harmonic_type3(&s).is_err());
    }
}
