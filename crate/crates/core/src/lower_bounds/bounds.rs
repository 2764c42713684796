//! Closed-form advice lower bounds. These are the only floating-point
//! computations in the crate; logarithms are base 2 and `0·log 0 = 0`.

use super::LowerBoundError;
use crate::size::ExactSize;
use crate::tape::self_delimited_len;

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

fn check_alpha(alpha: &ExactSize) -> Result<f64, LowerBoundError> {
    if *alpha < ExactSize::ratio(1, 2) || *alpha >= ExactSize::one() {
        return Err(LowerBoundError::Domain(format!(
            "alpha {alpha} is not in [1/2, 1)"
        )));
    }
    Ok(alpha.to_f64())
}

/// `1 + (1-α)log(1-α) + α log α`.
pub fn guessing_coefficient(alpha: &ExactSize) -> Result<f64, LowerBoundError> {
    let a = check_alpha(alpha)?;
    Ok(1.0 + xlogx(1.0 - a) + xlogx(a))
}

/// Bits needed to guess more than `αn` bits of a string correctly.
pub fn sgkh_bound(alpha: &ExactSize, n: u64) -> Result<f64, LowerBoundError> {
    Ok(guessing_coefficient(alpha)? * n as f64)
}

/// As [`sgkh_bound`] when the number of zeros is known, minus `e(n)`.
pub fn sgkh_bound_known_zeros(alpha: &ExactSize, n: u64) -> Result<f64, LowerBoundError> {
    Ok(sgkh_bound(alpha, n)? - self_delimited_len(n) as f64)
}

/// `1 + (4c-4)log(4c-4) + (5-4c)log(5-4c)` for `c` in `(1, 9/8]`.
pub fn binpack_coefficient(c: &ExactSize) -> Result<f64, LowerBoundError> {
    if *c <= ExactSize::one() || *c > ExactSize::ratio(9, 8) {
        return Err(LowerBoundError::Domain(format!(
            "ratio {c} is not in (1, 9/8]"
        )));
    }
    let four = ExactSize::integer(4);
    let low = (&four * c - &four).to_f64();
    let high = (ExactSize::integer(5) - &four * c).to_f64();
    Ok(1.0 + xlogx(low) + xlogx(high))
}

/// `(n·coefficient(c) - e(n)) / 2` for `c` in `(1, 9/8)`.
pub fn binpack_bound(c: &ExactSize, n: u64) -> Result<f64, LowerBoundError> {
    if *c >= ExactSize::ratio(9, 8) {
        return Err(LowerBoundError::Domain(format!(
            "ratio {c} is not in (1, 9/8)"
        )));
    }
    let coefficient = binpack_coefficient(c)?;
    Ok((n as f64 * coefficient - self_delimited_len(n) as f64) / 2.0)
}
