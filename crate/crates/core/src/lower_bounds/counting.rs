use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::LowerBoundError;

/// Largest number of search nodes [`count_partition_solutions`] visits.
pub const COUNT_GUARD: u64 = 10_000_000;

/// Number of non-negative integer solutions of `x₁ + 2x₂ + … + αx_α = X`,
/// by direct enumeration.
pub fn count_partition_solutions(alpha: u32, total: u64) -> Result<u64, LowerBoundError> {
    if alpha == 0 {
        return Ok(u64::from(total == 0));
    }
    let mut nodes = 0u64;
    count(alpha as u64, total, &mut nodes)
}

fn count(part: u64, rest: u64, nodes: &mut u64) -> Result<u64, LowerBoundError> {
    *nodes += 1;
    if *nodes > COUNT_GUARD {
        return Err(LowerBoundError::GuardExceeded { limit: COUNT_GUARD });
    }
    if part == 1 {
        return Ok(1);
    }
    let mut found = 0;
    for used in 0..=rest / part {
        found += count(part - 1, rest - used * part, nodes)?;
    }
    Ok(found)
}

/// `(1 + 2X/(α(α+1)))^{α-1}`, exactly.
pub fn partition_bound(alpha: u32, total: u64) -> BigRational {
    if alpha == 0 {
        return BigRational::one();
    }
    let a = BigInt::from(alpha);
    let base =
        BigRational::one() + BigRational::new(BigInt::from(2) * BigInt::from(total), &a * (&a + 1));
    num_traits::pow(base, alpha as usize - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    // independent count: coin-change dynamic program
    fn dp(alpha: u32, total: u64) -> u64 {
        let mut ways = vec![0u64; total as usize + 1];
        ways[0] = 1;
        for part in 1..=alpha as usize {
            for x in part..=total as usize {
                ways[x] += ways[x - part];
            }
        }
        ways[total as usize]
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn spot_values() {
        assert_eq!(count_partition_solutions(2, 6).unwrap(), 4);
        assert_eq!(partition_bound(2, 6), r(3, 1));
        assert_eq!(count_partition_solutions(3, 6).unwrap(), 7);
        assert_eq!(partition_bound(3, 6), r(4, 1));
        assert_eq!(count_partition_solutions(1, 5).unwrap(), 1);
        assert_eq!(partition_bound(1, 5), r(1, 1));
    }

    #[test]
    fn matches_dynamic_program() {
        for alpha in 1..=6 {
            for total in 0..=40 {
                assert_eq!(
                    count_partition_solutions(alpha, total).unwrap(),
                    dp(alpha, total)
                );
            }
        }
    }

    #[test]
    fn bound_is_not_integral_in_general() {
        assert_eq!(partition_bound(3, 1), r(49, 36));
    }

    #[test]
    fn guard() {
        assert!(matches!(
            count_partition_solutions(12, 400),
            Err(LowerBoundError::GuardExceeded { .. })
        ));
    }
}
