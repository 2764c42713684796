//! Exact rational sizes.
//!
//! Every item size, bin load and algorithm threshold in this crate is an
//! [`ExactSize`]: a reduced arbitrary-precision fraction. Nothing on the
//! packing path is ever rounded.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseSizeError {
    #[error("empty size literal")]
    Empty,
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed size literal `{0}`")]
    Malformed(String),
}

/// A reduced fraction with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactSize(BigRational);

impl ExactSize {
    /// Builds `num/den`. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        ExactSize(BigRational::new(num.into(), den.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(num, den)
    }

    pub fn integer(value: i64) -> Self {
        ExactSize(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        ExactSize(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactSize(BigRational::one())
    }

    pub fn from_rational(value: BigRational) -> Self {
        ExactSize(value)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True iff the value is a legal item size, i.e. lies in `(0, 1]`.
    pub fn is_item_size(&self) -> bool {
        self.0.is_positive() && self.0 <= BigRational::one()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn pow(&self, exp: i32) -> Self {
        ExactSize(num_traits::Pow::pow(&self.0, exp))
    }

    /// Lossy conversion, only for reporting and the bound evaluators.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for ExactSize {
    fn from(value: BigRational) -> Self {
        ExactSize(value)
    }
}

impl From<i64> for ExactSize {
    fn from(value: i64) -> Self {
        ExactSize::integer(value)
    }
}

impl fmt::Display for ExactSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p/q`, integers, and finite decimals such as `0.734375`
/// (converted to the exact fraction they denote).
impl FromStr for ExactSize {
    type Err = ParseSizeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseSizeError::Empty);
        }
        let malformed = || ParseSizeError::Malformed(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| malformed())?;
            let den: BigInt = den.trim().parse().map_err(|_| malformed())?;
            if den.is_zero() {
                return Err(ParseSizeError::ZeroDenominator(s.to_string()));
            }
            return Ok(ExactSize::new(num, den));
        }
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(malformed());
        }
        let digits_ok = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok(int_part) || !digits_ok(frac_part) {
            return Err(malformed());
        }
        let mut num: BigInt = if int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| malformed())?
        };
        let mut den = BigInt::one();
        for digit in frac_part.bytes() {
            num = num * 10 + BigInt::from(digit - b'0');
            den *= 10;
        }
        if negative {
            num = -num;
        }
        Ok(ExactSize::new(num, den))
    }
}

impl Serialize for ExactSize {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactSize {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactSize> for &ExactSize {
            type Output = ExactSize;
            fn $method(self, rhs: &ExactSize) -> ExactSize {
                ExactSize((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<ExactSize> for ExactSize {
            type Output = ExactSize;
            fn $method(self, rhs: ExactSize) -> ExactSize {
                ExactSize(self.0.$method(rhs.0))
            }
        }
        impl $trait<&ExactSize> for ExactSize {
            type Output = ExactSize;
            fn $method(self, rhs: &ExactSize) -> ExactSize {
                ExactSize(self.0.$method(&rhs.0))
            }
        }
        impl $trait<ExactSize> for &ExactSize {
            type Output = ExactSize;
            fn $method(self, rhs: ExactSize) -> ExactSize {
                ExactSize((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&ExactSize> for ExactSize {
    fn add_assign(&mut self, rhs: &ExactSize) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&ExactSize> for ExactSize {
    fn sub_assign(&mut self, rhs: &ExactSize) {
        self.0 -= &rhs.0;
    }
}

impl Neg for ExactSize {
    type Output = ExactSize;
    fn neg(self) -> ExactSize {
        ExactSize(-self.0)
    }
}

impl<'a> Sum<&'a ExactSize> for ExactSize {
    fn sum<I: Iterator<Item = &'a ExactSize>>(iter: I) -> Self {
        iter.fold(ExactSize::zero(), |acc, x| acc + x)
    }
}

impl Sum<ExactSize> for ExactSize {
    fn sum<I: Iterator<Item = ExactSize>>(iter: I) -> Self {
        iter.fold(ExactSize::zero(), |acc, x| acc + x)
    }
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator<'a>(sizes: impl IntoIterator<Item = &'a ExactSize>) -> BigInt {
    sizes
        .into_iter()
        .fold(BigInt::one(), |acc, s| acc.lcm(s.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!("1/2".parse::<ExactSize>().unwrap(), ExactSize::ratio(1, 2));
        assert_eq!("2/4".parse::<ExactSize>().unwrap(), ExactSize::ratio(1, 2));
        assert_eq!(
            "0.734375".parse::<ExactSize>().unwrap(),
            ExactSize::ratio(47, 64)
        );
        assert_eq!("1".parse::<ExactSize>().unwrap(), ExactSize::one());
        assert_eq!(".5".parse::<ExactSize>().unwrap(), ExactSize::ratio(1, 2));
        assert_eq!(
            "-0.25".parse::<ExactSize>().unwrap(),
            ExactSize::ratio(-1, 4)
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            "".parse::<ExactSize>(),
            Err(ParseSizeError::Empty)
        ));
        assert!(matches!(
            "1/0".parse::<ExactSize>(),
            Err(ParseSizeError::ZeroDenominator(_))
        ));
        assert!("0.5e3".parse::<ExactSize>().is_err());
        assert!("abc".parse::<ExactSize>().is_err());
        assert!(".".parse::<ExactSize>().is_err());
    }

    #[test]
    fn display_is_reduced() {
        assert_eq!(ExactSize::ratio(6, 8).to_string(), "3/4");
        assert_eq!(ExactSize::ratio(4, 4).to_string(), "1");
        assert_eq!(ExactSize::ratio(3, -9).to_string(), "-1/3");
    }

    #[test]
    fn item_size_range() {
        assert!(ExactSize::one().is_item_size());
        assert!(ExactSize::ratio(1, 1000).is_item_size());
        assert!(!ExactSize::zero().is_item_size());
        assert!(!ExactSize::ratio(1001, 1000).is_item_size());
    }

    #[test]
    fn serde_round_trip() {
        let s = ExactSize::ratio(11, 12);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "\"11/12\"");
        let back: ExactSize = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
