//! Advice tapes and the integer codes written on them.
//!
//! An [`AdviceTape`] is conceptually infinite: reads past the written prefix
//! return `0`. Every bit touched is charged, and the charge is the highest
//! position ever read, which is what an algorithm's advice complexity counts.
//!
//! Three codes are provided, all big-endian and tightly concatenated:
//!
//! * fixed width: `X` on exactly `w` bits;
//! * unary: `X` ones followed by a zero;
//! * self-delimited: unary(`bitlen(bitlen(X))`), then `bitlen(X)` on that
//!   many bits, then `X` on `bitlen(X)` bits. Its length is
//!   [`self_delimited_len`], with `bitlen(0) = 0` so `0` encodes as `"0"`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TapeError {
    #[error("value {value} does not fit in {width} bits")]
    ValueTooWide { value: u64, width: u32 },
    #[error("malformed serialized tape `{0}`")]
    Malformed(String),
}

/// `⌈log2(x + 1)⌉`, the number of binary digits of `x` (0 for 0).
pub fn bit_len(x: u64) -> u32 {
    u64::BITS - x.leading_zeros()
}

/// `⌈log2(x)⌉` for `x ≥ 1`; 0 for `x ≤ 1`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        bit_len(x - 1)
    }
}

/// Length of the self-delimited code of `x`:
/// `⌈log(x+1)⌉ + 2⌈log(⌈log(x+1)⌉+1)⌉ + 1`.
pub fn self_delimited_len(x: u64) -> u64 {
    let payload = bit_len(x);
    let width = bit_len(u64::from(payload));
    u64::from(payload) + 2 * u64::from(width) + 1
}

/// A finite string of bits.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        BitString::default()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        self.bits.get(index).copied()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn append(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    /// Appends `value` big-endian on exactly `width` bits.
    pub fn push_fixed(&mut self, value: u64, width: u32) -> Result<(), TapeError> {
        if width < u64::BITS && value >> width != 0 {
            return Err(TapeError::ValueTooWide { value, width });
        }
        for shift in (0..width).rev() {
            self.bits
                .push(shift < u64::BITS && (value >> shift) & 1 == 1);
        }
        Ok(())
    }

    /// Appends `value` ones and a terminating zero.
    pub fn push_unary(&mut self, value: u64) {
        self.bits.extend(std::iter::repeat_n(true, value as usize));
        self.bits.push(false);
    }

    pub fn push_self_delimited(&mut self, value: u64) {
        let payload = bit_len(value);
        let width = bit_len(u64::from(payload));
        self.push_unary(u64::from(width));
        self.push_fixed(u64::from(payload), width)
            .expect("payload length fits its own bit length");
        self.push_fixed(value, payload)
            .expect("value fits its own bit length");
    }

    /// Serializes as `"<bit length>:<hex>"`, bits packed MSB first and the
    /// last byte zero-padded.
    pub fn to_hex(&self) -> String {
        let bytes: Vec<u8> = self
            .bits
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)))
            })
            .collect();
        format!("{}:{}", self.bits.len(), hex::encode(bytes))
    }

    pub fn from_hex(text: &str) -> Result<Self, TapeError> {
        let malformed = || TapeError::Malformed(text.to_string());
        let (len, body) = text.trim().split_once(':').ok_or_else(malformed)?;
        let len: usize = len.parse().map_err(|_| malformed())?;
        let bytes = hex::decode(body).map_err(|_| malformed())?;
        if bytes.len() != len.div_ceil(8) {
            return Err(malformed());
        }
        let bits = (0..len)
            .map(|i| (bytes[i / 8] >> (7 - i % 8)) & 1 == 1)
            .collect();
        Ok(BitString { bits })
    }
}

pub fn encode_self_delimited(value: u64) -> BitString {
    let mut out = BitString::new();
    out.push_self_delimited(value);
    out
}

pub fn encode_fixed(value: u64, width: u32) -> Result<BitString, TapeError> {
    let mut out = BitString::new();
    out.push_fixed(value, width)?;
    Ok(out)
}

pub fn encode_unary_terminated(value: u64) -> BitString {
    let mut out = BitString::new();
    out.push_unary(value);
    out
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

/// Parses a string of `0`/`1` characters.
impl FromStr for BitString {
    type Err = TapeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(TapeError::Malformed(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|bits| BitString { bits })
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BitString {
            bits: iter.into_iter().collect(),
        }
    }
}

/// A read-once advice tape with access accounting.
#[derive(Debug, Clone, Default)]
pub struct AdviceTape {
    bits: BitString,
    cursor: usize,
    max_accessed: u64,
}

impl AdviceTape {
    pub fn new(bits: BitString) -> Self {
        AdviceTape {
            bits,
            cursor: 0,
            max_accessed: 0,
        }
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    /// Number of tape cells charged so far (highest position read, plus one).
    pub fn bits_accessed(&self) -> u64 {
        self.max_accessed
    }

    pub fn contents(&self) -> &BitString {
        &self.bits
    }

    pub fn read_bit(&mut self) -> bool {
        let bit = self.bits.get(self.cursor).unwrap_or(false);
        self.cursor += 1;
        self.max_accessed = self.max_accessed.max(self.cursor as u64);
        bit
    }

    /// Reads `width` bits as a big-endian integer. Bits beyond 64 shift out.
    pub fn read_fixed(&mut self, width: u32) -> u64 {
        (0..width).fold(0u64, |acc, _| (acc << 1) | u64::from(self.read_bit()))
    }

    pub fn read_unary(&mut self) -> u64 {
        let mut count = 0;
        while self.read_bit() {
            count += 1;
        }
        count
    }

    pub fn read_self_delimited(&mut self) -> u64 {
        // A corrupted prefix could claim an absurd width; clamp so the read
        // terminates and stays within u64.
        let mut width = 0;
        while width < u64::BITS && self.read_bit() {
            width += 1;
        }
        let payload = self.read_fixed(width).min(u64::from(u64::BITS)) as u32;
        self.read_fixed(payload)
    }
}

pub fn decode_self_delimited(tape: &mut AdviceTape) -> u64 {
    tape.read_self_delimited()
}

pub fn decode_fixed(tape: &mut AdviceTape, width: u32) -> u64 {
    tape.read_fixed(width)
}

pub fn decode_unary_terminated(tape: &mut AdviceTape) -> u64 {
    tape.read_unary()
}
