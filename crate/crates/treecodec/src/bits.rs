//! Exact-length bit strings, packed MSB-first.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Ordered bit sequence with an exact length.
///
/// Bits are packed most-significant-bit-first within each byte; unused bits
/// in the last byte are kept zero so that equality and hashing work on the
/// packed representation directly.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bytes: Vec<u8>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitString {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            len: 0,
        }
    }

    /// All bits of `bytes`, length `8 * bytes.len()`.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        BitString {
            bytes: bytes.to_vec(),
            len: bytes.len() * 8,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        let slot = self.len / 8;
        if slot == self.bytes.len() {
            self.bytes.push(0);
        }
        if bit {
            self.bytes[slot] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    /// Bit at `index`; panics when out of range.
    pub fn bit(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.bytes[index / 8] & (0x80 >> (index % 8)) != 0
    }

    pub fn extend(&mut self, other: &BitString) {
        for bit in other.iter() {
            self.push(bit);
        }
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_uint(&mut self, value: u64, width: u32) {
        for shift in (0..width).rev() {
            self.push(value >> shift & 1 != 0);
        }
    }

    /// Reads `width` bits starting at `pos` as an unsigned integer.
    pub fn uint(&self, pos: usize, width: u32) -> u64 {
        let mut value = 0;
        for i in 0..width as usize {
            value = value << 1 | self.bit(pos + i) as u64;
        }
        value
    }

    pub fn slice(&self, start: usize, end: usize) -> BitString {
        assert!(start <= end && end <= self.len);
        let mut out = BitString::with_capacity(end - start);
        for i in start..end {
            out.push(self.bit(i));
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }

    pub fn count_ones(&self) -> usize {
        self.bytes.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Packed bytes, zero-padded to a byte boundary.
    pub fn padded_bytes(&self) -> &[u8] {
        &self.bytes
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = BitString::with_capacity(s.len());
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => out.push(false),
                '1' => out.push(true),
                _ => return Err(Error::InvalidBitChar { pos }),
            }
        }
        Ok(out)
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut out = BitString::new();
        for bit in iter {
            out.push(bit);
        }
        out
    }
}
