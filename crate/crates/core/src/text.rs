//! Texts over small integer alphabets, the two opposite lexicographic
//! orders, periods, borders and primitivity.
//!
//! Positions exposed by this crate are 1-based and inclusive. Internally
//! everything works on `&[u8]` slices with 0-based indices.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sequence of symbol codes.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Text {
    symbols: Vec<u8>,
}

impl Text {
    pub fn new(symbols: Vec<u8>) -> Self {
        Text { symbols }
    }

    /// Validates that every code is below `sigma`.
    pub fn with_sigma(symbols: Vec<u8>, sigma: usize) -> Result<Self> {
        if let Some(&code) = symbols.iter().find(|&&c| c as usize >= sigma) {
            return Err(Error::SymbolOutOfRange { code, sigma });
        }
        Ok(Text { symbols })
    }

    /// Maps every byte to the code with the same value.
    pub fn from_ascii(s: &str) -> Self {
        Text::new(s.as_bytes().to_vec())
    }

    /// Maps `'0'`/`'1'` to codes 0/1. Any other character is rejected.
    pub fn from_binary01(s: &str) -> Result<Self> {
        s.bytes()
            .map(|b| match b {
                b'0' => Ok(0),
                b'1' => Ok(1),
                _ => Err(Error::BadParameter(format!(
                    "unexpected byte {:?} in a 0/1 text",
                    b as char
                ))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Text::new)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.symbols
    }

    /// Symbol at 1-based position `i`.
    pub fn at(&self, i: usize) -> Option<u8> {
        i.checked_sub(1).and_then(|k| self.symbols.get(k).copied())
    }

    /// `t[i..j]`, 1-based inclusive; `None` unless `1 <= i <= j <= n`.
    pub fn substring(&self, i: usize, j: usize) -> Option<&[u8]> {
        if i >= 1 && i <= j && j <= self.symbols.len() {
            Some(&self.symbols[i - 1..j])
        } else {
            None
        }
    }
}

impl Deref for Text {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.symbols
    }
}

impl From<&str> for Text {
    fn from(s: &str) -> Self {
        Text::from_ascii(s)
    }
}

impl fmt::Display for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.symbols))
    }
}

/// Human-readable form of a code sequence: digits when every code is
/// below 10, the bytes themselves when they are printable ASCII, and
/// dot-separated codes otherwise.
pub fn render(codes: &[u8]) -> String {
    if codes.iter().all(|&c| c < 10) {
        codes.iter().map(|&c| (b'0' + c) as char).collect()
    } else if codes.iter().all(|&c| (0x20..0x7f).contains(&c)) {
        codes.iter().map(|&c| c as char).collect()
    } else {
        codes
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// 1-based inclusive interval. Position 0 is only ever used for the
/// virtual sentinel of a sentinel-prepended Lyndon tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Interval { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// The slice of `t` covered by this interval (requires `start >= 1`).
    pub fn of<'a>(&self, t: &'a [u8]) -> &'a [u8] {
        &t[self.start - 1..self.end]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}..{}]", self.start, self.end)
    }
}

/// One of the two opposite lexicographic orders. `Order0` follows the
/// natural code order, `Order1` reverses it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LexOrder {
    #[serde(rename = "0")]
    Order0,
    #[serde(rename = "1")]
    Order1,
}

impl LexOrder {
    pub const BOTH: [LexOrder; 2] = [LexOrder::Order0, LexOrder::Order1];

    pub fn opposite(self) -> Self {
        match self {
            LexOrder::Order0 => LexOrder::Order1,
            LexOrder::Order1 => LexOrder::Order0,
        }
    }

    pub fn cmp_symbols(self, a: u8, b: u8) -> Ordering {
        match self {
            LexOrder::Order0 => a.cmp(&b),
            LexOrder::Order1 => b.cmp(&a),
        }
    }

    /// Order-preserving integer key; -1 is reserved for the sentinel.
    pub(crate) fn key(self, a: u8) -> i16 {
        match self {
            LexOrder::Order0 => a as i16,
            LexOrder::Order1 => 255 - a as i16,
        }
    }

    pub(crate) fn keys(self, t: &[u8]) -> Vec<i16> {
        t.iter().map(|&a| self.key(a)).collect()
    }

    pub fn index(self) -> u8 {
        match self {
            LexOrder::Order0 => 0,
            LexOrder::Order1 => 1,
        }
    }
}

impl fmt::Display for LexOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Lexicographic comparison; a proper prefix is smaller than its extensions.
pub fn compare(order: LexOrder, a: &[u8], b: &[u8]) -> Ordering {
    for (&x, &y) in a.iter().zip(b) {
        match order.cmp_symbols(x, y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Classic failure function: `border[k]` is the length of the longest
/// proper border of `t[..=k]`.
pub fn border_array<T: Eq>(t: &[T]) -> Vec<usize> {
    let mut border = vec![0; t.len()];
    let mut b = 0;
    for k in 1..t.len() {
        while b > 0 && t[k] != t[b] {
            b = border[b - 1];
        }
        if t[k] == t[b] {
            b += 1;
        }
        border[k] = b;
    }
    border
}

/// Length of the longest proper border (0 when unbordered).
pub fn longest_border(t: &[u8]) -> Result<usize> {
    if t.is_empty() {
        return Err(Error::EmptyText);
    }
    Ok(*border_array(t).last().unwrap())
}

pub fn smallest_period(t: &[u8]) -> Result<usize> {
    longest_border(t).map(|b| t.len() - b)
}

pub fn is_primitive(t: &[u8]) -> Result<bool> {
    let p = smallest_period(t)?;
    Ok(p == t.len() || !t.len().is_multiple_of(p))
}
