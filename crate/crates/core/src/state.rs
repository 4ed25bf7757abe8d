//! Binary state words over the component set.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Widest word representable by [`StateWord`].
pub const MAX_COMPONENTS: usize = 64;

/// A vertex of the unit hypercube: bit `i` is 1 iff component `i` operates.
///
/// Component 1 is the leftmost character of the textual form and the most
/// significant bit of [`StateWord::index`], so `index` doubles as the
/// position of the word in a truth table.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateWord {
    bits: u64,
    len: u8,
}

impl StateWord {
    pub fn from_index(len: usize, index: u64) -> Result<Self> {
        if len == 0 || len > MAX_COMPONENTS {
            return Err(Error::Domain(format!(
                "state words need between 1 and {MAX_COMPONENTS} components, got {len}"
            )));
        }
        if len < 64 && index >> len != 0 {
            return Err(Error::Domain(format!("index {index} does not fit in {len} components")));
        }
        Ok(StateWord {
            bits: index,
            len: len as u8,
        })
    }

    pub(crate) fn from_index_unchecked(len: usize, index: u64) -> Self {
        debug_assert!((1..=MAX_COMPONENTS).contains(&len));
        StateWord {
            bits: index,
            len: len as u8,
        }
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let index = bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
        Self::from_index(bits.len(), index)
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::from_index(len, 0)
    }

    pub fn ones(len: usize) -> Result<Self> {
        Self::from_index(len, full_mask(len))
    }

    /// Word with exactly the listed (0-based) components set.
    pub fn with_components(len: usize, on: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut word = Self::zeros(len)?;
        for i in on {
            if i >= len {
                return Err(Error::Dimension {
                    expected: len,
                    actual: i + 1,
                });
            }
            word = word.with(i, true);
        }
        Ok(word)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self) -> u64 {
        self.bits
    }

    fn mask(&self, i: usize) -> u64 {
        1u64 << (self.len() - 1 - i)
    }

    /// State of component `i` (0-based).
    pub fn get(&self, i: usize) -> bool {
        self.bits & self.mask(i) != 0
    }

    #[must_use]
    pub fn with(&self, i: usize, on: bool) -> Self {
        let m = self.mask(i);
        let bits = if on { self.bits | m } else { self.bits & !m };
        StateWord { bits, len: self.len }
    }

    #[must_use]
    pub fn complement(&self) -> Self {
        StateWord {
            bits: !self.bits & full_mask(self.len()),
            len: self.len,
        }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Indices of operating components.
    pub fn ones_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.get(i))
    }

    pub fn zeros_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| !self.get(i))
    }

    /// Componentwise order: `self ≤ other`.
    pub fn le(&self, other: &StateWord) -> bool {
        self.len == other.len && self.bits & !other.bits == 0
    }

    pub fn comparable(&self, other: &StateWord) -> bool {
        self.le(other) || other.le(self)
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected,
                actual: self.len(),
            })
        }
    }
}

pub(crate) fn full_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl PartialOrd for StateWord {
    /// The componentwise partial order.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            Some(Ordering::Equal)
        } else if self.le(other) {
            Some(Ordering::Less)
        } else if other.le(self) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

impl fmt::Display for StateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for StateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateWord({self})")
    }
}

impl FromStr for StateWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Domain(format!("invalid bit {other:?} in state word"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(&bits)
    }
}

/// Parses a word literal; test and fixture helper.
pub fn word(s: &str) -> StateWord {
    s.parse().expect("valid state word literal")
}
