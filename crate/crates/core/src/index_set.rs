use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of positions in `0..64`, stored as a bitmask. Positions are
/// 0-based internally; the CLI and JSON reports use 1-based labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const MAX_POSITIONS: usize = 64;

    pub fn empty() -> Self {
        IndexSet(0)
    }

    /// `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_POSITIONS);
        if n == 64 {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        IndexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// From 0-based indices, each checked against `n`.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= n || i >= Self::MAX_POSITIONS {
                return Err(Error::IndexOutOfRange { index: i, limit: n });
            }
            bits |= 1 << i;
        }
        Ok(IndexSet(bits))
    }

    /// From 1-based labels `1..=n`.
    pub fn from_labels(labels: &[usize], n: usize) -> Result<Self> {
        let mut idx = Vec::with_capacity(labels.len());
        for &l in labels {
            if l == 0 || l > n {
                return Err(Error::IndexOutOfRange { index: l, limit: n });
            }
            idx.push(l - 1);
        }
        Self::from_indices(&idx, n)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn complement(self, n: usize) -> Self {
        IndexSet(!self.0 & Self::full(n).0)
    }

    pub fn union(self, other: Self) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest index + 1 (0 for the empty set).
    pub fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn check_within(self, n: usize) -> Result<()> {
        if self.bound() > n {
            Err(Error::IndexOutOfRange {
                index: self.bound() - 1,
                limit: n,
            })
        } else {
            Ok(())
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn to_labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All `size`-subsets of `0..n` in lexicographic order of their sorted
    /// index lists.
    pub fn subsets_of_size(n: usize, size: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        if size > n {
            return out;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(IndexSet(idx.iter().fold(0u64, |b, &i| b | 1 << i)));
            // rightmost slot that can still advance
            let mut j = size;
            while j > 0 && idx[j - 1] == n - size + j - 1 {
                j -= 1;
            }
            if j == 0 {
                return out;
            }
            idx[j - 1] += 1;
            for t in j..size {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }

    /// All subsets of `0..n`, ordered by size and then lexicographically.
    pub fn all_subsets(n: usize) -> Vec<IndexSet> {
        (0..=n).flat_map(|k| Self::subsets_of_size(n, k)).collect()
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (j, i) in self.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}
