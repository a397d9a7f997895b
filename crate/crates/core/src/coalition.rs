//! Players, coalitions and 2-partitions.
//!
//! A coalition is a bit pattern over player indices: bit `i` set means player
//! `i` is a member. Every enumeration in this crate walks bit patterns in
//! increasing numeric order, which makes serial and parallel output agree.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::MAX_PLAYERS;

/// Subset of a player set, encoded as a bit pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    /// Wraps raw bits without checking them against a player count.
    pub const fn from_bits_unchecked(bits: u32) -> Self {
        Coalition(bits)
    }

    pub fn from_bits(bits: u32, n: usize) -> Result<Self> {
        if n > MAX_PLAYERS || (n < 32 && bits >> n != 0) {
            return Err(Error::InvalidCoalition { bits, n });
        }
        Ok(Coalition(bits))
    }

    /// The grand coalition of an `n`-player set.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_PLAYERS);
        Coalition(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_PLAYERS);
        Coalition(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Coalition(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub const fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Coalition) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    pub const fn intersection(self, other: Coalition) -> Coalition {
        Coalition(self.0 & other.0)
    }

    pub const fn difference(self, other: Coalition) -> Coalition {
        Coalition(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> Coalition {
        Coalition(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Coalition {
        Coalition(self.0 & !(1 << i))
    }

    /// Lowest member index, if any.
    pub fn min_member(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Member indices in increasing order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                Some(i as usize)
            }
        })
    }

    /// All subsets, from the empty coalition up to `self`, in increasing bit order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Non-empty proper subsets in increasing bit order.
    pub fn proper_nonempty_subsets(self) -> impl Iterator<Item = Coalition> {
        let mask = self.0;
        self.subsets().filter(move |c| c.0 != 0 && c.0 != mask)
    }
}

impl fmt::Display for Coalition {
    /// One-based member list, e.g. `{1,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

/// Iterator over the submasks of a fixed mask, increasing.
#[derive(Debug, Clone)]
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let current = self.next?;
        self.next = if current == self.mask {
            None
        } else {
            Some((current.wrapping_sub(self.mask)) & self.mask)
        };
        Some(Coalition(current))
    }
}

/// Every coalition of an `n`-player set in increasing bit order.
pub fn all_coalitions(n: usize) -> impl Iterator<Item = Coalition> {
    (0..(1u64 << n)).map(|b| Coalition(b as u32))
}

/// Ordered, labelled set of players `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlayerSet {
    labels: Vec<String>,
}

impl PlayerSet {
    pub fn new<I, L>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_PLAYERS {
            return Err(Error::PlayerCount(labels.len()));
        }
        let mut seen = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if seen.insert(label.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(PlayerSet { labels })
    }

    /// Players labelled `"1"`, `"2"`, ... `"n"`.
    pub fn numbered(n: usize) -> Result<Self> {
        PlayerSet::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn full(&self) -> Coalition {
        Coalition::full(self.len())
    }

    pub fn check(&self, coalition: Coalition) -> Result<Coalition> {
        Coalition::from_bits(coalition.bits(), self.len())
    }

    pub fn coalition<S: AsRef<str>>(&self, labels: &[S]) -> Result<Coalition> {
        labels.iter().try_fold(Coalition::EMPTY, |acc, l| {
            Ok(acc.with(self.index_of(l.as_ref())?))
        })
    }

    pub fn labels_of(&self, coalition: Coalition) -> Vec<&str> {
        coalition.members().map(|i| self.label(i)).collect()
    }

    /// Comma-joined member labels, e.g. `"a,c"`; empty string for the empty coalition.
    pub fn format(&self, coalition: Coalition) -> String {
        self.labels_of(coalition).join(",")
    }

    /// Player set without `removed`; survivors keep their relative order.
    pub fn without(&self, removed: Coalition) -> Result<PlayerSet> {
        PlayerSet::new(
            (0..self.len())
                .filter(|&i| !removed.contains(i))
                .map(|i| self.labels[i].clone()),
        )
    }

    /// Appends a new player at index `n`.
    pub fn with_player(&self, label: impl Into<String>) -> Result<PlayerSet> {
        let mut labels = self.labels.clone();
        labels.push(label.into());
        PlayerSet::new(labels)
    }
}

/// Re-indexes `coalition` (disjoint from `removed`) onto the compacted player
/// indices left after deleting `removed`.
pub fn compact(coalition: Coalition, removed: Coalition) -> Coalition {
    debug_assert!(coalition.is_disjoint(removed));
    let mut out = 0u32;
    let mut k = 0;
    let mut bits = coalition.bits() | removed.bits();
    let mut i = 0;
    while bits != 0 {
        if bits & 1 == 1 {
            if coalition.contains(i) {
                out |= 1 << (i - k);
            } else {
                k += 1;
            }
        }
        bits >>= 1;
        i += 1;
    }
    Coalition(out)
}

/// Inverse of [`compact`]: maps compacted indices back onto the original set.
pub fn expand(compacted: Coalition, removed: Coalition, n: usize) -> Coalition {
    let survivors: Vec<usize> = (0..n).filter(|&i| !removed.contains(i)).collect();
    Coalition::from_indices(compacted.members().map(|j| survivors[j]))
}

/// Unordered non-trivial 2-partition `{first, second}` of a coalition.
///
/// Canonical form: `first` holds the lowest-index member of `first ∪ second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoPartition {
    first: Coalition,
    second: Coalition,
}

impl TwoPartition {
    /// Builds the canonical partition from two blocks in either order.
    pub fn new(a: Coalition, b: Coalition) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        if !a.is_disjoint(b) {
            return Err(Error::NotDisjoint(a.to_string(), b.to_string()));
        }
        let low = a.union(b).min_member().expect("non-empty");
        Ok(if a.contains(low) {
            TwoPartition { first: a, second: b }
        } else {
            TwoPartition { first: b, second: a }
        })
    }

    pub fn first(&self) -> Coalition {
        self.first
    }

    pub fn second(&self) -> Coalition {
        self.second
    }

    pub fn whole(&self) -> Coalition {
        self.first.union(self.second)
    }

    /// Block sizes, smaller first.
    pub fn sizes(&self) -> (usize, usize) {
        let (a, b) = (self.first.len(), self.second.len());
        (a.min(b), a.max(b))
    }
}

impl fmt::Display for TwoPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.first, self.second)
    }
}

/// All unordered non-trivial 2-partitions of `coalition`, canonical and in
/// increasing order of the first block. Empty when `|coalition| <= 1`.
pub fn enumerate_two_partitions(coalition: Coalition) -> Vec<TwoPartition> {
    let Some(low) = coalition.min_member() else {
        return Vec::new();
    };
    let rest = coalition.without(low);
    rest.subsets()
        .filter(|r| *r != rest)
        .map(|r| TwoPartition {
            first: r.with(low),
            second: rest.difference(r),
        })
        .collect()
}
