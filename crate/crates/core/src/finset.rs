//! Strictly increasing finite sets of ordinals.
//!
//! A [`FinSet`] is identified with its increasing enumeration, so `X.at(i)` is
//! the `i`-th element of `X` and `X.image(A)` is `{X(i) : i ∈ A}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Ordinals are finite at this scale.
pub type Ordinal = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinSetError {
    #[error("elements are not strictly increasing at position {0}")]
    NotIncreasing(usize),
    #[error("position {pos} is out of range for a set of size {len}")]
    PositionOutOfRange { pos: usize, len: usize },
}

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Ordinal>", into = "Vec<Ordinal>")]
pub struct FinSet(Vec<Ordinal>);

impl FinSet {
    pub fn empty() -> Self {
        FinSet(Vec::new())
    }

    pub fn singleton(a: Ordinal) -> Self {
        FinSet(vec![a])
    }

    /// `{start, …, end-1}`.
    pub fn range(start: Ordinal, end: Ordinal) -> Self {
        FinSet((start..end).collect())
    }

    /// Validates strict monotonicity.
    pub fn new(elements: Vec<Ordinal>) -> Result<Self, FinSetError> {
        if let Some(i) = elements.windows(2).position(|w| w[0] >= w[1]) {
            return Err(FinSetError::NotIncreasing(i + 1));
        }
        Ok(FinSet(elements))
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted<I: IntoIterator<Item = Ordinal>>(items: I) -> Self {
        let mut v: Vec<Ordinal> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        FinSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Ordinal] {
        &self.0
    }

    pub fn iter(&self) -> std::iter::Copied<std::slice::Iter<'_, Ordinal>> {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Ordinal> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Ordinal> {
        self.0.last().copied()
    }

    /// `X(i)`: the `i`-th element in increasing order.
    pub fn at(&self, i: usize) -> Option<Ordinal> {
        self.0.get(i).copied()
    }

    /// `X[A]` for a set of positions `A`.
    pub fn image(&self, positions: &FinSet) -> Result<FinSet, FinSetError> {
        positions
            .iter()
            .map(|p| {
                self.at(p).ok_or(FinSetError::PositionOutOfRange {
                    pos: p,
                    len: self.len(),
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(FinSet)
    }

    /// `X[start..end)` by positions, clamped to the set.
    pub fn slice(&self, start: usize, end: usize) -> FinSet {
        let end = end.min(self.len());
        let start = start.min(end);
        FinSet(self.0[start..end].to_vec())
    }

    pub fn contains(&self, a: Ordinal) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    /// Position of `a` in the increasing enumeration.
    pub fn position(&self, a: Ordinal) -> Option<usize> {
        self.0.binary_search(&a).ok()
    }

    pub fn is_subset(&self, other: &FinSet) -> bool {
        self.len() <= other.len() && self.iter().all(|a| other.contains(a))
    }

    /// `self ⊑ other`: `self` is an initial segment of `other`.
    pub fn is_initial_segment_of(&self, other: &FinSet) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn intersection(&self, other: &FinSet) -> FinSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        FinSet(out)
    }

    pub fn union(&self, other: &FinSet) -> FinSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(self.len() + other.len());
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        FinSet(out)
    }

    pub fn difference(&self, other: &FinSet) -> FinSet {
        FinSet(self.iter().filter(|&a| !other.contains(a)).collect())
    }

    pub fn is_disjoint(&self, other: &FinSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// Elements strictly below `bound`, i.e. `X ∩ bound`.
    pub fn below(&self, bound: Ordinal) -> FinSet {
        let cut = self.0.partition_point(|&a| a < bound);
        FinSet(self.0[..cut].to_vec())
    }

    /// Elements `≥ bound`, i.e. `X \ bound`.
    pub fn at_or_above(&self, bound: Ordinal) -> FinSet {
        let cut = self.0.partition_point(|&a| a < bound);
        FinSet(self.0[cut..].to_vec())
    }

    /// `X < Y` in the block order: `max X < min Y`, or either side empty.
    pub fn precedes(&self, other: &FinSet) -> bool {
        match (self.last(), other.first()) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        }
    }

    /// Space-separated rendering used in CSV cells and CLI output.
    pub fn to_spaced(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        parts.join(" ")
    }

    pub fn into_vec(self) -> Vec<Ordinal> {
        self.0
    }
}

impl TryFrom<Vec<Ordinal>> for FinSet {
    type Error = FinSetError;

    fn try_from(v: Vec<Ordinal>) -> Result<Self, Self::Error> {
        FinSet::new(v)
    }
}

impl From<FinSet> for Vec<Ordinal> {
    fn from(s: FinSet) -> Self {
        s.0
    }
}

impl FromIterator<Ordinal> for FinSet {
    fn from_iter<I: IntoIterator<Item = Ordinal>>(iter: I) -> Self {
        FinSet::from_unsorted(iter)
    }
}

impl<'a> IntoIterator for &'a FinSet {
    type Item = Ordinal;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Ordinal>>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// Shorthand for set literals in tests and examples.
#[macro_export]
macro_rules! finset {
    () => { $crate::finset::FinSet::empty() };
    ($($x:expr),+ $(,)?) => { $crate::finset::FinSet::from_unsorted([$($x),+]) };
}
