//! Small sets of ranks / positions, stored as a 64-bit mask.

use std::fmt;

/// A subset of `{0, ..., 63}`. Used for rank sets of chains, the index sets
/// `S`, `T` of the inclusion-exclusion machinery, and cover-position sets `E`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankSet(u64);

/// A set of cover positions `E ⊆ {1, ..., n}` along a maximal chain.
pub type ESet = RankSet;

impl RankSet {
    pub const EMPTY: RankSet = RankSet(0);

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{lo, ..., hi}` (empty when `lo > hi`).
    pub fn range(lo: usize, hi: usize) -> Self {
        (lo..=hi).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < 64, "rank {i} out of range for RankSet");
        self.0 |= 1 << i;
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: RankSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: RankSet) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: RankSet) -> Self {
        Self(self.0 & other.0)
    }

    pub fn difference(self, other: RankSet) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 >> i & 1 == 1)
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = RankSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(RankSet(cur))
        })
    }
}

impl FromIterator<usize> for RankSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = RankSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for RankSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for RankSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}
