//! Subsets of the simple-root index set `I = {1, ..., r}` stored as bitmasks.
//!
//! Index `i` (1-based, matching `alpha_i`) lives in bit `i - 1`.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// Largest rank a [`Subset`] can address.
pub const MAX_INDEX: usize = 16;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u32);

impl Subset {
    pub const fn empty() -> Self {
        Subset(0)
    }

    /// `{1, ..., rank}`.
    pub fn full(rank: usize) -> Self {
        assert!(rank <= MAX_INDEX, "rank {rank} exceeds {MAX_INDEX}");
        Subset(((1u64 << rank) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        Self::empty().with(i)
    }

    pub const fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    /// Panics on index 0 or an index above [`MAX_INDEX`].
    pub fn with(self, i: usize) -> Self {
        assert!(
            (1..=MAX_INDEX).contains(&i),
            "simple index {i} out of range"
        );
        Subset(self.0 | (1 << (i - 1)))
    }

    pub fn without(self, i: usize) -> Self {
        if (1..=MAX_INDEX).contains(&i) {
            Subset(self.0 & !(1 << (i - 1)))
        } else {
            self
        }
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_INDEX).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self.is_subset_of(other) && self != other
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// `(-1)^{|self|}`.
    pub fn sign(self) -> i64 {
        if self.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Largest index present, if any.
    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(bit + 1)
        })
    }

    /// Every subset of `self`, in increasing mask order (starting at the empty set).
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let ground = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == ground {
                None
            } else {
                // standard submask successor
                Some(((current | !ground).wrapping_add(1)) & ground)
            };
            Some(Subset(current))
        })
    }

    /// Every `S` with `self ⊆ S ⊆ ground`. Empty when `self ⊄ ground`.
    pub fn supersets_within(self, ground: Subset) -> impl Iterator<Item = Subset> {
        let valid = self.is_subset_of(ground);
        let base = self;
        ground
            .difference(self)
            .subsets()
            .filter(move |_| valid)
            .map(move |extra| base.union(extra))
    }

    /// Builds a subset from 1-based member indices. Panics on out-of-range indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Subset::empty(), Subset::with)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Ordering used for rendering: by cardinality, then by mask.
    pub fn graded_cmp(&self, other: &Subset) -> std::cmp::Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        self.union(rhs)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        self.intersection(rhs)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        self.difference(rhs)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Subset::from_indices(iter)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        f.write_str("{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_power_set() {
        let g = Subset::from_indices([1, 3, 4]);
        let all: Vec<_> = g.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|s| s.is_subset_of(g)));
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
        assert_eq!(Subset::empty().subsets().count(), 1);
    }

    #[test]
    fn supersets_within_ground() {
        let g = Subset::full(4);
        let j = Subset::from_indices([2]);
        assert_eq!(j.supersets_within(g).count(), 8);
        assert!(j.supersets_within(g).all(|s| j.is_subset_of(s)));
        assert_eq!(Subset::singleton(5).supersets_within(g).count(), 0);
    }

    #[test]
    fn iteration_and_display() {
        let s = Subset::from_indices([4, 1]);
        assert_eq!(s.to_vec(), vec![1, 4]);
        assert_eq!(s.to_string(), "{1,4}");
        assert_eq!(Subset::empty().to_string(), "{}");
        assert_eq!(s.max_index(), Some(4));
        assert_eq!(s.sign(), 1);
        assert_eq!(Subset::singleton(2).sign(), -1);
    }

    #[test]
    fn full_sixteen() {
        assert_eq!(Subset::full(16).len(), 16);
        assert_eq!(Subset::full(0), Subset::empty());
    }
}
