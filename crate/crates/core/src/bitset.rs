//! Fixed-length bitsets over element indices.

use std::cmp::Ordering;
use std::fmt;

/// A fixed-length set of element indices.
///
/// Ordering compares the ascending member lists lexicographically, so
/// `{0, 1} < {0, 2} < {1}`; this is the canonical order used for every
/// sorted subgroup listing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut set = BitSet::new(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn full(len: usize) -> Self {
        BitSet::from_indices(len, 0..len)
    }

    /// Capacity (the size of the ambient index range).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    /// Inserts `i`, returning `true` if it was not already present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        let word = &mut self.words[i / 64];
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

/// Iterator over the members of a [`BitSet`] in increasing order.
pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.words.len().min(other.words.len());
        for w in 0..n {
            let (a, b) = (self.words[w], other.words[w]);
            let diff = a ^ b;
            if diff == 0 {
                continue;
            }
            // Both sets agree below `bit` and exactly one of them contains it.
            let bit = diff & diff.wrapping_neg();
            let self_has_bit = a & bit != 0;
            let lacking = if self_has_bit { other } else { self };
            let above = !(bit | (bit - 1));
            let lacking_continues =
                lacking.words[w] & above != 0 || lacking.words[w + 1..].iter().any(|x| *x != 0);
            // If the lacking set stops here it is a proper prefix and sorts first.
            return match (self_has_bit, lacking_continues) {
                (true, true) | (false, false) => Ordering::Less,
                (true, false) | (false, true) => Ordering::Greater,
            };
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn insert_and_iterate() {
        let mut s = BitSet::new(130);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(64);
        s.insert(129);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 64, 129]);
        assert_eq!(s.count(), 3);
        assert!(s.contains(129));
        assert!(!s.contains(128));
    }

    #[test]
    fn ordering_is_lexicographic_on_member_lists() {
        let a = BitSet::from_indices(8, [0, 1]);
        let b = BitSet::from_indices(8, [0, 2]);
        let c = BitSet::from_indices(8, [1]);
        let d = BitSet::from_indices(8, [0]);
        assert!(a < b);
        assert!(b < c);
        assert!(d < a);
    }

    proptest! {
        #[test]
        fn ordering_matches_sorted_vectors(
            xs in proptest::collection::btree_set(0usize..150, 0..12),
            ys in proptest::collection::btree_set(0usize..150, 0..12),
        ) {
            let a = BitSet::from_indices(150, xs.iter().copied());
            let b = BitSet::from_indices(150, ys.iter().copied());
            let va: Vec<_> = xs.into_iter().collect();
            let vb: Vec<_> = ys.into_iter().collect();
            prop_assert_eq!(a.cmp(&b), va.cmp(&vb));
        }
    }
}
