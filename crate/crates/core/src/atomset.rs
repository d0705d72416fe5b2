//! Dense bit sets over atom indices.

use std::fmt;

const WORD: usize = 64;

/// A subset of `{0, .., len-1}` stored as a dense bit vector.
///
/// Equality, ordering and hashing compare the universe size and the members,
/// so two sets over universes of different sizes are never equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSet {
    len: usize,
    words: Vec<u64>,
}

impl AtomSet {
    pub fn empty(len: usize) -> Self {
        AtomSet {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn singleton(len: usize, a: usize) -> Self {
        let mut s = Self::empty(len);
        s.insert(a);
        s
    }

    /// Builds a set from indices; panics on an index outside the universe.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut s = Self::empty(len);
        for a in it {
            s.insert(a);
        }
        s
    }

    /// The low `len` bits of `mask` as a set. Requires `len <= 64`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD);
        let mut s = Self::empty(len);
        if len > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    /// The set as a 64-bit mask. Requires `len <= 64`.
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the universe.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, a: usize) {
        assert!(a < self.len, "atom {a} outside universe of size {}", self.len);
        self.words[a / WORD] |= 1 << (a % WORD);
    }

    pub fn remove(&mut self, a: usize) {
        if a < self.len {
            self.words[a / WORD] &= !(1 << (a % WORD));
        }
    }

    pub fn contains(&self, a: usize) -> bool {
        a < self.len && self.words[a / WORD] >> (a % WORD) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn union_with(&mut self, other: &AtomSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &AtomSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &AtomSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        let mut r = self.clone();
        r.intersect_with(other);
        r
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        let mut r = self.clone();
        r.difference_with(other);
        r
    }

    pub fn complement(&self) -> AtomSet {
        let mut r = self.clone();
        for w in r.words.iter_mut() {
            *w = !*w;
        }
        r.trim();
        r
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_complement_respect_universe() {
        let s = AtomSet::full(70);
        assert_eq!(s.count(), 70);
        assert!(s.complement().is_empty());
        let e = AtomSet::empty(0);
        assert!(e.is_full());
        assert_eq!(e.iter().count(), 0);
    }

    #[test]
    fn mask_round_trip() {
        let s = AtomSet::from_mask(10, 0b1010_0000_0110);
        assert_eq!(s.to_vec(), vec![1, 2, 9]);
        assert_eq!(s.to_mask(), 0b10_0000_0110);
    }

    proptest! {
        #[test]
        fn boolean_ops_match_btreeset(a in proptest::collection::btree_set(0usize..130, 0..40),
                                      b in proptest::collection::btree_set(0usize..130, 0..40)) {
            let x = AtomSet::from_indices(130, a.iter().copied());
            let y = AtomSet::from_indices(130, b.iter().copied());
            let u: Vec<_> = a.union(&b).copied().collect();
            let i: Vec<_> = a.intersection(&b).copied().collect();
            let d: Vec<_> = a.difference(&b).copied().collect();
            prop_assert_eq!(x.union(&y).to_vec(), u);
            prop_assert_eq!(x.intersection(&y).to_vec(), i);
            prop_assert_eq!(x.difference(&y).to_vec(), d);
            prop_assert_eq!(x.complement().count(), 130 - a.len());
            prop_assert_eq!(x.is_subset(&y), a.is_subset(&b));
        }
    }
}
