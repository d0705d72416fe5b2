//! Binary relations on atom indices.
//!
//! Cylindrifier accessibility relations are usually equivalences, so a
//! relation built from a partition keeps only the class table. Relations
//! read from files or built pair by pair keep both adjacency directions.

use std::collections::HashMap;

use crate::atomset::AtomSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Repr {
    Pairs {
        post: Vec<Vec<u32>>,
        pre: Vec<Vec<u32>>,
    },
    Partition {
        class_of: Vec<u32>,
        classes: Vec<Vec<u32>>,
    },
}

#[derive(Clone, Debug)]
pub struct Relation {
    size: usize,
    repr: Repr,
}

impl Relation {
    /// Builds a relation from `(a, b)` pairs; duplicates are ignored.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(size: usize, pairs: I) -> Result<Self> {
        let mut post = vec![Vec::new(); size];
        let mut pre = vec![Vec::new(); size];
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= size {
                    return Err(Error::IndexOutOfRange { index: x, bound: size });
                }
            }
            post[a].push(b as u32);
            pre[b].push(a as u32);
        }
        for v in post.iter_mut().chain(pre.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        Ok(Relation {
            size,
            repr: Repr::Pairs { post, pre },
        })
    }

    /// The equivalence whose classes are given by `key`: atoms with equal keys
    /// are related.
    pub fn from_key<K: std::hash::Hash + Eq>(size: usize, key: impl Fn(usize) -> K) -> Self {
        let mut ids: HashMap<K, u32> = HashMap::new();
        let mut class_of = Vec::with_capacity(size);
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for a in 0..size {
            let next = ids.len() as u32;
            let id = *ids.entry(key(a)).or_insert(next);
            if id as usize == classes.len() {
                classes.push(Vec::new());
            }
            classes[id as usize].push(a as u32);
            class_of.push(id);
        }
        Relation {
            size,
            repr: Repr::Partition { class_of, classes },
        }
    }

    /// The relation of a total function `a -> f(a)`.
    pub fn from_function(size: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::from_pairs(size, (0..size).map(|a| (a, f(a))))
    }

    pub fn identity(size: usize) -> Self {
        Self::from_key(size, |a| a)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Atoms `b` with `a R b`, sorted.
    pub fn successors(&self, a: usize) -> &[u32] {
        match &self.repr {
            Repr::Pairs { post, .. } => &post[a],
            Repr::Partition { class_of, classes } => &classes[class_of[a] as usize],
        }
    }

    /// Atoms `a` with `a R b`, sorted.
    pub fn predecessors(&self, b: usize) -> &[u32] {
        match &self.repr {
            Repr::Pairs { pre, .. } => &pre[b],
            Repr::Partition { class_of, classes } => &classes[class_of[b] as usize],
        }
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        match &self.repr {
            Repr::Pairs { post, .. } => post[a].binary_search(&(b as u32)).is_ok(),
            Repr::Partition { class_of, .. } => class_of[a] == class_of[b],
        }
    }

    /// The class table when the relation was built as a partition.
    pub fn partition(&self) -> Option<&[u32]> {
        match &self.repr {
            Repr::Partition { class_of, .. } => Some(class_of),
            Repr::Pairs { .. } => None,
        }
    }

    /// `{a : exists b in X, a R b}`, the complex-algebra lifting of the relation.
    pub fn lift(&self, x: &AtomSet) -> AtomSet {
        let mut out = AtomSet::empty(self.size);
        match &self.repr {
            Repr::Pairs { pre, .. } => {
                for b in x.iter() {
                    for &a in &pre[b] {
                        out.insert(a as usize);
                    }
                }
            }
            Repr::Partition { class_of, classes } => {
                for b in x.iter() {
                    if out.contains(b) {
                        continue;
                    }
                    for &a in &classes[class_of[b] as usize] {
                        out.insert(a as usize);
                    }
                }
            }
        }
        out
    }

    pub fn pair_count(&self) -> usize {
        (0..self.size).map(|a| self.successors(a).len()).sum()
    }

    /// All pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |a| self.successors(a).iter().map(move |&b| (a, b as usize)))
    }

    pub fn same_pairs(&self, other: &Relation) -> bool {
        self.size == other.size && (0..self.size).all(|a| self.successors(a) == other.successors(a))
    }

    /// First atom not related to itself.
    pub fn reflexivity_failure(&self) -> Option<usize> {
        (0..self.size).find(|&a| !self.related(a, a))
    }

    /// First pair `(a, b)` in the relation whose reverse is missing.
    pub fn symmetry_failure(&self) -> Option<(usize, usize)> {
        if self.partition().is_some() {
            return None;
        }
        self.pairs().find(|&(a, b)| !self.related(b, a))
    }

    /// First chain `a R b R c` without `a R c`.
    pub fn transitivity_failure(&self) -> Option<(usize, usize, usize)> {
        if self.partition().is_some() {
            return None;
        }
        for a in 0..self.size {
            for &b in self.successors(a) {
                for &c in self.successors(b as usize) {
                    if !self.related(a, c as usize) {
                        return Some((a, b as usize, c as usize));
                    }
                }
            }
        }
        None
    }

    /// Successor set of `a` under the composite `self ; other`
    /// (`a self b other c`).
    fn composite_successors(&self, other: &Relation, a: usize) -> AtomSet {
        let mut s = AtomSet::empty(self.size);
        for &b in self.successors(a) {
            for &c in other.successors(b as usize) {
                s.insert(c as usize);
            }
        }
        s
    }

    /// First atom `a` at which `self;other` and `other;self` have different
    /// successor sets, together with a witness `c` in the symmetric difference.
    pub fn commutation_failure(&self, other: &Relation) -> Option<(usize, usize)> {
        let mut left_cache: HashMap<u32, AtomSet> = HashMap::new();
        let mut right_cache: HashMap<u32, AtomSet> = HashMap::new();
        let mut seen: HashMap<(u32, u32), ()> = HashMap::new();
        for a in 0..self.size {
            let lk = self.partition().map(|p| p[a]);
            let rk = other.partition().map(|p| p[a]);
            if let (Some(l), Some(r)) = (lk, rk) {
                if seen.insert((l, r), ()).is_some() {
                    continue;
                }
            }
            let left = match lk {
                Some(k) => left_cache
                    .entry(k)
                    .or_insert_with(|| self.composite_successors(other, a))
                    .clone(),
                None => self.composite_successors(other, a),
            };
            let right = match rk {
                Some(k) => right_cache
                    .entry(k)
                    .or_insert_with(|| other.composite_successors(self, a))
                    .clone(),
                None => other.composite_successors(self, a),
            };
            if left != right {
                let mut diff = left.difference(&right);
                diff.union_with(&right.difference(&left));
                return Some((a, diff.iter().next().unwrap_or(a)));
            }
        }
        None
    }

    /// The same relation in class-table form when it is an equivalence.
    pub fn normalized(self) -> Relation {
        if self.partition().is_some()
            || self.reflexivity_failure().is_some()
            || self.symmetry_failure().is_some()
            || self.transitivity_failure().is_some()
        {
            return self;
        }
        let rel = &self;
        Relation::from_key(self.size, |a| rel.successors(a)[0])
    }

    /// The image under a total function, when the relation is one.
    pub fn as_function(&self) -> Option<Vec<usize>> {
        (0..self.size)
            .map(|a| match self.successors(a) {
                [b] => Some(*b as usize),
                _ => None,
            })
            .collect()
    }

    /// Restriction to the atoms kept by `keep`, renumbered by `new_index`.
    pub fn restrict(&self, keep: &AtomSet, new_index: &[Option<usize>]) -> Relation {
        let n = keep.count();
        match &self.repr {
            Repr::Partition { class_of, .. } => {
                let kept: Vec<usize> = keep.iter().collect();
                Relation::from_key(n, |i| class_of[kept[i]])
            }
            Repr::Pairs { .. } => {
                let pairs = self.pairs().filter_map(|(a, b)| Some((new_index[a]?, new_index[b]?)));
                Relation::from_pairs(n, pairs).expect("restricted indices are in range")
            }
        }
    }
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.same_pairs(other)
    }
}

impl Eq for Relation {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_and_pairs_agree() {
        let p = Relation::from_key(5, |a| a % 2);
        let q = Relation::from_pairs(5, p.pairs().collect::<Vec<_>>()).unwrap();
        assert_eq!(p, q);
        assert!(q.symmetry_failure().is_none());
        assert!(q.transitivity_failure().is_none());
        let x = AtomSet::from_indices(5, [1]);
        assert_eq!(p.lift(&x).to_vec(), vec![1, 3]);
        assert_eq!(q.lift(&x).to_vec(), vec![1, 3]);
    }

    #[test]
    fn chain_is_not_transitive() {
        let r = Relation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (1, 0), (2, 1)]).unwrap();
        assert_eq!(r.transitivity_failure(), Some((0, 1, 2)));
        assert!(r.symmetry_failure().is_none());
    }

    #[test]
    fn out_of_range_pair_is_rejected() {
        assert!(matches!(
            Relation::from_pairs(2, [(0, 2)]),
            Err(Error::IndexOutOfRange { index: 2, bound: 2 })
        ));
    }

    #[test]
    fn commutation_of_grid_partitions() {
        // rows and columns of a 2x3 grid commute; a skewed partition does not
        let rows = Relation::from_key(6, |a| a / 3);
        let cols = Relation::from_key(6, |a| a % 3);
        assert!(rows.commutation_failure(&cols).is_none());
        let skew = Relation::from_key(6, |a| if a == 0 || a == 4 { 0 } else { a + 1 });
        assert!(rows.commutation_failure(&skew).is_some());
    }
}
