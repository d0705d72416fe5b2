use std::hash::{Hash, Hasher};

use crate::atomset::AtomSet;
use crate::error::{Error, Result};
use crate::relation::Relation;

/// Largest supported dimension.
pub const MAX_DIM: usize = 8;
/// Largest supported atom count.
pub const MAX_ATOMS: usize = 1 << 16;

/// Content fingerprint of a structure; elements carry the fingerprint of the
/// structure they were made for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructureId(pub u64);

/// A finite cylindric atom structure of dimension `dim`, optionally carrying
/// transposition relations (polyadic signature).
///
/// `cyl[i]` is the accessibility relation of the i-th cylindrifier,
/// `diag(i, j)` the diagonal atom set, and `transp(i, j)` (for `i != j`) the
/// substitution-by-transposition map, stored as an involutive permutation.
#[derive(Clone, Debug)]
pub struct CaAtomStructure {
    id: StructureId,
    dim: usize,
    labels: Vec<String>,
    cyl: Vec<Relation>,
    diag: Vec<AtomSet>,
    transp: Option<Vec<Vec<usize>>>,
}

/// Index of the unordered pair `{i, j}` (`i != j`) among all pairs of `dim`.
pub(crate) fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // pairs (0,1),(0,2),..,(0,dim-1),(1,2),..
    i * (2 * dim - i - 1) / 2 + (j - i - 1)
}

pub(crate) fn pair_count(dim: usize) -> usize {
    dim * (dim - 1) / 2
}

impl CaAtomStructure {
    /// Builds and validates a structure. `diag[i][j]` is E_ij.
    pub fn new(
        dim: usize,
        labels: Vec<String>,
        cyl: Vec<Relation>,
        diag: Vec<Vec<AtomSet>>,
    ) -> Result<Self> {
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(Error::Parameter(format!("dimension {dim} outside 2..={MAX_DIM}")));
        }
        let n = labels.len();
        if n > MAX_ATOMS {
            return Err(Error::BoundExceeded(format!("{n} atoms exceeds cap {MAX_ATOMS}")));
        }
        if cyl.len() != dim {
            return Err(Error::InvalidStructure(format!(
                "expected {dim} cylindrifier relations, got {}",
                cyl.len()
            )));
        }
        if let Some(r) = cyl.iter().find(|r| r.size() != n) {
            return Err(Error::InvalidStructure(format!(
                "cylindrifier relation over {} atoms, structure has {n}",
                r.size()
            )));
        }
        if diag.len() != dim || diag.iter().any(|row| row.len() != dim) {
            return Err(Error::InvalidStructure(format!("diagonal table must be {dim}x{dim}")));
        }
        let mut flat = Vec::with_capacity(dim * dim);
        for (i, row) in diag.into_iter().enumerate() {
            for (j, e) in row.into_iter().enumerate() {
                if e.universe() != n {
                    return Err(Error::InvalidStructure(format!("E_{i}{j} over wrong universe")));
                }
                if i == j && !e.is_full() {
                    return Err(Error::InvalidStructure(format!("E_{i}{i} is not the full atom set")));
                }
                flat.push(e);
            }
        }
        let mut s = CaAtomStructure {
            id: StructureId(0),
            dim,
            labels,
            cyl,
            diag: flat,
            transp: None,
        };
        s.id = s.fingerprint();
        Ok(s)
    }

    /// Adds transposition relations. `relations` must contain exactly one
    /// relation per unordered pair `i < j`, each a bijective involution.
    pub fn with_transpositions(mut self, relations: Vec<((usize, usize), Relation)>) -> Result<Self> {
        let n = self.atom_count();
        let mut table: Vec<Option<Vec<usize>>> = vec![None; pair_count(self.dim)];
        for ((i, j), rel) in relations {
            if i >= self.dim || j >= self.dim || i == j {
                return Err(Error::InvalidStructure(format!("bad transposition index pair ({i},{j})")));
            }
            if rel.size() != n {
                return Err(Error::InvalidStructure(format!("P_{i}{j} over wrong universe")));
            }
            let f = rel
                .as_function()
                .ok_or_else(|| Error::InvalidStructure(format!("P_{i}{j} is not functional")))?;
            if let Some(a) = (0..n).find(|&a| f[f[a]] != a) {
                return Err(Error::InvalidStructure(format!(
                    "P_{i}{j} is not an involution at atom {a}"
                )));
            }
            let slot = &mut table[pair_index(self.dim, i, j)];
            if slot.is_some() {
                return Err(Error::InvalidStructure(format!("P_{i}{j} given twice")));
            }
            *slot = Some(f);
        }
        let table: Option<Vec<Vec<usize>>> = table.into_iter().collect();
        let table = table.ok_or_else(|| Error::InvalidStructure("missing transposition pair".into()))?;
        self.transp = Some(table);
        self.id = self.fingerprint();
        Ok(self)
    }

    /// Adds transpositions from a map `(i, j, atom) -> atom` evaluated for `i < j`.
    pub fn with_transposition_fn(self, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self> {
        let n = self.atom_count();
        let mut rels = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                rels.push(((i, j), Relation::from_function(n, |a| f(i, j, a))?));
            }
        }
        self.with_transpositions(rels)
    }

    pub fn without_transpositions(&self) -> Self {
        let mut s = self.clone();
        s.transp = None;
        s.id = s.fingerprint();
        s
    }

    fn fingerprint(&self) -> StructureId {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.dim.hash(&mut h);
        self.labels.hash(&mut h);
        for r in &self.cyl {
            r.pair_count().hash(&mut h);
            for p in r.pairs() {
                p.hash(&mut h);
            }
        }
        self.diag.hash(&mut h);
        self.transp.hash(&mut h);
        StructureId(h.finish())
    }

    pub fn id(&self) -> StructureId {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atom_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn cyl_relation(&self, i: usize) -> &Relation {
        &self.cyl[i]
    }

    /// E_ij as a raw set. Panics on out-of-range indices.
    pub fn diag_set(&self, i: usize, j: usize) -> &AtomSet {
        &self.diag[i * self.dim + j]
    }

    pub fn has_transpositions(&self) -> bool {
        self.transp.is_some()
    }

    /// The transposition map P_ij as a permutation of atoms; the identity when `i == j`.
    pub fn transposition(&self, i: usize, j: usize) -> Option<std::borrow::Cow<'_, [usize]>> {
        let t = self.transp.as_ref()?;
        if i == j {
            return Some(std::borrow::Cow::Owned((0..self.atom_count()).collect()));
        }
        Some(std::borrow::Cow::Borrowed(&t[pair_index(self.dim, i, j)]))
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, bound: self.dim })
        }
    }

    pub(crate) fn check_atom(&self, a: usize) -> Result<()> {
        if a < self.atom_count() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: a,
                bound: self.atom_count(),
            })
        }
    }

    // Set-level operators. Callers guarantee indices and universes.

    pub(crate) fn cyl_raw(&self, i: usize, x: &AtomSet) -> AtomSet {
        self.cyl[i].lift(x)
    }

    pub(crate) fn subst_repl_raw(&self, i: usize, j: usize, x: &AtomSet) -> AtomSet {
        if i == j {
            return x.clone();
        }
        self.cyl_raw(i, &x.intersection(self.diag_set(i, j)))
    }

    /// `{a : exists b in X, a P_ij b}`; P_ij is an involution so this is the image.
    pub(crate) fn transp_raw(&self, i: usize, j: usize, x: &AtomSet) -> Option<AtomSet> {
        if i == j {
            return self.transp.as_ref().map(|_| x.clone());
        }
        let f = &self.transp.as_ref()?[pair_index(self.dim, i, j)];
        Some(AtomSet::from_indices(self.atom_count(), x.iter().map(|b| f[b])))
    }
}

impl PartialEq for CaAtomStructure {
    /// Structural equality: same dimension, labels, relations and diagonals.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.labels == other.labels
            && self.cyl == other.cyl
            && self.diag == other.diag
            && self.transp == other.transp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_enumerates_pairs_densely() {
        for dim in 2..=MAX_DIM {
            let mut seen = vec![false; pair_count(dim)];
            for i in 0..dim {
                for j in i + 1..dim {
                    let k = pair_index(dim, i, j);
                    assert_eq!(k, pair_index(dim, j, i));
                    assert!(!seen[k]);
                    seen[k] = true;
                }
            }
            assert!(seen.into_iter().all(|b| b));
        }
    }

    fn two_atom(dim: usize) -> Result<CaAtomStructure> {
        let n = 2;
        let cyl = (0..dim).map(|_| Relation::from_key(n, |_| 0)).collect();
        let diag = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { AtomSet::full(n) } else { AtomSet::singleton(n, 0) })
                    .collect()
            })
            .collect();
        CaAtomStructure::new(dim, vec!["a".into(), "b".into()], cyl, diag)
    }

    #[test]
    fn dimension_bounds_are_enforced() {
        assert!(two_atom(2).is_ok());
        assert!(matches!(two_atom(1), Err(Error::Parameter(_))));
        assert!(matches!(two_atom(9), Err(Error::Parameter(_))));
    }

    #[test]
    fn non_full_identity_diagonal_is_rejected() {
        let n = 2;
        let cyl = (0..2).map(|_| Relation::identity(n)).collect();
        let diag = vec![
            vec![AtomSet::singleton(n, 0), AtomSet::full(n)],
            vec![AtomSet::full(n), AtomSet::full(n)],
        ];
        assert!(matches!(
            CaAtomStructure::new(2, vec!["a".into(), "b".into()], cyl, diag),
            Err(Error::InvalidStructure(_))
        ));
    }

    #[test]
    fn transpositions_must_be_involutions() {
        let s = two_atom(2).unwrap();
        let not_fn = Relation::from_pairs(2, [(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(s.clone().with_transpositions(vec![((0, 1), not_fn)]).is_err());
        let swap = Relation::from_function(2, |a| 1 - a).unwrap();
        let t = s.with_transpositions(vec![((0, 1), swap)]).unwrap();
        assert_eq!(t.transposition(1, 0).unwrap().as_ref(), &[1, 0]);
    }
}
