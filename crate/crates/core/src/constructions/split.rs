//! Finite atom splitting: an atom is replaced by `k` copies standing in the
//! same relations, and every element maps to the join of its copies.

use crate::atomset::AtomSet;
use crate::bao::structure::CaAtomStructure;
use crate::error::{Error, Result};
use crate::ra::RaAtomStructure;
use crate::relation::Relation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CopyRule {
    /// Copies are related to each other iff the atom was related to itself.
    Inherit,
    /// `k x k` table deciding which pairs of copies may be related.
    Custom(Vec<Vec<bool>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPolicy {
    pub copies: usize,
    pub rule: CopyRule,
}

impl SplitPolicy {
    pub fn inherit(copies: usize) -> Self {
        SplitPolicy {
            copies,
            rule: CopyRule::Inherit,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.copies < 2 {
            return Err(Error::Parameter(format!("splitting needs at least 2 copies, got {}", self.copies)));
        }
        if let CopyRule::Custom(t) = &self.rule {
            if t.len() != self.copies || t.iter().any(|row| row.len() != self.copies) {
                return Err(Error::Parameter(format!("copy table must be {0}x{0}", self.copies)));
            }
        }
        Ok(())
    }

    fn allows(&self, c: usize, d: usize) -> bool {
        match &self.rule {
            CopyRule::Inherit => true,
            CopyRule::Custom(t) => t[c][d],
        }
    }
}

/// Index bookkeeping shared by both splitters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMap {
    pub split_atom: usize,
    pub copies: usize,
    /// New atom -> original atom.
    pub origin: Vec<usize>,
    /// New atom -> copy number (0 for unsplit atoms).
    pub copy_of: Vec<usize>,
    /// Original atom -> the set of its new atoms.
    pub embedding: Vec<AtomSet>,
}

impl SplitMap {
    fn new(old: usize, a: usize, k: usize) -> Self {
        let n = old + k - 1;
        let mut origin = Vec::with_capacity(n);
        let mut copy_of = Vec::with_capacity(n);
        for b in 0..old {
            if b == a {
                for c in 0..k {
                    origin.push(a);
                    copy_of.push(c);
                }
            } else {
                origin.push(b);
                copy_of.push(0);
            }
        }
        let mut embedding = vec![AtomSet::empty(n); old];
        for (u, &b) in origin.iter().enumerate() {
            embedding[b].insert(u);
        }
        SplitMap {
            split_atom: a,
            copies: k,
            origin,
            copy_of,
            embedding,
        }
    }

    pub fn new_count(&self) -> usize {
        self.origin.len()
    }

    /// The image of an original element: the join of the images of its atoms.
    pub fn embed(&self, x: &AtomSet) -> AtomSet {
        let mut out = AtomSet::empty(self.new_count());
        for b in x.iter() {
            out.union_with(&self.embedding[b]);
        }
        out
    }

    fn is_copy(&self, u: usize) -> bool {
        self.origin[u] == self.split_atom
    }

    fn label(&self, old: &str, u: usize) -> String {
        if self.is_copy(u) {
            format!("{old}#{}", self.copy_of[u])
        } else {
            old.to_string()
        }
    }
}

#[derive(Clone, Debug)]
pub struct CaSplit {
    pub structure: CaAtomStructure,
    pub map: SplitMap,
}

#[derive(Clone, Debug)]
pub struct RaSplit {
    pub structure: RaAtomStructure,
    pub map: SplitMap,
}

/// Splits atom `a` of a cylindric structure. Transpositions must fix `a`;
/// each copy is then fixed as well.
pub fn split_ca_atom(s: &CaAtomStructure, a: usize, policy: &SplitPolicy) -> Result<CaSplit> {
    policy.validate()?;
    let old = s.atom_count();
    if a >= old {
        return Err(Error::IndexOutOfRange { index: a, bound: old });
    }
    let map = SplitMap::new(old, a, policy.copies);
    let n = map.new_count();
    let labels = (0..n).map(|u| map.label(s.label(map.origin[u]), u)).collect();
    let related = |t: &Relation, u: usize, v: usize| {
        let (p, q) = (map.origin[u], map.origin[v]);
        t.related(p, q) && (!(map.is_copy(u) && map.is_copy(v)) || policy.allows(map.copy_of[u], map.copy_of[v]))
    };
    let mut cyl = Vec::with_capacity(s.dim());
    for i in 0..s.dim() {
        let t = s.cyl_relation(i);
        let mut pairs = Vec::new();
        for u in 0..n {
            for &q in t.successors(map.origin[u]) {
                for v in map.embedding[q as usize].iter() {
                    if related(t, u, v) {
                        pairs.push((u, v));
                    }
                }
            }
        }
        cyl.push(Relation::from_pairs(n, pairs)?.normalized());
    }
    let diag = (0..s.dim())
        .map(|i| (0..s.dim()).map(|j| map.embed(s.diag_set(i, j))).collect())
        .collect();
    let mut out = CaAtomStructure::new(s.dim(), labels, cyl, diag)?;
    if s.has_transpositions() {
        for i in 0..s.dim() {
            for j in i + 1..s.dim() {
                if s.transposition(i, j).expect("polyadic")[a] != a {
                    return Err(Error::InvalidStructure(format!(
                        "P{i}{j} moves the split atom, so its copies have no single image"
                    )));
                }
            }
        }
        out = out.with_transposition_fn(|i, j, u| {
            if map.is_copy(u) {
                u
            } else {
                let p = s.transposition(i, j).expect("polyadic");
                map.embedding[p[map.origin[u]]].iter().next().expect("unsplit atom")
            }
        })?;
    }
    Ok(CaSplit { structure: out, map })
}

/// Splits atom `a` of a relation-algebra structure. The atom must be self
/// converse; a custom copy table must be symmetric. A triple is consistent
/// iff its original is and every two copies in it are allowed by the table.
pub fn split_ra_atom(s: &RaAtomStructure, a: usize, policy: &SplitPolicy) -> Result<RaSplit> {
    policy.validate()?;
    let old = s.atom_count();
    if a >= old {
        return Err(Error::IndexOutOfRange { index: a, bound: old });
    }
    if s.converse_of(a) != a {
        return Err(Error::InvalidStructure(format!(
            "atom {} is not self converse; copies would have no converse",
            s.label(a)
        )));
    }
    if let CopyRule::Custom(t) = &policy.rule {
        let k = policy.copies;
        if let Some((c, d)) = (0..k).flat_map(|c| (0..k).map(move |d| (c, d))).find(|&(c, d)| t[c][d] != t[d][c]) {
            return Err(Error::InvalidStructure(format!(
                "copy table is not symmetric at ({c},{d}), inconsistent with the converse"
            )));
        }
    }
    let map = SplitMap::new(old, a, policy.copies);
    let n = map.new_count();
    let labels = (0..n).map(|u| map.label(s.label(map.origin[u]), u)).collect();
    let identity: Vec<usize> = map.embed(s.identity_set()).to_vec();
    let converse: Vec<usize> = (0..n)
        .map(|u| {
            if map.is_copy(u) {
                u
            } else {
                map.embedding[s.converse_of(map.origin[u])].iter().next().expect("unsplit atom")
            }
        })
        .collect();
    let copies_ok = |t: [usize; 3]| {
        let cs: Vec<usize> = t.iter().filter(|&&u| map.is_copy(u)).map(|&u| map.copy_of[u]).collect();
        cs.iter().enumerate().all(|(p, &c)| cs[p + 1..].iter().all(|&d| policy.allows(c, d)))
    };
    let out = RaAtomStructure::from_consistency(labels, identity, converse, |x, y, z| {
        s.is_consistent(map.origin[x], map.origin[y], map.origin[z]) && copies_ok([x, y, z])
    })?;
    Ok(RaSplit { structure: out, map })
}

/// Collapses the copies again: the quotient by the copy partition.
pub fn merge_ca_copies(split: &CaSplit, original_labels: &[String]) -> Result<CaAtomStructure> {
    let s = &split.structure;
    let map = &split.map;
    let old = map.embedding.len();
    let cyl = (0..s.dim())
        .map(|i| {
            let t = s.cyl_relation(i);
            let pairs: Vec<(usize, usize)> = t.pairs().map(|(u, v)| (map.origin[u], map.origin[v])).collect();
            Relation::from_pairs(old, pairs).map(Relation::normalized)
        })
        .collect::<Result<Vec<_>>>()?;
    let diag = (0..s.dim())
        .map(|i| {
            (0..s.dim())
                .map(|j| AtomSet::from_indices(old, s.diag_set(i, j).iter().map(|u| map.origin[u])))
                .collect()
        })
        .collect();
    let mut out = CaAtomStructure::new(s.dim(), original_labels.to_vec(), cyl, diag)?;
    if s.has_transpositions() {
        out = out.with_transposition_fn(|i, j, b| {
            let u = map.embedding[b].iter().next().expect("nonempty image");
            map.origin[s.transposition(i, j).expect("polyadic")[u]]
        })?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::check_ca_frame;
    use crate::constructions::monk::monk_atoms;
    use crate::constructions::set_algebra::full_set_algebra;
    use crate::ra::{check_ra_axioms, cyclic_group_ra};

    #[test]
    fn counts_and_embedding() {
        let s = full_set_algebra(2, 2).unwrap();
        // (0,0) is fixed by the only transposition
        let sp = split_ca_atom(&s, 0, &SplitPolicy::inherit(3)).unwrap();
        assert_eq!(sp.structure.atom_count(), 4 + 2);
        assert_eq!(sp.map.embedding[0].to_vec(), vec![0, 1, 2]);
        assert_eq!(sp.map.embedding[1].to_vec(), vec![3]);
        assert!(split_ca_atom(&s, 1, &SplitPolicy::inherit(2)).is_err());
        assert!(split_ca_atom(&s, 9, &SplitPolicy::inherit(2)).is_err());
        assert!(split_ca_atom(&s, 0, &SplitPolicy::inherit(1)).is_err());
    }

    #[test]
    fn merge_restores_monk_structure() {
        let g = monk_atoms(3, 3).unwrap();
        let sp = split_ca_atom(&g.structure, 5, &SplitPolicy::inherit(3)).unwrap();
        let back = merge_ca_copies(&sp, g.structure.labels()).unwrap();
        assert_eq!(back, g.structure);
    }

    #[test]
    fn split_preserves_cylindrifiers_on_generators() {
        let g = monk_atoms(3, 3).unwrap();
        let s = &g.structure;
        let sp = split_ca_atom(s, 5, &SplitPolicy::inherit(2)).unwrap();
        for b in 0..s.atom_count() {
            let x = AtomSet::singleton(s.atom_count(), b);
            for i in 0..3 {
                assert_eq!(sp.map.embed(&s.cyl_raw(i, &x)), sp.structure.cyl_raw(i, &sp.map.embed(&x)));
            }
        }
        let _ = check_ca_frame(&sp.structure);
    }

    #[test]
    fn ra_split() {
        let z = cyclic_group_ra(4).unwrap();
        // g2 is self converse in Z_4
        let sp = split_ra_atom(&z, 2, &SplitPolicy::inherit(2)).unwrap();
        assert_eq!(sp.structure.atom_count(), 5);
        let r = check_ra_axioms(&sp.structure, u128::MAX).unwrap();
        assert!(r.get("peircean").unwrap().passed);
        assert!(split_ra_atom(&z, 1, &SplitPolicy::inherit(2)).is_err());
        let lopsided = SplitPolicy {
            copies: 2,
            rule: CopyRule::Custom(vec![vec![true, true], vec![false, true]]),
        };
        assert!(split_ra_atom(&z, 2, &lopsided).is_err());
    }
}
