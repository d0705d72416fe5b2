//! Relativization `Rl_x`: elements below `x`, operators intersected with `x`.
//!
//! On a complex algebra this is the complex algebra of the frame restricted
//! to the atoms of `x`, so the relativized handle carries that frame and the
//! usual evaluators and checkers run on it directly.

use serde::Serialize;

use crate::atomset::AtomSet;
use crate::bao::element::Element;
use crate::bao::structure::{CaAtomStructure, StructureId};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Relativized {
    pub source: StructureId,
    pub x: AtomSet,
    /// Source atom of each atom of `structure`.
    pub atoms: Vec<usize>,
    index: Vec<Option<usize>>,
    /// The restricted frame; its complex algebra is `Rl_x Ca(source)`.
    pub structure: CaAtomStructure,
    /// Whether every transposition maps `x` onto itself and was kept.
    pub transpositions_kept: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutationProbe {
    pub commute: bool,
    /// `(i, j, atom)` with `c_i c_j {atom} != c_j c_i {atom}`; atom is a source index.
    pub witness: Option<(usize, usize, usize)>,
}

pub fn rl_x(s: &CaAtomStructure, x: &Element) -> Result<Relativized> {
    s.owns(x)?;
    if x.is_empty() {
        return Err(Error::Parameter("relativizing to the zero element".into()));
    }
    let keep = x.members().clone();
    let atoms: Vec<usize> = keep.iter().collect();
    let mut index = vec![None; s.atom_count()];
    for (k, &a) in atoms.iter().enumerate() {
        index[a] = Some(k);
    }
    let n = atoms.len();
    let cyl = (0..s.dim()).map(|i| s.cyl_relation(i).restrict(&keep, &index)).collect();
    let diag = (0..s.dim())
        .map(|i| {
            (0..s.dim())
                .map(|j| AtomSet::from_indices(n, (0..n).filter(|&k| s.diag_set(i, j).contains(atoms[k]))))
                .collect()
        })
        .collect();
    let labels = atoms.iter().map(|&a| s.label(a).to_string()).collect();
    let mut structure = CaAtomStructure::new(s.dim(), labels, cyl, diag)?;
    let mut kept = false;
    if s.has_transpositions() {
        let closed = (0..s.dim()).all(|i| {
            (i + 1..s.dim()).all(|j| {
                let f = s.transposition(i, j).expect("polyadic");
                atoms.iter().all(|&a| keep.contains(f[a]))
            })
        });
        if closed {
            structure = structure.with_transposition_fn(|i, j, k| {
                index[s.transposition(i, j).expect("polyadic")[atoms[k]]].expect("closed")
            })?;
            kept = true;
        }
    }
    Ok(Relativized {
        source: s.id(),
        x: keep,
        atoms,
        index,
        structure,
        transpositions_kept: kept,
    })
}

impl Relativized {
    /// A source set below `x` as an element of the relativized algebra.
    pub fn restrict(&self, y: &AtomSet) -> Result<Element> {
        if !y.is_subset(&self.x) {
            return Err(Error::Parameter("element is not below the relativizing element".into()));
        }
        self.structure
            .element(y.iter().map(|a| self.index[a].expect("below x")))
    }

    /// Back to a source set.
    pub fn embed(&self, y: &Element) -> AtomSet {
        AtomSet::from_indices(self.x.universe(), y.members().iter().map(|k| self.atoms[k]))
    }

    /// `c_i c_j = c_j c_i` on every atom of the relativized algebra.
    pub fn commutation_probe(&self) -> CommutationProbe {
        let s = &self.structure;
        let n = s.atom_count();
        for i in 0..s.dim() {
            for j in i + 1..s.dim() {
                for a in 0..n {
                    let x = AtomSet::singleton(n, a);
                    if s.cyl_raw(i, &s.cyl_raw(j, &x)) != s.cyl_raw(j, &s.cyl_raw(i, &x)) {
                        return CommutationProbe {
                            commute: false,
                            witness: Some((i, j, self.atoms[a])),
                        };
                    }
                }
            }
        }
        CommutationProbe {
            commute: true,
            witness: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::{check_ca_frame, ca_axioms, failing_axioms, CheckMode};
    use crate::constructions::set_algebra::{full_set_algebra, index_of};
    use crate::relation::Relation;

    #[test]
    fn unit_changes_nothing() {
        let s = full_set_algebra(3, 2).unwrap();
        let r = rl_x(&s, &s.unit()).unwrap();
        assert_eq!(r.structure, s);
        assert!(r.transpositions_kept);
        assert!(r.commutation_probe().commute);
        let x = s.element([1, 4, 6]).unwrap();
        let back = r.embed(&r.restrict(x.members()).unwrap());
        assert_eq!(&back, x.members());
    }

    /// Two disjoint copies of Cs_2 over a base of 2.
    fn two_copies() -> CaAtomStructure {
        let base = full_set_algebra(2, 2).unwrap();
        let labels = (0..8).map(|a| format!("{}{}", base.label(a % 4), a / 4)).collect();
        let cyl = (0..2)
            .map(|i| {
                let r = base.cyl_relation(i);
                Relation::from_pairs(8, r.pairs().flat_map(|(a, b)| [(a, b), (a + 4, b + 4)])).unwrap()
            })
            .collect();
        let diag = (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| AtomSet::from_indices(8, base.diag_set(i, j).iter().flat_map(|a| [a, a + 4])))
                    .collect()
            })
            .collect();
        CaAtomStructure::new(2, labels, cyl, diag).unwrap()
    }

    #[test]
    fn closed_component_keeps_frame() {
        let s = two_copies();
        assert!(check_ca_frame(&s).ca_passed());
        let r = rl_x(&s, &s.element(0..4).unwrap()).unwrap();
        assert!(check_ca_frame(&r.structure).ca_passed());
        assert!(r.commutation_probe().commute);
    }

    #[test]
    fn relativizing_to_a_face_loses_diagonal_law() {
        let s = full_set_algebra(3, 2).unwrap();
        // tuples ending in 1: cylindrifiers still commute, but E01 is no
        // longer generated through index 2
        let x = s.element((0..8).filter(|a| a % 2 == 1)).unwrap();
        let r = rl_x(&s, &x).unwrap();
        assert!(r.commutation_probe().commute);
        let rep = check_ca_frame(&r.structure);
        assert!(rep.failures().all(|c| c.family == "C6"), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(!rep.ca_passed());
    }

    #[test]
    fn cutting_a_class_breaks_commutativity() {
        let s = full_set_algebra(2, 2).unwrap();
        let x = s
            .element([index_of(&[0, 0], 2), index_of(&[0, 1], 2), index_of(&[1, 0], 2)])
            .unwrap();
        let r = rl_x(&s, &x).unwrap();
        let p = r.commutation_probe();
        assert!(!p.commute);
        assert_eq!(p.witness.map(|(i, j, _)| (i, j)), Some((0, 1)));
        let bad = failing_axioms(&r.structure, &ca_axioms(2), CheckMode::Exhaustive).unwrap();
        assert!(bad.iter().any(|n| n.starts_with("C4")), "{bad:?}");
    }

    #[test]
    fn zero_is_refused() {
        let s = full_set_algebra(2, 2).unwrap();
        assert!(rl_x(&s, &s.zero()).is_err());
    }
}
