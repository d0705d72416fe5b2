//! The relation-algebra reduct of a cylindric complex algebra of dimension
//! `n >= 3`: identity `d_{n-2,n-1}`, converse by swapping `n-2` and `n-1`
//! through the spare index 0, composition through index 0.

use crate::atomset::AtomSet;
use crate::bao::element::Element;
use crate::bao::structure::CaAtomStructure;
use crate::error::{Error, Result};
use crate::neat::nr::{nr, QuotientFrame};
use crate::ra::RaAtomStructure;

#[derive(Clone, Debug)]
pub struct RaReduct<'a> {
    pub source: &'a CaAtomStructure,
    /// Classes of `Nr_{n-2,n-1}`: the atoms of the two-dimensional elements.
    pub frame: QuotientFrame,
}

pub fn ra_reduct(s: &CaAtomStructure) -> Result<RaReduct<'_>> {
    let n = s.dim();
    if n < 3 {
        return Err(Error::Parameter(format!("relation algebra reduct needs dimension >= 3, got {n}")));
    }
    let q = nr(s, &[n - 2, n - 1], false)?;
    Ok(RaReduct {
        source: s,
        frame: q.frame,
    })
}

impl RaReduct<'_> {
    fn sets_compose(&self, x: &AtomSet, y: &AtomSet) -> AtomSet {
        let s = self.source;
        let n = s.dim();
        let a = s.subst_repl_raw(n - 1, 0, x);
        let b = s.subst_repl_raw(n - 2, 0, y);
        s.cyl_raw(0, &a.intersection(&b))
    }

    fn sets_converse(&self, x: &AtomSet) -> AtomSet {
        let s = self.source;
        let n = s.dim();
        let inner = s.subst_repl_raw(n - 1, 0, x);
        let mid = s.subst_repl_raw(n - 2, n - 1, &inner);
        s.subst_repl_raw(0, n - 2, &mid)
    }

    pub fn compose(&self, x: &Element, y: &Element) -> Result<Element> {
        self.source.owns(x)?;
        self.source.owns(y)?;
        self.source.element_from_set(self.sets_compose(x.members(), y.members()))
    }

    pub fn converse(&self, x: &Element) -> Result<Element> {
        self.source.owns(x)?;
        self.source.element_from_set(self.sets_converse(x.members()))
    }

    pub fn identity(&self) -> Element {
        let n = self.source.dim();
        self.source.diag(n - 2, n - 1).expect("dimension checked")
    }

    /// Whether `x` is fixed by every cylindrifier below `n - 2`.
    pub fn is_two_dimensional(&self, x: &Element) -> bool {
        let s = self.source;
        (0..s.dim() - 2).all(|i| &s.cyl_raw(i, x.members()) == x.members())
    }

    /// The atom structure of the subalgebra generated by the two-dimensional
    /// atoms, read off the reduct operations. Fails if composition or
    /// converse of class unions is not again a union of classes.
    pub fn atom_structure(&self) -> Result<RaAtomStructure> {
        let q = &self.frame;
        let k = q.class_count();
        let class_set = |c: usize| q.lift(&AtomSet::singleton(k, c));
        let mut converse = Vec::with_capacity(k);
        for c in 0..k {
            let img = self.sets_converse(&class_set(c));
            let p = q.project(&img);
            if p.count() != 1 || q.lift(&p) != img {
                return Err(Error::Verification(format!("converse of class {c} is not a class")));
            }
            converse.push(p.iter().next().expect("one class"));
        }
        let id = self.identity();
        let identity: Vec<usize> = (0..k).filter(|&c| class_set(c).is_subset(id.members())).collect();
        if q.lift(&AtomSet::from_indices(k, identity.iter().copied())) != *id.members() {
            return Err(Error::Verification("identity is not a union of classes".into()));
        }
        let mut comp = vec![AtomSet::empty(k); k * k];
        for b in 0..k {
            for c in 0..k {
                let img = self.sets_compose(&class_set(b), &class_set(c));
                let p = q.project(&img);
                if q.lift(&p) != img {
                    return Err(Error::Verification(format!("class {b} ; class {c} is not a union of classes")));
                }
                comp[b * k + c] = p;
            }
        }
        let labels = q.structure.labels().to_vec();
        RaAtomStructure::from_consistency(labels, identity, converse, |a, b, c| comp[b * k + c].contains(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::set_algebra::{full_set_algebra, tuple_of};
    use crate::ra::check_ra_axioms;

    /// The element of tuples whose last two coordinates lie in `rel`.
    fn rel_element(s: &CaAtomStructure, rel: &[(usize, usize)]) -> Element {
        let n = s.dim();
        s.element((0..s.atom_count()).filter(|&a| {
            let t = tuple_of(a, n, 2);
            rel.contains(&(t[n - 2], t[n - 1]))
        }))
        .unwrap()
    }

    #[test]
    fn identity_is_the_last_diagonal() {
        let s = full_set_algebra(4, 2).unwrap();
        let r = ra_reduct(&s).unwrap();
        assert_eq!(r.identity(), s.diag(2, 3).unwrap());
        assert_eq!(r.identity(), rel_element(&s, &[(0, 0), (1, 1)]));
    }

    #[test]
    fn relational_composition_and_converse() {
        let s = full_set_algebra(4, 2).unwrap();
        let r = ra_reduct(&s).unwrap();
        let all: Vec<(usize, usize)> = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
        for m1 in 0..16u32 {
            let x: Vec<_> = all.iter().copied().filter(|p| m1 >> (2 * p.0 + p.1) & 1 == 1).collect();
            let ex = rel_element(&s, &x);
            assert!(r.is_two_dimensional(&ex));
            let conv: Vec<_> = x.iter().map(|&(a, b)| (b, a)).collect();
            assert_eq!(r.converse(&ex).unwrap(), rel_element(&s, &conv));
            assert_eq!(r.converse(&r.converse(&ex).unwrap()).unwrap(), ex);
            for m2 in 0..16u32 {
                let y: Vec<_> = all.iter().copied().filter(|p| m2 >> (2 * p.0 + p.1) & 1 == 1).collect();
                let comp: Vec<_> = all
                    .iter()
                    .copied()
                    .filter(|&(a, c)| x.iter().any(|&(a2, b)| a2 == a && y.contains(&(b, c))))
                    .collect();
                assert_eq!(r.compose(&ex, &rel_element(&s, &y)).unwrap(), rel_element(&s, &comp));
            }
        }
    }

    #[test]
    fn reduct_of_cs4_is_a_relation_algebra() {
        let s = full_set_algebra(4, 2).unwrap();
        let ra = ra_reduct(&s).unwrap().atom_structure().unwrap();
        assert_eq!(ra.atom_count(), 4);
        assert!(check_ra_axioms(&ra, 1 << 20).unwrap().all_passed());
    }

    #[test]
    fn dimension_contract() {
        let s = full_set_algebra(2, 2).unwrap();
        assert!(ra_reduct(&s).is_err());
    }
}
