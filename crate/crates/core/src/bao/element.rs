use std::fmt;

use crate::atomset::AtomSet;
use crate::bao::structure::{CaAtomStructure, StructureId};
use crate::error::{Error, Result};

/// An element of a complex algebra: a set of atoms of one fixed structure.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    owner: StructureId,
    members: AtomSet,
}

impl Element {
    pub(crate) fn new_unchecked(owner: StructureId, members: AtomSet) -> Self {
        Element { owner, members }
    }

    pub fn owner(&self) -> StructureId {
        self.owner
    }

    pub fn members(&self) -> &AtomSet {
        &self.members
    }

    pub fn into_members(self) -> AtomSet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    fn same_owner(&self, other: &Element) -> Result<()> {
        if self.owner == other.owner {
            Ok(())
        } else {
            Err(Error::StructureMismatch)
        }
    }

    pub fn join(&self, other: &Element) -> Result<Element> {
        self.same_owner(other)?;
        Ok(Element::new_unchecked(self.owner, self.members.union(&other.members)))
    }

    pub fn meet(&self, other: &Element) -> Result<Element> {
        self.same_owner(other)?;
        Ok(Element::new_unchecked(self.owner, self.members.intersection(&other.members)))
    }

    pub fn complement(&self) -> Element {
        Element::new_unchecked(self.owner, self.members.complement())
    }

    pub fn is_below(&self, other: &Element) -> Result<bool> {
        self.same_owner(other)?;
        Ok(self.members.is_subset(&other.members))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element{:?}", self.members)
    }
}

impl CaAtomStructure {
    /// The element with the given atom indices.
    pub fn element<I: IntoIterator<Item = usize>>(&self, atoms: I) -> Result<Element> {
        let mut set = AtomSet::empty(self.atom_count());
        for a in atoms {
            self.check_atom(a)?;
            set.insert(a);
        }
        Ok(Element::new_unchecked(self.id(), set))
    }

    pub fn element_from_set(&self, set: AtomSet) -> Result<Element> {
        if set.universe() != self.atom_count() {
            return Err(Error::StructureMismatch);
        }
        Ok(Element::new_unchecked(self.id(), set))
    }

    pub fn atom(&self, a: usize) -> Result<Element> {
        self.element([a])
    }

    pub fn zero(&self) -> Element {
        Element::new_unchecked(self.id(), AtomSet::empty(self.atom_count()))
    }

    pub fn unit(&self) -> Element {
        Element::new_unchecked(self.id(), AtomSet::full(self.atom_count()))
    }

    pub(crate) fn owns(&self, x: &Element) -> Result<()> {
        if x.owner() == self.id() {
            Ok(())
        } else {
            Err(Error::StructureMismatch)
        }
    }

    /// `c_i X = {a : exists b in X, (a, b) in T_i}`.
    pub fn cyl(&self, i: usize, x: &Element) -> Result<Element> {
        self.check_index(i)?;
        self.owns(x)?;
        Ok(Element::new_unchecked(self.id(), self.cyl_raw(i, x.members())))
    }

    /// `d_ij = E_ij`.
    pub fn diag(&self, i: usize, j: usize) -> Result<Element> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(Element::new_unchecked(self.id(), self.diag_set(i, j).clone()))
    }

    /// `s_i^j X = c_i(X . d_ij)` for `i != j`, and `X` when `i == j`.
    pub fn subst_repl(&self, i: usize, j: usize, x: &Element) -> Result<Element> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.owns(x)?;
        Ok(Element::new_unchecked(self.id(), self.subst_repl_raw(i, j, x.members())))
    }

    /// `s_[i,j] X = {a : exists b in X, a P_ij b}`.
    pub fn subst_transp(&self, i: usize, j: usize, x: &Element) -> Result<Element> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.owns(x)?;
        let set = self.transp_raw(i, j, x.members()).ok_or(Error::NoTranspositions)?;
        Ok(Element::new_unchecked(self.id(), set))
    }

    /// `c_i^d X = -c_i -X`.
    pub fn dual_cyl(&self, i: usize, x: &Element) -> Result<Element> {
        Ok(self.cyl(i, &x.complement())?.complement())
    }

    /// The dimension set `{i : c_i X != X}`.
    pub fn delta(&self, x: &Element) -> Result<Vec<usize>> {
        self.owns(x)?;
        Ok((0..self.dim())
            .filter(|&i| self.cyl_raw(i, x.members()) != *x.members())
            .collect())
    }
}
