use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::atomset::AtomSet;
use crate::bao::element::Element;
use crate::bao::structure::StructureId;
use crate::error::{Error, Result};

/// Largest supported atom count; the consistency table is dense.
pub const MAX_RA_ATOMS: usize = 256;

/// Elements of relation-algebra complex algebras share the element type of
/// the cylindric side; ownership is tracked by structure fingerprint.
pub type RaElement = Element;

/// A finite relation-algebra atom structure.
///
/// A triple `(a, b, c)` is consistent when `a <= b ; c`. The forbidden
/// (inconsistent) triples are stored sorted; [`RaAtomStructure::new`] closes
/// them under the Peircean images first.
#[derive(Clone, Debug)]
pub struct RaAtomStructure {
    id: StructureId,
    labels: Vec<String>,
    identity: AtomSet,
    converse: Vec<usize>,
    forbidden: Vec<[usize; 3]>,
    consistent: Vec<u64>,
    // comp[b * n + c] = {a : (a, b, c) consistent}
    comp: Vec<AtomSet>,
}

/// The images of a triple under the generators of the Peircean group.
pub fn peircean_images(t: [usize; 3], converse: &[usize]) -> [[usize; 3]; 3] {
    let [a, b, c] = t;
    [
        [b, a, converse[c]],
        [c, converse[b], a],
        [converse[a], converse[c], converse[b]],
    ]
}

/// The orbit of `t` under the Peircean group (at most six triples).
pub fn peircean_orbit(t: [usize; 3], converse: &[usize]) -> BTreeSet<[usize; 3]> {
    let mut orbit = BTreeSet::from([t]);
    let mut stack = vec![t];
    while let Some(u) = stack.pop() {
        for v in peircean_images(u, converse) {
            if orbit.insert(v) {
                stack.push(v);
            }
        }
    }
    orbit
}

impl RaAtomStructure {
    /// Builds a structure; `forbidden` is closed under the Peircean images.
    pub fn new(
        labels: Vec<String>,
        identity: Vec<usize>,
        converse: Vec<usize>,
        forbidden: impl IntoIterator<Item = [usize; 3]>,
    ) -> Result<Self> {
        let given: Vec<[usize; 3]> = forbidden.into_iter().collect();
        Self::check_shape(labels.len(), &identity, &converse, &given)?;
        let mut closed = BTreeSet::new();
        for t in given {
            if !closed.contains(&t) {
                closed.extend(peircean_orbit(t, &converse));
            }
        }
        Self::build(labels, identity, converse, closed.into_iter().collect())
    }

    /// Builds a structure keeping `forbidden` exactly as given.
    pub fn new_unclosed(
        labels: Vec<String>,
        identity: Vec<usize>,
        converse: Vec<usize>,
        forbidden: impl IntoIterator<Item = [usize; 3]>,
    ) -> Result<Self> {
        let given: Vec<[usize; 3]> = forbidden.into_iter().collect();
        Self::check_shape(labels.len(), &identity, &converse, &given)?;
        let set: BTreeSet<[usize; 3]> = given.into_iter().collect();
        Self::build(labels, identity, converse, set.into_iter().collect())
    }

    /// Builds a structure from a consistency predicate; no closure is applied.
    pub fn from_consistency(
        labels: Vec<String>,
        identity: Vec<usize>,
        converse: Vec<usize>,
        consistent: impl Fn(usize, usize, usize) -> bool,
    ) -> Result<Self> {
        let n = labels.len();
        if n > MAX_RA_ATOMS {
            return Err(Error::BoundExceeded(format!("{n} atoms exceeds cap {MAX_RA_ATOMS}")));
        }
        let mut forb = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !consistent(a, b, c) {
                        forb.push([a, b, c]);
                    }
                }
            }
        }
        Self::new_unclosed(labels, identity, converse, forb)
    }

    fn check_shape(n: usize, identity: &[usize], converse: &[usize], forbidden: &[[usize; 3]]) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidStructure("no atoms".into()));
        }
        if n > MAX_RA_ATOMS {
            return Err(Error::BoundExceeded(format!("{n} atoms exceeds cap {MAX_RA_ATOMS}")));
        }
        if identity.is_empty() {
            return Err(Error::InvalidStructure("empty identity set".into()));
        }
        if converse.len() != n {
            return Err(Error::InvalidStructure(format!("converse has {} entries for {n} atoms", converse.len())));
        }
        let bad = identity
            .iter()
            .chain(converse)
            .chain(forbidden.iter().flatten())
            .find(|&&a| a >= n);
        if let Some(&a) = bad {
            return Err(Error::IndexOutOfRange { index: a, bound: n });
        }
        if let Some(a) = (0..n).find(|&a| converse[converse[a]] != a) {
            return Err(Error::InvalidStructure(format!("converse is not an involution at atom {a}")));
        }
        Ok(())
    }

    fn build(labels: Vec<String>, identity: Vec<usize>, converse: Vec<usize>, forbidden: Vec<[usize; 3]>) -> Result<Self> {
        let n = labels.len();
        let cube = n * n * n;
        let mut consistent = vec![u64::MAX; cube.div_ceil(64)];
        for &[a, b, c] in &forbidden {
            let k = (a * n + b) * n + c;
            consistent[k / 64] &= !(1u64 << (k % 64));
        }
        let bit = |a: usize, b: usize, c: usize| {
            let k = (a * n + b) * n + c;
            consistent[k / 64] >> (k % 64) & 1 == 1
        };
        let comp = (0..n * n)
            .map(|bc| AtomSet::from_indices(n, (0..n).filter(|&a| bit(a, bc / n, bc % n))))
            .collect();
        let mut s = RaAtomStructure {
            id: StructureId(0),
            identity: AtomSet::from_indices(n, identity),
            labels,
            converse,
            forbidden,
            consistent,
            comp,
        };
        let mut h = std::collections::hash_map::DefaultHasher::new();
        "ra".hash(&mut h);
        s.labels.hash(&mut h);
        s.identity.hash(&mut h);
        s.converse.hash(&mut h);
        s.forbidden.hash(&mut h);
        s.id = StructureId(h.finish());
        Ok(s)
    }

    pub fn id(&self) -> StructureId {
        self.id
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

    pub fn atom_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn identity_set(&self) -> &AtomSet {
        &self.identity
    }

    pub fn converse_map(&self) -> &[usize] {
        &self.converse
    }

    pub fn converse_of(&self, a: usize) -> usize {
        self.converse[a]
    }

    /// Forbidden triples in sorted order.
    pub fn forbidden(&self) -> &[[usize; 3]] {
        &self.forbidden
    }

    pub fn is_consistent(&self, a: usize, b: usize, c: usize) -> bool {
        let n = self.atom_count();
        let k = (a * n + b) * n + c;
        self.consistent[k / 64] >> (k % 64) & 1 == 1
    }

    /// `{a : (a, b, c) consistent}`, the composite of two atoms.
    pub fn atom_composite(&self, b: usize, c: usize) -> &AtomSet {
        &self.comp[b * self.atom_count() + c]
    }

    pub fn element<I: IntoIterator<Item = usize>>(&self, atoms: I) -> Result<RaElement> {
        let n = self.atom_count();
        let mut set = AtomSet::empty(n);
        for a in atoms {
            if a >= n {
                return Err(Error::IndexOutOfRange { index: a, bound: n });
            }
            set.insert(a);
        }
        Ok(Element::new_unchecked(self.id, set))
    }

    pub fn atom(&self, a: usize) -> Result<RaElement> {
        self.element([a])
    }

    pub fn zero(&self) -> RaElement {
        Element::new_unchecked(self.id, AtomSet::empty(self.atom_count()))
    }

    pub fn unit(&self) -> RaElement {
        Element::new_unchecked(self.id, AtomSet::full(self.atom_count()))
    }

    fn owns(&self, x: &RaElement) -> Result<()> {
        if x.owner() == self.id {
            Ok(())
        } else {
            Err(Error::StructureMismatch)
        }
    }

    pub(crate) fn compose_raw(&self, x: &AtomSet, y: &AtomSet) -> AtomSet {
        let mut out = AtomSet::empty(self.atom_count());
        for b in x.iter() {
            for c in y.iter() {
                out.union_with(self.atom_composite(b, c));
            }
        }
        out
    }

    pub(crate) fn converse_raw(&self, x: &AtomSet) -> AtomSet {
        AtomSet::from_indices(self.atom_count(), x.iter().map(|a| self.converse[a]))
    }

    /// `X ; Y = {a : exists b in X, c in Y, (a, b, c) consistent}`.
    pub fn compose(&self, x: &RaElement, y: &RaElement) -> Result<RaElement> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(Element::new_unchecked(self.id, self.compose_raw(x.members(), y.members())))
    }

    pub fn converse_el(&self, x: &RaElement) -> Result<RaElement> {
        self.owns(x)?;
        Ok(Element::new_unchecked(self.id, self.converse_raw(x.members())))
    }

    pub fn identity_el(&self) -> RaElement {
        Element::new_unchecked(self.id, self.identity.clone())
    }
}

impl PartialEq for RaAtomStructure {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.identity == other.identity
            && self.converse == other.converse
            && self.forbidden == other.forbidden
    }
}

#[derive(Serialize, Deserialize)]
struct RaJson {
    atoms: Vec<String>,
    converse: Vec<usize>,
    forbidden: Vec<[usize; 3]>,
    identity: Vec<usize>,
}

impl RaAtomStructure {
    pub fn to_json(&self) -> String {
        let doc = RaJson {
            atoms: self.labels.clone(),
            converse: self.converse.clone(),
            forbidden: self.forbidden.clone(),
            identity: self.identity.to_vec(),
        };
        serde_json::to_string(&doc).expect("plain data serializes")
    }

    /// Parses the canonical form; the forbidden list is closed on load.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: RaJson = serde_json::from_str(text)?;
        Self::new(doc.atoms, doc.identity, doc.converse, doc.forbidden)
    }
}

/// The group relation algebra of `Z_k`: atoms are group elements,
/// `a <= b ; c` iff `a = b + c`.
pub fn cyclic_group_ra(k: usize) -> Result<RaAtomStructure> {
    if k == 0 {
        return Err(Error::Parameter("group order must be positive".into()));
    }
    RaAtomStructure::from_consistency(
        (0..k).map(|g| format!("g{g}")).collect(),
        vec![0],
        (0..k).map(|g| (k - g) % k).collect(),
        |a, b, c| a == (b + c) % k,
    )
}
