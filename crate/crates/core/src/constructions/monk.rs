//! Monk's atom structures `G(m, n)` and Johnson's polyadic extension.
//!
//! An atom is a pair `(R, f)`: `R` an equivalence on `{0..m-1}` and `f` a
//! symmetric colouring by `{0..n-1}` of the pairs outside `R`, constant on
//! `R`-classes and with no monochromatic triangle of pairwise `R`-unrelated
//! indices.

use std::collections::HashMap;
use std::fmt;

use crate::atomset::AtomSet;
use crate::bao::structure::{CaAtomStructure, MAX_ATOMS};
use crate::error::{Error, Result};
use crate::relation::Relation;

/// No colour: the pair is inside `R`.
const IN_R: u8 = u8::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonkAtom {
    /// Class index of each point, numbered in order of first appearance.
    pub partition: Vec<u8>,
    /// Row-major `m x m` colour table; `u8::MAX` on `R`-related pairs.
    pub colours: Vec<u8>,
}

impl MonkAtom {
    pub fn m(&self) -> usize {
        self.partition.len()
    }

    pub fn related(&self, k: usize, l: usize) -> bool {
        self.partition[k] == self.partition[l]
    }

    pub fn colour(&self, k: usize, l: usize) -> Option<u8> {
        let c = self.colours[k * self.m() + l];
        (c != IN_R).then_some(c)
    }

    /// The atom `(R o s, f o s)` for a permutation `s` of the points.
    pub fn permuted(&self, s: &[usize]) -> MonkAtom {
        let m = self.m();
        let mut ids: HashMap<u8, u8> = HashMap::new();
        let partition = (0..m)
            .map(|k| {
                let next = ids.len() as u8;
                *ids.entry(self.partition[s[k]]).or_insert(next)
            })
            .collect();
        let colours = (0..m * m).map(|kl| self.colours[s[kl / m] * m + s[kl % m]]).collect();
        MonkAtom { partition, colours }
    }

    /// The atom with every colour `c` replaced by `perm[c]`.
    pub fn recoloured(&self, perm: &[u8]) -> MonkAtom {
        MonkAtom {
            partition: self.partition.clone(),
            colours: self
                .colours
                .iter()
                .map(|&c| if c == IN_R { c } else { perm[c as usize] })
                .collect(),
        }
    }
}

impl fmt::Display for MonkAtom {
    /// `R=[01|2] f={02:1,12:1}`: classes of `R`, then colours of pairs `k<l` outside `R`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m();
        let classes = *self.partition.iter().max().unwrap_or(&0) as usize + 1;
        let blocks: Vec<String> = (0..classes)
            .map(|c| {
                (0..m)
                    .filter(|&k| self.partition[k] as usize == c)
                    .map(|k| k.to_string())
                    .collect()
            })
            .collect();
        let mut cols = Vec::new();
        for k in 0..m {
            for l in k + 1..m {
                if let Some(c) = self.colour(k, l) {
                    cols.push(format!("{k}{l}:{c}"));
                }
            }
        }
        write!(f, "R=[{}] f={{{}}}", blocks.join("|"), cols.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct MonkStructure {
    pub m: usize,
    pub n: usize,
    pub atoms: Vec<MonkAtom>,
    pub structure: CaAtomStructure,
}

impl MonkStructure {
    pub fn recognize(&self, atom: &MonkAtom) -> Option<usize> {
        self.atoms.binary_search(atom).ok()
    }

    /// One line per atom: index and `(R, f)`.
    pub fn listing(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.atoms.iter().enumerate() {
            out.push_str(&format!("{i}\t{a}\n"));
        }
        out
    }
}

/// Equivalences on `{0..m-1}` as restricted growth strings, lexicographically.
pub fn partitions(m: usize) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, m: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        let top = prefix.iter().max().map_or(0, |&c| c + 1);
        for c in 0..=top {
            prefix.push(c);
            go(prefix, m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(m), m, &mut out);
    out
}

fn colourings(classes: usize, n: usize, limit: usize) -> Result<Vec<Vec<u8>>> {
    // colour per unordered class pair (p<q), pairs in lexicographic order
    let pairs: Vec<(usize, usize)> = (0..classes)
        .flat_map(|p| (p + 1..classes).map(move |q| (p, q)))
        .collect();
    let slot = |p: usize, q: usize| pairs.iter().position(|&e| e == (p.min(q), p.max(q))).expect("pair");
    let mut out = Vec::new();
    let mut cur = vec![0u8; pairs.len()];
    fn go(
        k: usize,
        cur: &mut Vec<u8>,
        pairs: &[(usize, usize)],
        slot: &dyn Fn(usize, usize) -> usize,
        n: usize,
        limit: usize,
        out: &mut Vec<Vec<u8>>,
    ) -> Result<()> {
        if k == pairs.len() {
            if out.len() >= limit {
                return Err(Error::BoundExceeded(format!("more than {limit} atoms")));
            }
            out.push(cur.clone());
            return Ok(());
        }
        let (p, q) = pairs[k];
        for c in 0..n as u8 {
            // the last pair of a triangle p<q, r<q closes it
            let mono = (0..p).any(|r| cur[slot(r, p)] == c && cur[slot(r, q)] == c);
            if mono {
                continue;
            }
            cur[k] = c;
            go(k + 1, cur, pairs, slot, n, limit, out)?;
        }
        Ok(())
    }
    go(0, &mut cur, &pairs, &slot, n, limit, &mut out)?;
    Ok(out)
}

/// Enumerates the atoms of `G(m, n)` in sorted order.
pub fn monk_atom_list(m: usize, n: usize) -> Result<Vec<MonkAtom>> {
    if !(3..=5).contains(&m) || !(3..=6).contains(&n) || m > n {
        return Err(Error::Parameter(format!("Monk structure needs 3 <= m <= n, m <= 5, n <= 6; got m={m}, n={n}")));
    }
    let mut atoms = Vec::new();
    for part in partitions(m) {
        let classes = *part.iter().max().expect("m >= 3") as usize + 1;
        let pairs: Vec<(usize, usize)> = (0..classes)
            .flat_map(|p| (p + 1..classes).map(move |q| (p, q)))
            .collect();
        for cols in colourings(classes, n, MAX_ATOMS - atoms.len())? {
            let mut colours = vec![IN_R; m * m];
            for k in 0..m {
                for l in 0..m {
                    let (p, q) = (part[k] as usize, part[l] as usize);
                    if p != q {
                        let e = pairs.iter().position(|&e| e == (p.min(q), p.max(q))).expect("pair");
                        colours[k * m + l] = cols[e];
                    }
                }
            }
            atoms.push(MonkAtom {
                partition: part.clone(),
                colours,
            });
        }
    }
    atoms.sort();
    Ok(atoms)
}

/// `G(m, n)`: `T_k` relates atoms that agree (in `R` and in `f`) on the
/// points other than `k`; `E_kl` is the set of atoms with `k R l`.
pub fn monk_atoms(m: usize, n: usize) -> Result<MonkStructure> {
    let atoms = monk_atom_list(m, n)?;
    let count = atoms.len();
    let labels = atoms.iter().map(|a| a.to_string()).collect();
    let cyl = (0..m)
        .map(|k| {
            Relation::from_key(count, |i| {
                let a = &atoms[i];
                let mut key = Vec::new();
                for p in (0..m).filter(|&p| p != k) {
                    for q in (p + 1..m).filter(|&q| q != k) {
                        key.push(a.colour(p, q).unwrap_or(IN_R));
                    }
                }
                key
            })
        })
        .collect();
    let diag = (0..m)
        .map(|k| {
            (0..m)
                .map(|l| AtomSet::from_indices(count, (0..count).filter(|&i| atoms[i].related(k, l))))
                .collect()
        })
        .collect();
    let structure = CaAtomStructure::new(m, labels, cyl, diag)?;
    Ok(MonkStructure { m, n, atoms, structure })
}

/// Adds transpositions `P_ij`: the atom `(R, f)` goes to `(R o [i,j], f o [i,j])`.
pub fn johnson_extend(g: &MonkStructure) -> Result<CaAtomStructure> {
    let fresh = monk_atoms(g.m, g.n)?;
    if fresh.structure.id() != g.structure.id() || fresh.atoms != g.atoms {
        return Err(Error::InvalidStructure("structure was not produced by the Monk generator".into()));
    }
    let m = g.m;
    g.structure.clone().with_transposition_fn(|i, j, a| {
        let mut s: Vec<usize> = (0..m).collect();
        s.swap(i, j);
        g.recognize(&g.atoms[a].permuted(&s)).expect("transposed atom is an atom")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::check_ca_frame;

    #[test]
    fn partition_counts_are_bell_numbers() {
        assert_eq!(partitions(3).len(), 5);
        assert_eq!(partitions(4).len(), 15);
        assert_eq!(partitions(5).len(), 52);
    }

    #[test]
    fn g33_has_34_atoms_and_one_all_relation_atom() {
        let g = monk_atoms(3, 3).unwrap();
        assert_eq!(g.structure.atom_count(), 34);
        let all: Vec<_> = g.atoms.iter().filter(|a| a.partition.iter().all(|&c| c == 0)).collect();
        assert_eq!(all.len(), 1);
        assert!(check_ca_frame(&g.structure).all_passed());
    }

    #[test]
    fn parameter_contract() {
        assert!(matches!(monk_atoms(2, 3), Err(Error::Parameter(_))));
        assert!(matches!(monk_atoms(4, 3), Err(Error::Parameter(_))));
    }

    #[test]
    fn johnson_transpositions() {
        let g = monk_atoms(3, 3).unwrap();
        let s = johnson_extend(&g).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                let p = s.transposition(i, j).unwrap();
                for (a, atom) in g.atoms.iter().enumerate() {
                    assert_eq!(p[p[a]], a);
                    if atom.related(i, j) && (0..3).all(|k| atom.colour(i, k) == atom.colour(j, k)) {
                        assert_eq!(p[a], a);
                    }
                }
            }
        }
        assert!(check_ca_frame(&s).all_passed());
    }

    #[test]
    fn foreign_structure_is_rejected() {
        let mut g = monk_atoms(3, 3).unwrap();
        g.structure = crate::constructions::set_algebra::full_set_algebra(3, 2).unwrap().without_transpositions();
        assert!(johnson_extend(&g).is_err());
    }

    #[test]
    fn listing_has_one_line_per_atom() {
        let g = monk_atoms(3, 3).unwrap();
        assert_eq!(g.listing().lines().count(), 34);
        assert!(g.listing().contains("R=[012] f={}"));
    }
}
