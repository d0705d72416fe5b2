//! The Monk-like relation algebras `A(n, r)` and the `Bin(n, r)` atom
//! structures with their forbidden triples.
//!
//! The two families differ in the direction of the index inequality of the
//! same-colour forbidden triples: `A(n, r)` forbids
//! `(a^k(i,j), a^k'(i,j), a^k''(i,j'))` for `j <= j'`, `Bin(n, r)` for
//! `j' <= j`. Each constructor follows its own family.

use num_bigint::BigUint;

use crate::constructions::ramsey::psi;
use crate::error::{Error, Result};
use crate::ra::RaAtomStructure;

/// Cap on the number of colours `k` when the exact bound is requested.
pub const EXACT_PSI_LIMIT: u64 = 1 << 20;

/// Atom `a^k(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Colour {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

pub fn atom_label(c: Colour) -> String {
    format!("a^{}({},{})", c.k, c.i, c.j)
}

/// Atoms in order: `Id`, then `a^k(i, j)` by `(i, j, k)`.
fn colour_atoms(n: usize, r: usize, psi: usize) -> Vec<Colour> {
    let mut out = Vec::with_capacity((n - 1) * r * psi);
    for i in 0..n - 1 {
        for j in 0..r {
            for k in 0..psi {
                out.push(Colour { i, j, k });
            }
        }
    }
    out
}

fn index_of(r: usize, psi: usize, c: Colour) -> usize {
    1 + (c.i * r + c.j) * psi + c.k
}

fn build(
    n: usize,
    r: usize,
    psi: usize,
    same_colour_forbidden: impl Fn(usize, usize) -> bool,
) -> Result<RaAtomStructure> {
    let colours = colour_atoms(n, r, psi);
    let count = 1 + colours.len();
    let mut labels = vec!["Id".to_string()];
    labels.extend(colours.iter().map(|&c| atom_label(c)));
    let mut forb = Vec::new();
    for b in 0..count {
        for c in 0..count {
            if b != c {
                forb.push([0, b, c]);
            }
        }
    }
    for i in 0..n - 1 {
        for j in 0..r {
            for j2 in (0..r).filter(|&j2| same_colour_forbidden(j, j2)) {
                for k in 0..psi {
                    for k1 in 0..psi {
                        for k2 in 0..psi {
                            forb.push([
                                index_of(r, psi, Colour { i, j, k }),
                                index_of(r, psi, Colour { i, j, k: k1 }),
                                index_of(r, psi, Colour { i, j: j2, k: k2 }),
                            ]);
                        }
                    }
                }
            }
        }
    }
    RaAtomStructure::new(labels, vec![0], (0..count).collect(), forb)
}

/// `A(n, r)` with `psi_cap` colours per `(i, j)`.
pub fn hh_ra(n: usize, r: usize, psi_cap: usize) -> Result<RaAtomStructure> {
    if n < 3 || r < 1 || psi_cap < n.max(r) {
        return Err(Error::Parameter(format!(
            "A(n, r) needs n >= 3, r >= 1, colours >= max(n, r); got n={n}, r={r}, colours={psi_cap}"
        )));
    }
    guard_size(n, r, psi_cap)?;
    build(n, r, psi_cap, |j, j2| j <= j2)
}

fn guard_size(n: usize, r: usize, psi: usize) -> Result<()> {
    let count = 1 + (n - 1) as u128 * r as u128 * psi as u128;
    if count > crate::ra::MAX_RA_ATOMS as u128 {
        return Err(Error::BoundExceeded(format!(
            "{count} atoms exceeds cap {}",
            crate::ra::MAX_RA_ATOMS
        )));
    }
    Ok(())
}

/// How many colours `k` each `(i, j)` gets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiBound {
    Cap(usize),
    /// The exact `psi(n, r)`, refused above [`EXACT_PSI_LIMIT`].
    Exact,
}

#[derive(Clone, Debug)]
pub struct BinForb {
    pub n: usize,
    pub r: usize,
    pub psi: usize,
    pub ra: RaAtomStructure,
}

impl BinForb {
    pub fn colour_index(&self, c: Colour) -> usize {
        index_of(self.r, self.psi, c)
    }

    /// Whether `(a, b, c)` is in the (closed) forbidden set.
    pub fn is_forbidden(&self, a: usize, b: usize, c: usize) -> bool {
        !self.ra.is_consistent(a, b, c)
    }
}

/// `Bin(n, r)` and its forbidden triples.
pub fn bin_forb(n: usize, r: usize, bound: PsiBound) -> Result<BinForb> {
    if n < 2 || r < 1 {
        return Err(Error::Parameter(format!("Bin(n, r) needs n >= 2, r >= 1; got n={n}, r={r}")));
    }
    let psi = match bound {
        PsiBound::Cap(0) => return Err(Error::Parameter("at least one colour is needed".into())),
        PsiBound::Cap(c) => c,
        PsiBound::Exact => {
            let exact = psi(n as u64, r as u64);
            if exact > BigUint::from(EXACT_PSI_LIMIT) {
                return Err(Error::BoundExceeded(format!("psi({n}, {r}) = {exact} colours")));
            }
            exact.to_u64_digits().first().copied().unwrap_or(0) as usize
        }
    };
    guard_size(n, r, psi)?;
    let ra = build(n, r, psi, |j, j2| j2 <= j)?;
    Ok(BinForb { n, r, psi, ra })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ra::{check_ra_axioms, peircean_orbit};

    #[test]
    fn atom_counts() {
        assert_eq!(hh_ra(3, 2, 3).unwrap().atom_count(), 13);
        assert_eq!(bin_forb(3, 1, PsiBound::Cap(4)).unwrap().ra.atom_count(), 9);
        assert_eq!(bin_forb(3, 1, PsiBound::Exact).unwrap().psi, 4);
        assert_eq!(bin_forb(3, 1, PsiBound::Cap(2)).unwrap().ra.atom_count(), 5);
    }

    #[test]
    fn listed_triples_are_forbidden() {
        let a = hh_ra(3, 2, 3).unwrap();
        let ix = |l: &str| a.atom_index(l).unwrap();
        assert!(!a.is_consistent(ix("Id"), ix("a^0(0,0)"), ix("a^0(0,1)")));
        assert!(!a.is_consistent(ix("a^0(0,0)"), ix("a^1(0,0)"), ix("a^2(0,1)")));
        // j = 1 > j' = 0 is not in this family
        assert!(a.is_consistent(ix("a^0(0,1)"), ix("a^1(0,1)"), ix("a^0(0,0)")));

        let b = bin_forb(3, 2, PsiBound::Cap(2)).unwrap();
        let ix = |l: &str| b.ra.atom_index(l).unwrap();
        assert!(b.is_forbidden(ix("a^0(0,1)"), ix("a^1(0,1)"), ix("a^0(0,0)")));
        for x in 0..b.ra.atom_count() {
            for y in (0..b.ra.atom_count()).filter(|&y| y != x) {
                assert!(b.is_forbidden(0, x, y));
            }
        }
    }

    #[test]
    fn identity_composes_trivially() {
        let a = hh_ra(3, 2, 3).unwrap();
        for x in 0..a.atom_count() {
            let e = a.atom(x).unwrap();
            assert_eq!(a.compose(&a.identity_el(), &e).unwrap(), e);
            assert_eq!(a.converse_el(&e).unwrap(), e);
        }
    }

    #[test]
    fn forbidden_sets_are_closed() {
        let a = hh_ra(3, 2, 3).unwrap();
        let conv = a.converse_map().to_vec();
        for t in a.forbidden() {
            for u in peircean_orbit(*t, &conv) {
                assert!(!a.is_consistent(u[0], u[1], u[2]));
            }
        }
        let r = check_ra_axioms(&a, u128::MAX).unwrap();
        assert!(r.get("peircean").unwrap().passed);
        assert!(r.get("identity").unwrap().passed);
    }

    #[test]
    fn parameter_contract() {
        assert!(hh_ra(2, 1, 3).is_err());
        assert!(hh_ra(3, 2, 2).is_err());
        assert!(bin_forb(3, 0, PsiBound::Cap(2)).is_err());
        // 1 + 2*2*86 atoms is over the cap
        assert!(matches!(bin_forb(3, 2, PsiBound::Exact), Err(Error::BoundExceeded(_))));
    }
}
