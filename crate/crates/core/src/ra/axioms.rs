//! Atom-level checks of the relation-algebra axioms.

use rayon::prelude::*;
use serde::Serialize;

use crate::atomset::AtomSet;
use crate::error::{Error, Result};
use crate::ra::structure::{peircean_images, RaAtomStructure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Atom indices of the first failing instance.
    pub witness: Option<Vec<usize>>,
    pub instances: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaReport {
    pub checks: Vec<RaCheck>,
}

impl RaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&RaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Work estimate of a full check, in atom quadruples.
pub fn ra_check_cost(atoms: usize) -> u128 {
    (atoms as u128).pow(4)
}

fn check(name: &'static str, instances: u64, witness: Option<Vec<usize>>) -> RaCheck {
    RaCheck {
        name,
        passed: witness.is_none(),
        witness,
        instances,
    }
}

/// Checks the identity law, converse involution and distribution over
/// composition, the Peircean law, and associativity on all atom triples.
/// Additivity of composition reduces each law to atoms.
pub fn check_ra_axioms(s: &RaAtomStructure, bound: u128) -> Result<RaReport> {
    let n = s.atom_count();
    let cost = ra_check_cost(n);
    if cost > bound {
        return Err(Error::Budget {
            reason: format!("relation algebra check over {n} atoms"),
            estimate: cost,
            budget: bound,
        });
    }
    let single = |a: usize| AtomSet::singleton(n, a);
    let id = s.identity_set();
    let conv = s.converse_map();

    let identity = (0..n)
        .find(|&a| s.compose_raw(id, &single(a)) != single(a) || s.compose_raw(&single(a), id) != single(a))
        .map(|a| vec![a]);

    let involution = (0..n).find(|&a| conv[conv[a]] != a).map(|a| vec![a]);

    let distribution = (0..n * n)
        .find(|&k| {
            let (a, b) = (k / n, k % n);
            s.converse_raw(s.atom_composite(a, b)) != *s.atom_composite(conv[b], conv[a])
        })
        .map(|k| vec![k / n, k % n]);

    let peirce = (0..n * n * n)
        .find(|&k| {
            let t = [k / (n * n), (k / n) % n, k % n];
            let here = s.is_consistent(t[0], t[1], t[2]);
            peircean_images(t, conv)
                .iter()
                .any(|u| s.is_consistent(u[0], u[1], u[2]) != here)
        })
        .map(|k| vec![k / (n * n), (k / n) % n, k % n]);

    let assoc = (0..(n * n * n) as u64)
        .into_par_iter()
        .find_first(|&k| {
            let k = k as usize;
            let (a, b, c) = (k / (n * n), (k / n) % n, k % n);
            let left = s.compose_raw(s.atom_composite(a, b), &single(c));
            let right = s.compose_raw(&single(a), s.atom_composite(b, c));
            left != right
        })
        .map(|k| {
            let k = k as usize;
            vec![k / (n * n), (k / n) % n, k % n]
        });

    let n64 = n as u64;
    Ok(RaReport {
        checks: vec![
            check("identity", n64, identity),
            check("converse-involution", n64, involution),
            check("converse-distribution", n64 * n64, distribution),
            check("peircean", n64 * n64 * n64, peirce),
            check("associativity", n64 * n64 * n64, assoc),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ra::structure::cyclic_group_ra;

    #[test]
    fn group_algebra_passes() {
        let s = cyclic_group_ra(4).unwrap();
        assert!(check_ra_axioms(&s, u128::MAX).unwrap().all_passed());
    }

    #[test]
    fn trivial_algebra_passes() {
        let s = RaAtomStructure::new(vec!["1'".into()], vec![0], vec![0], []).unwrap();
        assert!(check_ra_axioms(&s, 1).unwrap().all_passed());
    }

    #[test]
    fn one_asymmetric_triple_breaks_peirce() {
        let s = cyclic_group_ra(4).unwrap();
        let mut forb = s.forbidden().to_vec();
        // make (1, 1, 0) inconsistent without its Peircean images
        forb.push([1, 1, 0]);
        let bad = RaAtomStructure::new_unclosed(s.labels().to_vec(), vec![0], s.converse_map().to_vec(), forb).unwrap();
        let r = check_ra_axioms(&bad, u128::MAX).unwrap();
        assert!(!r.get("peircean").unwrap().passed);
    }

    #[test]
    fn budget_refusal() {
        let s = cyclic_group_ra(4).unwrap();
        assert!(matches!(
            check_ra_axioms(&s, 100),
            Err(Error::Budget { estimate: 256, budget: 100, .. })
        ));
    }
}
