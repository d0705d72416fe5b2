use crate::atomset::AtomSet;
use crate::bao::structure::CaAtomStructure;
use crate::error::{Error, Result};

/// `Rd^ρ`: same atoms, the `i`-th operators are those at `ρ(i)`.
pub fn rd_rho(s: &CaAtomStructure, rho: &[usize]) -> Result<CaAtomStructure> {
    let m = rho.len();
    if let Some(&bad) = rho.iter().find(|&&r| r >= s.dim()) {
        return Err(Error::IndexOutOfRange { index: bad, bound: s.dim() });
    }
    for (p, &a) in rho.iter().enumerate() {
        if rho[..p].contains(&a) {
            return Err(Error::Parameter(format!("index map is not injective: {a} is hit twice")));
        }
    }
    let cyl = rho.iter().map(|&r| s.cyl_relation(r).clone()).collect();
    let diag: Vec<Vec<AtomSet>> = rho
        .iter()
        .map(|&a| rho.iter().map(|&b| s.diag_set(a, b).clone()).collect())
        .collect();
    let out = CaAtomStructure::new(m, s.labels().to_vec(), cyl, diag)?;
    if s.has_transpositions() {
        out.with_transposition_fn(|i, j, a| s.transposition(rho[i], rho[j]).expect("polyadic")[a])
    } else {
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::check_ca_frame;
    use crate::constructions::monk::monk_atoms;
    use crate::constructions::set_algebra::full_set_algebra;

    #[test]
    fn identity_and_inverse() {
        let s = full_set_algebra(3, 2).unwrap();
        assert_eq!(rd_rho(&s, &[0, 1, 2]).unwrap(), s);
        let p = rd_rho(&s, &[2, 0, 1]).unwrap();
        // inverse of i -> (2,0,1)[i]
        assert_eq!(rd_rho(&p, &[1, 2, 0]).unwrap(), s);
    }

    #[test]
    fn dropping_indices_keeps_frame_conditions() {
        let g = monk_atoms(3, 3).unwrap();
        assert!(check_ca_frame(&g.structure).all_passed());
        let r = rd_rho(&g.structure, &[2, 0]).unwrap();
        let rep = check_ca_frame(&r);
        // C6 needs a third index, so only the two-index families are compared
        for c in rep.conditions.iter().filter(|c| c.family != "C6") {
            assert!(c.passed, "{}", c.name);
        }
    }

    #[test]
    fn rejects_bad_maps() {
        let s = full_set_algebra(3, 2).unwrap();
        assert!(rd_rho(&s, &[0, 0]).is_err());
        assert!(rd_rho(&s, &[0, 3]).is_err());
    }
}
