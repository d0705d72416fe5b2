//! Full cylindric set algebras on small bases.

use crate::atomset::AtomSet;
use crate::bao::structure::CaAtomStructure;
use crate::error::{Error, Result};
use crate::relation::Relation;

/// Coordinates of tuple number `index` in `base^dim`, first coordinate most significant.
pub fn tuple_of(index: usize, dim: usize, base: usize) -> Vec<usize> {
    let mut t = vec![0; dim];
    let mut rest = index;
    for k in (0..dim).rev() {
        t[k] = rest % base;
        rest /= base;
    }
    t
}

pub fn index_of(tuple: &[usize], base: usize) -> usize {
    tuple.iter().fold(0, |acc, &c| acc * base + c)
}

pub fn tuple_label(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

/// `Cs_dim` over `{0..base-1}`: atoms are all tuples, `T_i` agreement off `i`,
/// `E_ij` the tuples with equal `i`th and `j`th entries, `P_ij` the coordinate swap.
pub fn full_set_algebra(dim: usize, base: usize) -> Result<CaAtomStructure> {
    if !(2..=4).contains(&dim) || !(2..=4).contains(&base) {
        return Err(Error::Parameter(format!(
            "set algebra needs dimension and base in 2..=4, got {dim} and {base}"
        )));
    }
    let n = base.pow(dim as u32);
    let tuples: Vec<Vec<usize>> = (0..n).map(|a| tuple_of(a, dim, base)).collect();
    let labels = tuples.iter().map(|t| tuple_label(t)).collect();
    let cyl = (0..dim)
        .map(|i| {
            Relation::from_key(n, |a| {
                let mut t = tuples[a].clone();
                t[i] = 0;
                t
            })
        })
        .collect();
    let diag = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| AtomSet::from_indices(n, (0..n).filter(|&a| tuples[a][i] == tuples[a][j])))
                .collect()
        })
        .collect();
    CaAtomStructure::new(dim, labels, cyl, diag)?.with_transposition_fn(|i, j, a| {
        let mut t = tuples[a].clone();
        t.swap(i, j);
        index_of(&t, base)
    })
}

/// The 27-atom structure on `3^3`.
pub fn three_cube() -> CaAtomStructure {
    full_set_algebra(3, 3).expect("fixed parameters are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::check_ca_frame;

    #[test]
    fn counts_and_diagonals() {
        let s = full_set_algebra(3, 2).unwrap();
        assert_eq!(s.atom_count(), 8);
        let d01: Vec<&str> = s.diag(0, 1).unwrap().to_vec().into_iter().map(|a| s.label(a)).collect();
        assert_eq!(d01, ["(0,0,0)", "(0,0,1)", "(1,1,0)", "(1,1,1)"]);
        for (dim, base) in [(2, 3), (3, 3), (4, 2), (3, 4)] {
            let s = full_set_algebra(dim, base).unwrap();
            assert_eq!(s.diag_set(0, 1).count(), base.pow(dim as u32 - 1));
        }
        assert_eq!(three_cube().atom_count(), 27);
        assert_eq!(three_cube().diag_set(0, 1).count(), 9);
    }

    #[test]
    fn cylindrification_of_a_point() {
        let s = full_set_algebra(3, 2).unwrap();
        let x = s.element([index_of(&[0, 1, 1], 2)]).unwrap();
        let c = s.cyl(0, &x).unwrap();
        let got: Vec<&str> = c.to_vec().into_iter().map(|a| s.label(a)).collect();
        assert_eq!(got, ["(0,1,1)", "(1,1,1)"]);
        assert!(s.cyl(0, &s.zero()).unwrap().is_empty());
    }

    #[test]
    fn transposition_swaps_coordinates() {
        let s = three_cube();
        let u = index_of(&[0, 1, 2], 3);
        let img = s.subst_transp(0, 1, &s.atom(u).unwrap()).unwrap();
        assert_eq!(img.to_vec(), vec![index_of(&[1, 0, 2], 3)]);
        let back = s.subst_transp(0, 1, &img).unwrap();
        assert_eq!(back.to_vec(), vec![u]);
    }

    #[test]
    fn frames_pass() {
        for (dim, base) in [(2, 2), (3, 2), (4, 2), (3, 3)] {
            assert!(check_ca_frame(&full_set_algebra(dim, base).unwrap()).all_passed());
        }
    }

    #[test]
    fn parameter_range() {
        assert!(full_set_algebra(5, 2).is_err());
        assert!(full_set_algebra(3, 1).is_err());
    }
}
