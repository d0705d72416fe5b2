//! Basic matrices over `Bin(n, r)`: the polyadic atom structures `F(m, n, r)`.

use std::collections::HashMap;

use crate::atomset::AtomSet;
use crate::bao::structure::{CaAtomStructure, MAX_ATOMS};
use crate::constructions::hh::BinForb;
use crate::error::{Error, Result};
use crate::relation::Relation;

/// A symmetric `m x m` matrix of `Bin` atom indices, stored row-major.
pub type Matrix = Vec<usize>;

#[derive(Clone, Debug)]
pub struct BasicMatrices {
    pub m: usize,
    pub bin: BinForb,
    /// Atoms of the structure, in the order of `structure`.
    pub matrices: Vec<Matrix>,
    pub structure: CaAtomStructure,
}

/// Upper-triangle positions `(x, y)`, `x < y`, ordered by `y` then `x`, so
/// the entries of an `m' x m'` prefix come first.
fn upper_pairs(m: usize) -> Vec<(usize, usize)> {
    (1..m).flat_map(|y| (0..y).map(move |x| (x, y))).collect()
}

/// First triple `(x, y, z)` whose triangle `(f(x,y), f(y,z), f(x,z))` is
/// forbidden, or a structural defect.
pub fn matrix_defect(bin: &BinForb, m: usize, f: &[usize]) -> Option<String> {
    if f.len() != m * m {
        return Some(format!("matrix has {} entries, expected {}", f.len(), m * m));
    }
    let n = bin.ra.atom_count();
    if let Some(&bad) = f.iter().find(|&&a| a >= n) {
        return Some(format!("entry {bad} is not an atom"));
    }
    for x in 0..m {
        if f[x * m + x] != 0 {
            return Some(format!("f({x},{x}) is not Id"));
        }
        for y in 0..m {
            if f[x * m + y] != f[y * m + x] {
                return Some(format!("f({x},{y}) != f({y},{x})"));
            }
        }
    }
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                let t = [f[x * m + y], f[y * m + z], f[x * m + z]];
                if bin.is_forbidden(t[0], t[1], t[2]) {
                    return Some(format!("triangle ({x},{y},{z}) is forbidden"));
                }
            }
        }
    }
    None
}

pub fn matrix_label(bin: &BinForb, m: usize, f: &[usize]) -> String {
    let parts: Vec<&str> = upper_pairs(m).into_iter().map(|(x, y)| bin.ra.label(f[x * m + y])).collect();
    format!("[{}]", parts.join(" "))
}

/// All legal matrices, sorted by their upper-triangle entry sequence.
pub fn enumerate_matrices(bin: &BinForb, m: usize) -> Result<Vec<Matrix>> {
    let pairs = upper_pairs(m);
    let n = bin.ra.atom_count();
    let mut out = Vec::new();
    let mut f = vec![0usize; m * m];
    fn go(
        k: usize,
        pairs: &[(usize, usize)],
        f: &mut Vec<usize>,
        m: usize,
        n: usize,
        bin: &BinForb,
        out: &mut Vec<Matrix>,
    ) -> Result<()> {
        if k == pairs.len() {
            if out.len() >= MAX_ATOMS {
                return Err(Error::BoundExceeded(format!("more than {MAX_ATOMS} matrices")));
            }
            out.push(f.clone());
            return Ok(());
        }
        let (x, y) = pairs[k];
        for a in 0..n {
            f[x * m + y] = a;
            f[y * m + x] = a;
            // triangles {z, x, y} with z < x are complete once (x, y) is set
            let ok = (0..x).all(|z| {
                let xs = [x, y, z];
                // all orderings of the three points
                [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
                    .iter()
                    .all(|&(p, q, r)| {
                        let (p, q, r) = (xs[p], xs[q], xs[r]);
                        !bin.is_forbidden(f[p * m + q], f[q * m + r], f[p * m + r])
                    })
            });
            if ok {
                go(k + 1, pairs, f, m, n, bin, out)?;
            }
        }
        f[x * m + y] = 0;
        f[y * m + x] = 0;
        Ok(())
    }
    go(0, &pairs, &mut f, m, n, bin, &mut out)?;
    // degenerate triangles (repeated points) are not covered by the scan above
    out.retain(|f| matrix_defect(bin, m, f).is_none());
    let key = |f: &Matrix| -> Vec<usize> { pairs.iter().map(|&(x, y)| f[x * m + y]).collect() };
    out.sort_by_key(key);
    Ok(out)
}

/// `F(m, n, r)`: atoms are the legal matrices; `T_x` relates matrices that
/// agree off `x`, `E_xy` holds the matrices with `f(x, y) = Id`, and `P_xy`
/// sends `f` to `f o [x, y]`.
pub fn basic_matrices(m: usize, bin: &BinForb) -> Result<BasicMatrices> {
    if !(3..=4).contains(&m) {
        return Err(Error::Parameter(format!("matrix dimension must be 3 or 4, got {m}")));
    }
    if bin.is_forbidden(0, 0, 0) {
        return Err(Error::InvalidStructure("(Id, Id, Id) is forbidden".into()));
    }
    let matrices = enumerate_matrices(bin, m)?;
    if matrices.is_empty() {
        return Err(Error::InvalidStructure("no legal matrices".into()));
    }
    let count = matrices.len();
    let labels = matrices.iter().map(|f| matrix_label(bin, m, f)).collect();
    let cyl = (0..m)
        .map(|x| {
            Relation::from_key(count, |a| {
                let f = &matrices[a];
                let mut key = Vec::new();
                for w in (0..m).filter(|&w| w != x) {
                    for z in (w + 1..m).filter(|&z| z != x) {
                        key.push(f[w * m + z]);
                    }
                }
                key
            })
        })
        .collect();
    let diag = (0..m)
        .map(|x| {
            (0..m)
                .map(|y| AtomSet::from_indices(count, (0..count).filter(|&a| matrices[a][x * m + y] == 0)))
                .collect()
        })
        .collect();
    let index: HashMap<&Matrix, usize> = matrices.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let structure = CaAtomStructure::new(m, labels, cyl, diag)?.with_transposition_fn(|x, y, a| {
        let f = &matrices[a];
        let s = |p: usize| if p == x { y } else if p == y { x } else { p };
        let g: Matrix = (0..m * m).map(|pq| f[s(pq / m) * m + s(pq % m)]).collect();
        index[&g]
    })?;
    Ok(BasicMatrices {
        m,
        bin: bin.clone(),
        matrices,
        structure,
    })
}

impl BasicMatrices {
    /// Re-checks every stored matrix against the triangle condition.
    pub fn validate(&self) -> Result<()> {
        for (i, f) in self.matrices.iter().enumerate() {
            if let Some(d) = matrix_defect(&self.bin, self.m, f) {
                return Err(Error::Verification(format!("matrix {i}: {d}")));
            }
        }
        Ok(())
    }

    pub fn matrix_index(&self, f: &Matrix) -> Option<usize> {
        self.matrices.iter().position(|g| g == f)
    }

    /// The constant-`Id` matrix.
    pub fn identity_matrix(&self) -> usize {
        self.matrix_index(&vec![0; self.m * self.m]).expect("always legal")
    }

    /// The top-left `k x k` block of matrix `a`.
    pub fn restrict(&self, a: usize, k: usize) -> Matrix {
        let f = &self.matrices[a];
        (0..k * k).map(|xy| f[(xy / k) * self.m + xy % k]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::check_ca_frame;
    use crate::constructions::hh::{bin_forb, PsiBound};

    #[test]
    fn small_matrix_algebra() {
        let bin = bin_forb(3, 1, PsiBound::Cap(2)).unwrap();
        let f = basic_matrices(3, &bin).unwrap();
        assert_eq!(f.structure.atom_count(), 61);
        f.validate().unwrap();
        assert_eq!(f.identity_matrix(), 0);
        let r = check_ca_frame(&f.structure);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn corrupted_matrix_is_caught() {
        let bin = bin_forb(3, 1, PsiBound::Cap(2)).unwrap();
        let mut f = basic_matrices(3, &bin).unwrap();
        let a = bin.ra.atom_index("a^0(0,0)").unwrap();
        // three equal same-colour entries make a forbidden triangle
        f.matrices.push(vec![0, a, a, a, 0, a, a, a, 0]);
        assert!(matches!(f.validate(), Err(Error::Verification(_))));
    }

    #[test]
    fn dimension_contract() {
        let bin = bin_forb(3, 1, PsiBound::Cap(2)).unwrap();
        assert!(basic_matrices(2, &bin).is_err());
        assert!(basic_matrices(5, &bin).is_err());
    }
}
