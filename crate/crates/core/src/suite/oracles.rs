//! Brute-force reference computations, written without the library's
//! enumeration or checking code.

use std::collections::BTreeSet;

use crate::ra::RaAtomStructure;

/// A Monk atom as `(classes, colours)`: the class index of each point in
/// order of first appearance, and the row-major colour table with `None`
/// inside the equivalence.
pub type PlainMonkAtom = (Vec<u8>, Vec<Option<u8>>);

/// Every pair `(R, f)` over `m` points and `n` colours, found by filtering
/// all symmetric relations and all colourings of point pairs.
pub fn monk_oracle(m: usize, n: usize) -> BTreeSet<PlainMonkAtom> {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|k| (k + 1..m).map(move |l| (k, l))).collect();
    let mut out = BTreeSet::new();
    // each pair is either related (colour n) or coloured 0..n-1
    let total = (n + 1).pow(pairs.len() as u32);
    for code in 0..total {
        let mut rest = code;
        let mut table = vec![None; m * m];
        let mut rel = vec![false; m * m];
        for k in 0..m {
            rel[k * m + k] = true;
        }
        for &(k, l) in &pairs {
            let c = rest % (n + 1);
            rest /= n + 1;
            if c == n {
                rel[k * m + l] = true;
                rel[l * m + k] = true;
            } else {
                table[k * m + l] = Some(c as u8);
                table[l * m + k] = Some(c as u8);
            }
        }
        let transitive = (0..m).all(|a| {
            (0..m).all(|b| (0..m).all(|c| !(rel[a * m + b] && rel[b * m + c]) || rel[a * m + c]))
        });
        if !transitive {
            continue;
        }
        // colours depend on classes only
        let stable = (0..m).all(|a| {
            (0..m).all(|b| {
                !rel[a * m + b] || (0..m).all(|c| table[a * m + c] == table[b * m + c] || rel[a * m + c])
            })
        });
        if !stable {
            continue;
        }
        let mono = (0..m).any(|a| {
            (a + 1..m).any(|b| {
                (b + 1..m).any(|c| {
                    let (x, y, z) = (table[a * m + b], table[a * m + c], table[b * m + c]);
                    x.is_some() && x == y && y == z
                })
            })
        });
        if mono {
            continue;
        }
        let mut classes = vec![0u8; m];
        let mut next = 0u8;
        for a in 0..m {
            match (0..a).find(|&b| rel[a * m + b]) {
                Some(b) => classes[a] = classes[b],
                None => {
                    classes[a] = next;
                    next += 1;
                }
            }
        }
        out.insert((classes, table));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveRaReport {
    pub peircean: bool,
    pub associative: bool,
    /// First atom triple `(a, b, c)` with `(a;b);c != a;(b;c)`.
    pub associativity_witness: Option<[usize; 3]>,
}

/// Composition tables as plain sets and a direct check of the Peircean law
/// and of associativity on atoms.
pub fn naive_ra_check(ra: &RaAtomStructure) -> NaiveRaReport {
    let n = ra.atom_count();
    let conv: Vec<usize> = (0..n).map(|a| ra.converse_of(a)).collect();
    // a;b as the set of c with c <= a;b
    let comp: Vec<BTreeSet<usize>> = (0..n * n)
        .map(|ab| (0..n).filter(|&c| ra.is_consistent(c, ab / n, ab % n)).collect())
        .collect();
    let compose = |x: &BTreeSet<usize>, y: &BTreeSet<usize>| -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &a in x {
            for &b in y {
                out.extend(comp[a * n + b].iter().copied());
            }
        }
        out
    };
    // c <= a;b  iff  b <= a^;c  iff  a <= c;b^
    let mut peircean = true;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let base = comp[a * n + b].contains(&c);
                if base != comp[conv[a] * n + c].contains(&b) || base != comp[c * n + conv[b]].contains(&a) {
                    peircean = false;
                }
            }
        }
    }
    let mut witness = None;
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let one = |x: usize| BTreeSet::from([x]);
                let left = compose(&comp[a * n + b], &one(c));
                let right = compose(&one(a), &comp[b * n + c]);
                if left != right {
                    witness = Some([a, b, c]);
                    break 'outer;
                }
            }
        }
    }
    NaiveRaReport {
        peircean,
        associative: witness.is_none(),
        associativity_witness: witness,
    }
}

/// Relational composition of binary relations on a finite set.
pub fn relation_compose(x: &BTreeSet<(usize, usize)>, y: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for &(a, b) in x {
        for &(b2, c) in y {
            if b == b2 {
                out.insert((a, c));
            }
        }
    }
    out
}

/// `kappa` and `psi` by literal unrolling of their recursions, in `u128`.
pub fn kappa_unrolled(x: u128, y: u32) -> u128 {
    let mut k = 0u128;
    for _ in 0..y {
        k = 1 + x * k;
    }
    k
}

pub fn psi_unrolled(n: u128, r: u128) -> u128 {
    let s = (n - 1) * r;
    kappa_unrolled(s, s as u32) + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monk_oracle_counts() {
        // one total class, three 2+1 splits with one colour pair, and
        // non-monochromatic triangles
        assert_eq!(monk_oracle(3, 3).len(), 1 + 3 * 3 + (27 - 3));
    }

    #[test]
    fn unrolled_values() {
        assert_eq!(psi_unrolled(2, 1), 2);
        assert_eq!(psi_unrolled(3, 1), 4);
        assert_eq!(psi_unrolled(3, 2), 86);
    }

    #[test]
    fn relation_composition() {
        let x = BTreeSet::from([(0, 1)]);
        let y = BTreeSet::from([(1, 0), (0, 0)]);
        assert_eq!(relation_compose(&x, &y), BTreeSet::from([(0, 0)]));
    }
}
