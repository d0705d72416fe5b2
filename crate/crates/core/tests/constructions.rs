use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;

use cylkit::bao::frame::check_ca_frame;
use cylkit::constructions::{
    basic_matrices, bin_forb, ca_over_hyperbasis, enumerate_hypernetworks, hh_ra, hyperbasis_embedding, is_hyperbasis,
    johnson_extend, kappa, monk_atoms, psi, split_ca_atom, split_ra_atom, three_cube, CopyRule, PsiBound, SplitPolicy,
};
use cylkit::ra::{check_ra_axioms, cyclic_group_ra};
use cylkit::suite::oracles::monk_oracle;

#[test]
fn monk_counts_match_the_oracle() {
    for (m, n) in [(3, 3), (3, 4), (4, 4)] {
        let g = monk_atoms(m, n).unwrap();
        assert_eq!(g.atoms.len(), monk_oracle(m, n).len(), "G({m},{n})");
    }
}

#[test]
fn monk_is_invariant_under_recolouring() {
    let g = monk_atoms(3, 3).unwrap();
    let s = &g.structure;
    for perm in [[1u8, 0, 2], [1, 2, 0], [2, 1, 0]] {
        let image: Vec<usize> = g.atoms.iter().map(|a| g.recognize(&a.recoloured(&perm)).expect("closed")).collect();
        let mut seen = image.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), image.len(), "bijection");
        for i in 0..3 {
            for a in 0..image.len() {
                for b in 0..image.len() {
                    assert_eq!(s.cyl_relation(i).related(a, b), s.cyl_relation(i).related(image[a], image[b]));
                }
            }
            for j in 0..3 {
                for a in 0..image.len() {
                    assert_eq!(s.diag_set(i, j).contains(a), s.diag_set(i, j).contains(image[a]));
                }
            }
        }
    }
}

#[test]
fn all_relation_atom_is_unique() {
    let g = monk_atoms(3, 3).unwrap();
    let total = g.atoms.iter().filter(|a| (0..3).all(|k| (0..3).all(|l| a.related(k, l)))).count();
    assert_eq!(total, 1);
}

#[test]
fn johnson_transpositions_are_total() {
    let g = monk_atoms(3, 3).unwrap();
    let j = johnson_extend(&g).unwrap();
    let p = j.transposition(0, 1).unwrap();
    assert_eq!(p.len(), g.atoms.len());
    assert!(check_ca_frame(&j).all_passed());
}

#[test]
fn kappa_and_psi_small_values() {
    assert_eq!(psi(2, 1), BigUint::from(2u32));
    assert_eq!(psi(3, 1), BigUint::from(4u32));
    assert_eq!(kappa(2, 2), BigUint::from(3u32));
    assert_eq!(kappa(1, 1), BigUint::from(1u32));
}

proptest! {
    #[test]
    fn kappa_recursion(x in 0u64..50, y in 0u64..40) {
        prop_assert_eq!(kappa(x, y + 1), BigUint::from(1u32) + BigUint::from(x) * kappa(x, y));
    }

    #[test]
    fn psi_unfolds_kappa(n in 2u64..6, r in 1u64..4) {
        let s = (n - 1) * r;
        prop_assert_eq!(psi(n, r), kappa(s, s) + 1u32);
    }
}

#[test]
fn relation_algebra_counts() {
    assert_eq!(hh_ra(3, 2, 3).unwrap().atom_count(), 13);
    assert_eq!(hh_ra(4, 1, 4).unwrap().atom_count(), 1 + 3 * 4);
    assert_eq!(bin_forb(3, 1, PsiBound::Cap(4)).unwrap().ra.atom_count(), 9);
    assert_eq!(bin_forb(2, 1, PsiBound::Exact).unwrap().ra.atom_count(), 1 + 2);
}

/// Symmetric matrices with `Id` on the diagonal whose every triangle is
/// consistent, counted over all assignments.
fn matrix_oracle(m: usize, n: usize, r: usize, cap: usize) -> usize {
    let bin = bin_forb(n, r, PsiBound::Cap(cap)).unwrap();
    let ra = &bin.ra;
    let atoms = ra.atom_count();
    let id = ra.identity_set().iter().next().unwrap();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|x| (x + 1..m).map(move |y| (x, y))).collect();
    let mut count = 0;
    for code in 0..atoms.pow(pairs.len() as u32) {
        let mut f = vec![id; m * m];
        let mut rest = code;
        for &(x, y) in &pairs {
            let a = rest % atoms;
            rest /= atoms;
            f[x * m + y] = a;
            f[y * m + x] = ra.converse_of(a);
        }
        let ok = (0..m).all(|x| {
            (0..m).all(|y| (0..m).all(|z| ra.is_consistent(f[x * m + z], f[x * m + y], f[y * m + z])))
        });
        count += ok as usize;
    }
    count
}

#[test]
fn matrix_counts_match_brute_force() {
    for (m, n, r, cap) in [(3, 3, 1, 2), (3, 3, 1, 3), (3, 4, 1, 1), (4, 3, 1, 1)] {
        let f = basic_matrices(m, &bin_forb(n, r, PsiBound::Cap(cap)).unwrap()).unwrap();
        assert_eq!(f.matrices.len(), matrix_oracle(m, n, r, cap), "F({m}) over bin({n},{r},{cap})");
        assert!(check_ca_frame(&f.structure).ca_passed());
    }
}

#[test]
fn three_cube_is_a_frame() {
    let s = three_cube();
    assert_eq!(s.atom_count(), 27);
    assert!(check_ca_frame(&s).all_passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn splitting_monk_atoms_keeps_the_frame(pick in 0usize..34, copies in 2usize..4) {
        let g = monk_atoms(3, 3).unwrap();
        let s = &g.structure;
        let sp = split_ca_atom(s, pick, &SplitPolicy::inherit(copies)).unwrap();
        prop_assert_eq!(sp.structure.atom_count(), s.atom_count() + copies - 1);
        let on_diagonal = (0..3).any(|i| (0..3).any(|j| i != j && s.diag_set(i, j).contains(pick)));
        // copies on a diagonal cannot be told apart by the cylindrifiers
        prop_assert_eq!(check_ca_frame(&sp.structure).ca_passed(), !on_diagonal);
    }

    #[test]
    fn splitting_group_atoms(half in 1usize..4, copies in 2usize..4) {
        // the self-converse non-identity atom of an even cyclic group
        let (k, a) = (2 * half, half);
        let ra = cyclic_group_ra(k).unwrap();
        let sp = split_ra_atom(&ra, a, &SplitPolicy::inherit(copies)).unwrap();
        prop_assert_eq!(sp.structure.atom_count(), k + copies - 1);
        let inherit = check_ra_axioms(&sp.structure, u128::MAX).unwrap();
        prop_assert!(inherit.get("peircean").unwrap().passed);
        prop_assert!(inherit.get("converse-involution").unwrap().passed);
        // distinct copies meet the identity in a triangle
        prop_assert!(!inherit.get("identity").unwrap().passed);

        let own = SplitPolicy {
            copies,
            rule: CopyRule::Custom((0..copies).map(|c| (0..copies).map(|d| c == d).collect()).collect()),
        };
        let sp = split_ra_atom(&ra, a, &own).unwrap();
        let r = check_ra_axioms(&sp.structure, u128::MAX).unwrap();
        prop_assert!(r.get("identity").unwrap().passed);
        prop_assert!(r.get("peircean").unwrap().passed);
    }
}

#[test]
fn hyperbasis_over_the_group_algebra() {
    let ra = cyclic_group_ra(3).unwrap();
    let h = enumerate_hypernetworks(&ra, 3, 3, 1, u128::MAX).unwrap();
    assert!(is_hyperbasis(&ra, &h).passed);
    let ca = ca_over_hyperbasis(&ra, &h).unwrap();
    assert_eq!(ca.atom_count(), h.len());
    assert!(check_ca_frame(&ca).all_passed());
    for i in 0..3 {
        assert!(ca.diag_set(i, i).is_full());
    }
    let emb = hyperbasis_embedding(&ra, &h);
    assert!(emb.iter().all(|x| !x.is_empty()));

    // the report names the bullet a deletion breaks
    let mut bullets: BTreeMap<&str, usize> = BTreeMap::new();
    for k in 0..h.len() {
        let mut less = h.clone();
        less.remove(k);
        let r = is_hyperbasis(&ra, &less);
        assert!(!r.passed);
        *bullets.entry(r.bullet.unwrap()).or_default() += 1;
    }
    assert!(!bullets.is_empty());
}
