//! Small structures shared by the acceptance battery, the tests and the CLI.

use crate::atomset::AtomSet;
use crate::bao::structure::CaAtomStructure;
use crate::constructions::hh::hh_ra;
use crate::constructions::set_algebra::{full_set_algebra, index_of, three_cube, tuple_of};
use crate::ra::{cyclic_group_ra, RaAtomStructure};
use crate::relation::Relation;

pub fn cs(dim: usize) -> CaAtomStructure {
    full_set_algebra(dim, 2).expect("fixed parameters are in range")
}

/// The cylindric part of a structure with one relation replaced.
fn with_relation(s: &CaAtomStructure, i: usize, r: Relation) -> CaAtomStructure {
    let mut cyl: Vec<Relation> = (0..s.dim()).map(|k| s.cyl_relation(k).clone()).collect();
    cyl[i] = r;
    let diag = (0..s.dim()).map(|k| (0..s.dim()).map(|l| s.diag_set(k, l).clone()).collect()).collect();
    CaAtomStructure::new(s.dim(), s.labels().to_vec(), cyl, diag).expect("same shape")
}

fn pairs_of(r: &Relation) -> Vec<(usize, usize)> {
    (0..r.size())
        .flat_map(|a| r.successors(a).iter().map(move |&b| (a, b as usize)))
        .collect()
}

/// `Cs_3` over two points with the `T_0` class `{(0,0,0), (1,0,0)}` cut in
/// two: `T_0` stays an equivalence, but no network can place both points.
pub fn corrupted_cs3() -> CaAtomStructure {
    let s = cs(3);
    let cut = [index_of(&[0, 0, 0], 2), index_of(&[1, 0, 0], 2)];
    let kept = pairs_of(s.cyl_relation(0))
        .into_iter()
        .filter(|&(a, b)| a == b || !(cut.contains(&a) && cut.contains(&b)));
    let r = Relation::from_pairs(s.atom_count(), kept).expect("in range").normalized();
    with_relation(&s, 0, r)
}

/// The frame induced on a set of atoms, without transpositions.
pub fn induced(s: &CaAtomStructure, keep: &[usize]) -> CaAtomStructure {
    let n = s.atom_count();
    let keep_set = AtomSet::from_indices(n, keep.iter().copied());
    let mut new_index = vec![None; n];
    for (p, a) in keep_set.iter().enumerate() {
        new_index[a] = Some(p);
    }
    let kept: Vec<usize> = keep_set.iter().collect();
    let restrict = |x: &AtomSet| AtomSet::from_indices(kept.len(), x.iter().filter_map(|a| new_index[a]));
    let labels = kept.iter().map(|&a| s.label(a).to_string()).collect();
    let cyl = (0..s.dim()).map(|i| s.cyl_relation(i).restrict(&keep_set, &new_index)).collect();
    let diag = (0..s.dim())
        .map(|i| (0..s.dim()).map(|j| restrict(s.diag_set(i, j))).collect())
        .collect();
    CaAtomStructure::new(s.dim(), labels, cyl, diag).expect("restricted frame")
}

fn cube_atoms(keep: impl Fn(&[usize]) -> bool) -> Vec<usize> {
    (0..27).filter(|&a| keep(&tuple_of(a, 3, 3))).collect()
}

/// Frames of at most 12 atoms on which frame conditions and equations are
/// compared: set algebras, sub-frames of the 3-cube and hand-made violators.
pub fn frame_fixtures() -> Vec<(String, CaAtomStructure)> {
    let c3 = cs(3);
    let cube = three_cube();
    let mut out = vec![
        ("Cs_2".to_string(), cs(2)),
        ("Cs_3".to_string(), c3.clone()),
        ("Cs_2 over 3 points".to_string(), full_set_algebra(2, 3).expect("in range")),
        // a product unit 3 x 2 x 2: cylindric but diagonals are cut
        ("cube on 3x2x2".to_string(), induced(&cube, &cube_atoms(|t| t[1] < 2 && t[2] < 2))),
        // injective tuples: every diagonal is empty
        ("cube on injective tuples".to_string(), induced(&cube, &cube_atoms(|t| t[0] != t[1] && t[0] != t[2] && t[1] != t[2]))),
        // tuples with 0 somewhere
        ("cube on tuples meeting 0".to_string(), induced(&cube, &cube_atoms(|t| t.contains(&0) && t.iter().all(|&v| v < 2)))),
        ("Cs_3 with T_0 cut".to_string(), corrupted_cs3()),
    ];
    // E_01 loses (0,0,1)
    let mut diag: Vec<Vec<AtomSet>> = (0..3).map(|k| (0..3).map(|l| c3.diag_set(k, l).clone()).collect()).collect();
    let lost = index_of(&[0, 0, 1], 2);
    diag[0][1].remove(lost);
    diag[1][0].remove(lost);
    let cyl = (0..3).map(|k| c3.cyl_relation(k).clone()).collect();
    out.push((
        "Cs_3 with a diagonal hole".to_string(),
        CaAtomStructure::new(3, c3.labels().to_vec(), cyl, diag).expect("same shape"),
    ));
    // T_1 gains one direction of a pair only
    let mut pairs = pairs_of(c3.cyl_relation(1));
    pairs.push((index_of(&[0, 0, 0], 2), index_of(&[1, 1, 1], 2)));
    out.push((
        "Cs_3 with an asymmetric T_1".to_string(),
        with_relation(&c3, 1, Relation::from_pairs(8, pairs).expect("in range")),
    ));
    // T_2 loses reflexivity at one atom
    let pairs = pairs_of(c3.cyl_relation(2)).into_iter().filter(|&(a, b)| !(a == 3 && b == 3));
    out.push((
        "Cs_3 with an irreflexive point".to_string(),
        with_relation(&c3, 2, Relation::from_pairs(8, pairs).expect("in range")),
    ));
    out
}

/// Cylindric structures the game invariants are checked on.
pub fn game_fixtures() -> Vec<(String, CaAtomStructure)> {
    vec![
        ("Cs_2".to_string(), cs(2)),
        ("Cs_3".to_string(), cs(3)),
        ("Cs_3 with T_0 cut".to_string(), corrupted_cs3()),
    ]
}

/// Relation-algebra structures for the triangle game.
pub fn ra_game_fixtures() -> Vec<(String, RaAtomStructure)> {
    vec![
        ("Z_3".to_string(), cyclic_group_ra(3).expect("in range")),
        ("Z_4".to_string(), cyclic_group_ra(4).expect("in range")),
        ("A(3,1)".to_string(), hh_ra(3, 1, 3).expect("in range")),
    ]
}
