//! First-order frame conditions corresponding to the cylindric axioms, and
//! the polyadic compatibility conditions for transpositions.

use serde::Serialize;

use crate::atomset::AtomSet;
use crate::bao::structure::CaAtomStructure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameCondition {
    pub name: String,
    /// The axiom family the condition corresponds to (`C2`..`C7`, `PEA`).
    pub family: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameReport {
    pub conditions: Vec<FrameCondition>,
}

impl FrameReport {
    pub fn all_passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    /// Verdict on the cylindric rows only.
    pub fn ca_passed(&self) -> bool {
        self.conditions.iter().filter(|c| c.family != "PEA").all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FrameCondition> {
        self.conditions.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&FrameCondition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

fn row(name: String, family: &'static str, witness: Option<String>) -> FrameCondition {
    FrameCondition {
        name,
        family,
        passed: witness.is_none(),
        witness,
    }
}

fn swapped(i: usize, j: usize, k: usize) -> usize {
    if k == i {
        j
    } else if k == j {
        i
    } else {
        k
    }
}

fn first_difference(a: &AtomSet, b: &AtomSet) -> Option<usize> {
    let mut d = a.difference(b);
    d.union_with(&b.difference(a));
    d.iter().next()
}

/// Evaluates the frame conditions. Rows are ordered by family, then index.
pub fn check_ca_frame(s: &CaAtomStructure) -> FrameReport {
    let dim = s.dim();
    let lbl = |a: usize| s.label(a).to_string();
    let mut rows = Vec::new();

    for i in 0..dim {
        let t = s.cyl_relation(i);
        rows.push(row(
            format!("T{i} reflexive"),
            "C2",
            t.reflexivity_failure().map(|a| format!("{} not related to itself", lbl(a))),
        ));
    }
    for i in 0..dim {
        let t = s.cyl_relation(i);
        rows.push(row(
            format!("T{i} symmetric"),
            "C3",
            t.symmetry_failure()
                .map(|(a, b)| format!("{} -> {} without the reverse", lbl(a), lbl(b))),
        ));
        rows.push(row(
            format!("T{i} transitive"),
            "C3",
            t.transitivity_failure()
                .map(|(a, b, c)| format!("{} -> {} -> {} without {} -> {}", lbl(a), lbl(b), lbl(c), lbl(a), lbl(c))),
        ));
    }
    for i in 0..dim {
        for j in i + 1..dim {
            let w = s
                .cyl_relation(i)
                .commutation_failure(s.cyl_relation(j))
                .map(|(a, c)| format!("composites from {} differ at {}", lbl(a), lbl(c)));
            rows.push(row(format!("T{i}T{j} commute"), "C4", w));
        }
    }
    for i in 0..dim {
        let e = s.diag_set(i, i);
        let w = (0..s.atom_count())
            .find(|&a| !e.contains(a))
            .map(|a| format!("{} outside E{i}{i}", lbl(a)));
        rows.push(row(format!("E{i}{i} full"), "C5", w));
    }
    for i in 0..dim {
        for j in 0..dim {
            for k in (0..dim).filter(|&k| k != i && k != j) {
                let rhs = s.cyl_raw(k, &s.diag_set(i, k).intersection(s.diag_set(k, j)));
                let w = first_difference(s.diag_set(i, j), &rhs)
                    .map(|a| format!("{} separates E{i}{j} from T{k}(E{i}{k} & E{k}{j})", lbl(a)));
                rows.push(row(format!("E{i}{j} = T{k}(E{i}{k} & E{k}{j})"), "C6", w));
            }
        }
    }
    for i in 0..dim {
        for j in (0..dim).filter(|&j| j != i) {
            let e = s.diag_set(i, j);
            let t = s.cyl_relation(i);
            let mut w = None;
            'outer: for a in e.iter() {
                for &b in t.successors(a) {
                    let b = b as usize;
                    if b != a && e.contains(b) {
                        w = Some(format!("distinct E{i}{j} atoms {} and {} are T{i}-related", lbl(a), lbl(b)));
                        break 'outer;
                    }
                }
            }
            rows.push(row(format!("E{i}{j} atoms T{i}-separated"), "C7", w));
        }
    }

    if s.has_transpositions() {
        let n = s.atom_count();
        for i in 0..dim {
            for j in i + 1..dim {
                let p = s.transposition(i, j).expect("polyadic");
                for k in 0..dim {
                    let tk = s.cyl_relation(k);
                    let ts = s.cyl_relation(swapped(i, j, k));
                    let mut w = None;
                    'scan: for a in 0..n {
                        for b in 0..n {
                            if tk.related(a, b) != ts.related(p[a], p[b]) {
                                w = Some(format!(
                                    "T{k} on ({}, {}) against T{} on their images",
                                    lbl(a),
                                    lbl(b),
                                    swapped(i, j, k)
                                ));
                                break 'scan;
                            }
                        }
                    }
                    rows.push(row(format!("P{i}{j} moves T{k}"), "PEA", w));
                }
                for k in 0..dim {
                    for l in 0..dim {
                        let img = AtomSet::from_indices(n, s.diag_set(k, l).iter().map(|a| p[a]));
                        let target = s.diag_set(swapped(i, j, k), swapped(i, j, l));
                        let w = first_difference(&img, target)
                            .map(|a| format!("{} separates P{i}{j}(E{k}{l}) from its swapped diagonal", lbl(a)));
                        rows.push(row(format!("P{i}{j} moves E{k}{l}"), "PEA", w));
                    }
                }
            }
        }
    }
    FrameReport { conditions: rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::equation::{ca_axioms, failing_axioms, pea_axioms, CheckMode};
    use crate::constructions::set_algebra::full_set_algebra;
    use crate::relation::Relation;

    #[test]
    fn set_algebra_passes_every_row() {
        let s = full_set_algebra(3, 2).unwrap();
        let r = check_ca_frame(&s);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn chain_relation_fails_transitivity() {
        let n = 3;
        let chain = Relation::from_pairs(n, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
        let full = AtomSet::full(n);
        let s = CaAtomStructure::new(
            2,
            vec!["a".into(), "b".into(), "c".into()],
            vec![chain, Relation::identity(n)],
            vec![vec![full.clone(), full.clone()], vec![full.clone(), full]],
        )
        .unwrap();
        let r = check_ca_frame(&s);
        assert!(!r.get("T0 transitive").unwrap().passed);
        assert!(r.get("T0 symmetric").unwrap().passed);
        let eq = failing_axioms(&s, &ca_axioms(2), CheckMode::Exhaustive).unwrap();
        assert!(eq.iter().any(|n| n.starts_with("C3[0]")));
    }

    #[test]
    fn broken_transposition_is_caught_by_both_sides() {
        let s = full_set_algebra(2, 2).unwrap();
        // identity in place of the coordinate swap
        let s = s.without_transpositions().with_transposition_fn(|_, _, a| a).unwrap();
        let r = check_ca_frame(&s);
        assert!(r.ca_passed());
        assert!(!r.all_passed());
        assert!(!failing_axioms(&s, &pea_axioms(2), CheckMode::Exhaustive).unwrap().is_empty());
    }
}
