//! Neat reducts at atom level: the elements fixed by every cylindrifier off
//! `Γ` are the unions of classes of the equivalence generated by those
//! cylindrifiers' relations.

use serde_json::json;

use crate::atomset::AtomSet;
use crate::bao::structure::{CaAtomStructure, StructureId};
use crate::error::{Error, Result};
use crate::neat::report::{CertificateLevel, TransformReport, EXHAUSTIVE_CLASSES};
use crate::relation::Relation;

#[derive(Clone, Debug)]
pub struct QuotientFrame {
    pub source: StructureId,
    /// Kept indices, increasing; index `p` of the quotient is `gamma[p]`.
    pub gamma: Vec<usize>,
    pub class_of: Vec<usize>,
    /// Classes ordered by least member.
    pub classes: Vec<Vec<usize>>,
    /// The induced structure of dimension `|Γ|` whose atoms are the classes.
    pub structure: CaAtomStructure,
}

impl QuotientFrame {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The union in the source of the classes in `x`.
    pub fn lift(&self, x: &AtomSet) -> AtomSet {
        let mut out = AtomSet::empty(self.class_of.len());
        for c in x.iter() {
            for &a in &self.classes[c] {
                out.insert(a);
            }
        }
        out
    }

    /// The classes meeting `y`.
    pub fn project(&self, y: &AtomSet) -> AtomSet {
        AtomSet::from_indices(self.classes.len(), y.iter().map(|a| self.class_of[a]))
    }
}

#[derive(Clone, Debug)]
pub struct NrResult {
    pub frame: QuotientFrame,
    pub report: TransformReport,
}

fn find(parent: &mut [usize], a: usize) -> usize {
    let mut r = a;
    while parent[r] != r {
        r = parent[r];
    }
    let mut x = a;
    while parent[x] != r {
        let next = parent[x];
        parent[x] = r;
        x = next;
    }
    r
}

/// `Nr_Γ` of `Ca(s)`. Off-`Γ` relations must be equivalences unless `force`
/// is set, in which case the certificate decides.
pub fn nr(s: &CaAtomStructure, gamma: &[usize], force: bool) -> Result<NrResult> {
    let dim = s.dim();
    let mut gamma = gamma.to_vec();
    gamma.sort_unstable();
    gamma.dedup();
    if let Some(&bad) = gamma.iter().find(|&&i| i >= dim) {
        return Err(Error::IndexOutOfRange { index: bad, bound: dim });
    }
    if gamma.len() < 2 {
        return Err(Error::Parameter(format!(
            "kept index set needs at least 2 indices, got {}",
            gamma.len()
        )));
    }
    let off: Vec<usize> = (0..dim).filter(|i| !gamma.contains(i)).collect();
    if !force {
        for &i in &off {
            let t = s.cyl_relation(i);
            let bad = t
                .reflexivity_failure()
                .map(|a| format!("T{i} is not reflexive at {}", s.label(a)))
                .or_else(|| t.symmetry_failure().map(|(a, b)| format!("T{i} is not symmetric at ({a},{b})")))
                .or_else(|| {
                    t.transitivity_failure()
                        .map(|(a, b, c)| format!("T{i} is not transitive at ({a},{b},{c})"))
                });
            if let Some(msg) = bad {
                return Err(Error::InvalidStructure(msg));
            }
        }
    }

    let n = s.atom_count();
    let mut parent: Vec<usize> = (0..n).collect();
    for &i in &off {
        for (a, b) in s.cyl_relation(i).pairs() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class = vec![usize::MAX; n];
    for a in 0..n {
        let r = find(&mut parent, a);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(Vec::new());
        }
        class_of[a] = root_class[r];
        classes[root_class[r]].push(a);
    }
    let k = classes.len();

    let labels = classes
        .iter()
        .map(|c| {
            if c.len() == 1 {
                s.label(c[0]).to_string()
            } else {
                format!("[{}]", s.label(c[0]))
            }
        })
        .collect();
    let cyl = gamma
        .iter()
        .map(|&j| {
            let pairs = s.cyl_relation(j).pairs().map(|(a, b)| (class_of[a], class_of[b]));
            Relation::from_pairs(k, pairs).map(Relation::normalized)
        })
        .collect::<Result<Vec<_>>>()?;
    let g = gamma.len();
    let diag = (0..g)
        .map(|p| {
            (0..g)
                .map(|q| {
                    if p == q {
                        AtomSet::full(k)
                    } else {
                        let e = s.diag_set(gamma[p], gamma[q]);
                        AtomSet::from_indices(k, (0..k).filter(|&c| e.contains(classes[c][0])))
                    }
                })
                .collect()
        })
        .collect();
    let mut structure = CaAtomStructure::new(g, labels, cyl, diag)?;
    let mut transp_defect = None;
    if s.has_transpositions() {
        let induced = structure.clone().with_transposition_fn(|p, q, c| {
            let f = s.transposition(gamma[p], gamma[q]).expect("polyadic");
            class_of[f[classes[c][0]]]
        });
        match induced {
            Ok(t) => structure = t,
            Err(e) => transp_defect = Some(format!("induced transpositions: {e}")),
        }
    }

    let frame = QuotientFrame {
        source: s.id(),
        gamma: gamma.clone(),
        class_of,
        classes,
        structure,
    };
    let (level, mut counterexample) = certify(s, &frame, &off);
    if counterexample.is_none() {
        counterexample = transp_defect;
    }
    let report = TransformReport::new(
        "nr",
        json!({ "gamma": gamma, "classes": k, "force": force }),
        level,
        counterexample,
    );
    Ok(NrResult { frame, report })
}

/// Compares the quotient operators with the source operators on unions of
/// classes: on every subset of classes up to the exhaustive limit, on single
/// classes beyond it.
fn certify(s: &CaAtomStructure, q: &QuotientFrame, off: &[usize]) -> (CertificateLevel, Option<String>) {
    let k = q.class_count();
    let g = q.gamma.len();
    for p in 0..g {
        for r in 0..g {
            if p != r {
                let lifted = q.lift(q.structure.diag_set(p, r));
                if &lifted != s.diag_set(q.gamma[p], q.gamma[r]) {
                    return (
                        CertificateLevel::AtomsAdditive,
                        Some(format!("d{}{} is not a union of classes", q.gamma[p], q.gamma[r])),
                    );
                }
            }
        }
    }
    let check = |x: &AtomSet| -> Option<String> {
        let u = q.lift(x);
        for &i in off {
            if s.cyl_raw(i, &u) != u {
                return Some(format!("c{i} moves the union of classes {:?}", x.to_vec()));
            }
        }
        for (p, &j) in q.gamma.iter().enumerate() {
            if q.lift(&q.structure.cyl_raw(p, x)) != s.cyl_raw(j, &u) {
                return Some(format!("c{j} disagrees on classes {:?}", x.to_vec()));
            }
            if q.structure.has_transpositions() {
                for (r, &l) in q.gamma.iter().enumerate().skip(p + 1) {
                    let a = q.structure.transp_raw(p, r, x).expect("polyadic");
                    let b = s.transp_raw(j, l, &u).expect("polyadic");
                    if q.lift(&a) != b {
                        return Some(format!("s[{j},{l}] disagrees on classes {:?}", x.to_vec()));
                    }
                }
            }
        }
        None
    };
    if k <= EXHAUSTIVE_CLASSES {
        let bad = (0..1u64 << k).find_map(|mask| check(&AtomSet::from_mask(k, mask)));
        (CertificateLevel::Exhaustive, bad)
    } else {
        let bad = (0..k).find_map(|c| check(&AtomSet::singleton(k, c)));
        (CertificateLevel::AtomsAdditive, bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::check_ca_frame;
    use crate::constructions::set_algebra::{full_set_algebra, tuple_of};

    #[test]
    fn full_index_set_is_identity() {
        let s = full_set_algebra(3, 2).unwrap();
        let r = nr(&s, &[0, 1, 2], false).unwrap();
        assert_eq!(r.frame.class_count(), 8);
        assert!(r.report.passed);
        assert_eq!(r.frame.structure.cyl_relation(1), s.cyl_relation(1));
    }

    #[test]
    fn cs3_onto_first_two_coordinates() {
        let s = full_set_algebra(3, 2).unwrap();
        let r = nr(&s, &[0, 1], false).unwrap();
        assert_eq!(r.frame.class_count(), 4);
        assert_eq!(r.report.certificate_level, CertificateLevel::Exhaustive);
        assert!(r.report.passed, "{:?}", r.report);
        for c in &r.frame.classes {
            let t0 = tuple_of(c[0], 3, 2);
            assert!(c.iter().all(|&a| tuple_of(a, 3, 2)[..2] == t0[..2]));
        }
        assert!(check_ca_frame(&r.frame.structure).all_passed());
    }

    #[test]
    fn refuses_non_equivalence_without_force() {
        let s = full_set_algebra(3, 2).unwrap();
        let mut cyl: Vec<Relation> = (0..3).map(|i| s.cyl_relation(i).clone()).collect();
        cyl[2] = Relation::from_pairs(8, (0..8).map(|a| (a, a)).chain([(0, 1)])).unwrap();
        let diag = (0..3).map(|i| (0..3).map(|j| s.diag_set(i, j).clone()).collect()).collect();
        let bad = CaAtomStructure::new(3, s.labels().to_vec(), cyl, diag).unwrap();
        assert!(matches!(nr(&bad, &[0, 1], false), Err(Error::InvalidStructure(_))));
        assert!(nr(&bad, &[0, 1], true).is_ok());
    }

    #[test]
    fn monotone_in_gamma() {
        let s = full_set_algebra(4, 2).unwrap();
        let small = nr(&s, &[0, 1], false).unwrap().frame;
        let big = nr(&s, &[0, 1, 2], false).unwrap().frame;
        // every small class is a union of big classes
        for c in &small.classes {
            let set = AtomSet::from_indices(16, c.iter().copied());
            assert_eq!(big.lift(&big.project(&set)), set);
        }
    }
}
