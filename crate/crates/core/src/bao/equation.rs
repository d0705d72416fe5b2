//! Equation and inequation checking over complex algebras, plus the equational
//! axiom lists for cylindric and polyadic-equality algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::atomset::AtomSet;
use crate::bao::element::Element;
use crate::bao::structure::CaAtomStructure;
use crate::bao::term::{eval_sets, MaskAlgebra, Term};
use crate::error::{Error, Result};

/// Largest atom count for exhaustive checking.
pub const EXHAUSTIVE_ATOMS: usize = 16;
/// Largest variable count for exhaustive checking.
pub const EXHAUSTIVE_VARS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckMode {
    /// Every assignment of elements to variables.
    Exhaustive,
    /// Every assignment of atoms (singletons) to variables.
    Atoms,
    /// `count` pseudo-random assignments drawn from `seed`.
    Sample { seed: u64, count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Comparison {
    Eq,
    Leq,
}

#[derive(Clone, Debug)]
pub struct EquationReport {
    pub holds: bool,
    pub assignments_tried: u64,
    pub counterexample: Option<Vec<Element>>,
}

/// A named axiom instance `lhs = rhs` (or `lhs <= rhs`).
#[derive(Clone, Debug)]
pub struct Axiom {
    pub name: String,
    pub family: &'static str,
    pub lhs: Term,
    pub rhs: Term,
    pub cmp: Comparison,
}

impl Axiom {
    fn eq(name: String, family: &'static str, lhs: Term, rhs: Term) -> Self {
        Axiom {
            name,
            family,
            lhs,
            rhs,
            cmp: Comparison::Eq,
        }
    }
}

fn var_count(lhs: &Term, rhs: &Term) -> usize {
    let l = lhs.variables().last().map_or(0, |&v| v + 1);
    let r = rhs.variables().last().map_or(0, |&v| v + 1);
    l.max(r)
}

/// Checks `lhs = rhs` (or `lhs <= rhs`) in `Ca(s)`.
///
/// Exhaustive mode is a decision procedure; the first counterexample in
/// assignment order is reported, independent of scheduling.
pub fn check_equation(
    s: &CaAtomStructure,
    lhs: &Term,
    rhs: &Term,
    mode: CheckMode,
    cmp: Comparison,
) -> Result<EquationReport> {
    let poly = s.has_transpositions();
    lhs.validate(s.dim(), poly)?;
    rhs.validate(s.dim(), poly)?;
    let vars = var_count(lhs, rhs);
    let n = s.atom_count();
    match mode {
        CheckMode::Exhaustive => {
            if n > EXHAUSTIVE_ATOMS || vars > EXHAUSTIVE_VARS {
                return Err(Error::BoundExceeded(format!(
                    "exhaustive mode needs at most {EXHAUSTIVE_ATOMS} atoms and {EXHAUSTIVE_VARS} variables, got {n} and {vars}"
                )));
            }
            let alg = MaskAlgebra::new(s).expect("at most 16 atoms");
            exhaustive(s, &alg, lhs, rhs, vars, cmp)
        }
        CheckMode::Atoms => {
            let total = (n as u64).checked_pow(vars as u32).filter(|&t| t <= 1 << 32).ok_or_else(|| {
                Error::BoundExceeded(format!("{n}^{vars} atom assignments"))
            })?;
            let assignment = |idx: u64| -> Vec<AtomSet> {
                let mut rest = idx;
                (0..vars)
                    .map(|_| {
                        let a = (rest % n as u64) as usize;
                        rest /= n as u64;
                        AtomSet::singleton(n, a)
                    })
                    .collect()
            };
            search(s, lhs, rhs, cmp, total, assignment)
        }
        CheckMode::Sample { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let envs: Vec<Vec<AtomSet>> = (0..count)
                .map(|_| {
                    (0..vars)
                        .map(|_| AtomSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5))))
                        .collect()
                })
                .collect();
            search(s, lhs, rhs, cmp, count as u64, |i| envs[i as usize].clone())
        }
    }
}

fn compare_sets(cmp: Comparison, l: &AtomSet, r: &AtomSet) -> bool {
    match cmp {
        Comparison::Eq => l == r,
        Comparison::Leq => l.is_subset(r),
    }
}

fn search(
    s: &CaAtomStructure,
    lhs: &Term,
    rhs: &Term,
    cmp: Comparison,
    total: u64,
    env_at: impl Fn(u64) -> Vec<AtomSet> + Sync,
) -> Result<EquationReport> {
    let alg = MaskAlgebra::new(s);
    let fails = |idx: u64| -> bool {
        let env = env_at(idx);
        match &alg {
            Some(m) => {
                let masks: Vec<u64> = env.iter().map(AtomSet::to_mask).collect();
                let l = m.eval(lhs, &masks);
                let r = m.eval(rhs, &masks);
                match cmp {
                    Comparison::Eq => l != r,
                    Comparison::Leq => l & !r != 0,
                }
            }
            None => !compare_sets(cmp, &eval_sets(s, lhs, &env), &eval_sets(s, rhs, &env)),
        }
    };
    let found = (0..total).into_par_iter().find_first(|&i| fails(i));
    Ok(report(s, found, total, env_at))
}

fn exhaustive(
    s: &CaAtomStructure,
    alg: &MaskAlgebra,
    lhs: &Term,
    rhs: &Term,
    vars: usize,
    cmp: Comparison,
) -> Result<EquationReport> {
    let n = alg.atoms();
    let total: u64 = 1u64 << (n * vars);
    let mask = alg.full();
    let split = |idx: u64| -> [u64; EXHAUSTIVE_VARS] {
        if n == 0 {
            return [0, 0];
        }
        [idx & mask, (idx >> n) & mask]
    };
    let fails = |idx: u64| -> bool {
        let env = split(idx);
        let l = alg.eval(lhs, &env);
        let r = alg.eval(rhs, &env);
        match cmp {
            Comparison::Eq => l != r,
            Comparison::Leq => l & !r != 0,
        }
    };
    let found = (0..total).into_par_iter().find_first(|&i| fails(i));
    Ok(report(s, found, total, |i| {
        split(i)[..vars].iter().map(|&m| AtomSet::from_mask(n, m)).collect()
    }))
}

fn report(
    s: &CaAtomStructure,
    found: Option<u64>,
    total: u64,
    env_at: impl Fn(u64) -> Vec<AtomSet>,
) -> EquationReport {
    match found {
        None => EquationReport {
            holds: true,
            assignments_tried: total,
            counterexample: None,
        },
        Some(i) => EquationReport {
            holds: false,
            assignments_tried: i + 1,
            counterexample: Some(
                env_at(i)
                    .into_iter()
                    .map(|set| s.element_from_set(set).expect("same universe"))
                    .collect(),
            ),
        },
    }
}

/// Checks every axiom; returns the names of the failing ones.
pub fn failing_axioms(s: &CaAtomStructure, axioms: &[Axiom], mode: CheckMode) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for ax in axioms {
        if !check_equation(s, &ax.lhs, &ax.rhs, mode, ax.cmp)?.holds {
            out.push(ax.name.clone());
        }
    }
    Ok(out)
}

/// The cylindric axioms C1 to C7 instantiated at every index of `dim`.
pub fn ca_axioms(dim: usize) -> Vec<Axiom> {
    let x = || Term::var(0);
    let y = || Term::var(1);
    let mut out = Vec::new();
    for i in 0..dim {
        out.push(Axiom::eq(format!("C1[{i}]"), "C1", Term::cyl(i, Term::Zero), Term::Zero));
    }
    for i in 0..dim {
        out.push(Axiom {
            name: format!("C2[{i}]"),
            family: "C2",
            lhs: x(),
            rhs: Term::cyl(i, x()),
            cmp: Comparison::Leq,
        });
    }
    for i in 0..dim {
        out.push(Axiom::eq(
            format!("C3[{i}]"),
            "C3",
            Term::cyl(i, Term::meet(x(), Term::cyl(i, y()))),
            Term::meet(Term::cyl(i, x()), Term::cyl(i, y())),
        ));
    }
    for i in 0..dim {
        for j in i + 1..dim {
            out.push(Axiom::eq(
                format!("C4[{i},{j}]"),
                "C4",
                Term::cyl(i, Term::cyl(j, x())),
                Term::cyl(j, Term::cyl(i, x())),
            ));
        }
    }
    for i in 0..dim {
        out.push(Axiom::eq(format!("C5[{i}]"), "C5", Term::diag(i, i), Term::One));
    }
    for i in 0..dim {
        for j in 0..dim {
            for k in (0..dim).filter(|&k| k != i && k != j) {
                out.push(Axiom::eq(
                    format!("C6[{i},{j};{k}]"),
                    "C6",
                    Term::diag(i, j),
                    Term::cyl(k, Term::meet(Term::diag(i, k), Term::diag(k, j))),
                ));
            }
        }
    }
    for i in 0..dim {
        for j in (0..dim).filter(|&j| j != i) {
            out.push(Axiom::eq(
                format!("C7[{i},{j}]"),
                "C7",
                Term::meet(
                    Term::cyl(i, Term::meet(Term::diag(i, j), x())),
                    Term::cyl(i, Term::meet(Term::diag(i, j), Term::not(x()))),
                ),
                Term::Zero,
            ));
        }
    }
    out
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

/// Axioms linking transposition substitutions to the cylindric operators.
pub fn pea_axioms(dim: usize) -> Vec<Axiom> {
    let x = || Term::var(0);
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            out.push(Axiom::eq(
                format!("P-inv[{i},{j}]"),
                "P-inv",
                Term::transp(i, j, Term::transp(i, j, x())),
                x(),
            ));
            out.push(Axiom::eq(
                format!("P-neg[{i},{j}]"),
                "P-neg",
                Term::transp(i, j, Term::not(x())),
                Term::not(Term::transp(i, j, x())),
            ));
            for k in 0..dim {
                out.push(Axiom::eq(
                    format!("P-cyl[{i},{j};{k}]"),
                    "P-cyl",
                    Term::transp(i, j, Term::cyl(k, x())),
                    Term::cyl(swapped(i, j, k), Term::transp(i, j, x())),
                ));
            }
            for k in 0..dim {
                for l in 0..dim {
                    out.push(Axiom::eq(
                        format!("P-diag[{i},{j};{k},{l}]"),
                        "P-diag",
                        Term::transp(i, j, Term::diag(k, l)),
                        Term::diag(swapped(i, j, k), swapped(i, j, l)),
                    ));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::set_algebra::full_set_algebra;
    use crate::relation::Relation;

    #[test]
    fn increasing_cylindrifier_holds_exhaustively() {
        let s = full_set_algebra(3, 2).unwrap();
        for i in 0..3 {
            let r = check_equation(
                &s,
                &Term::var(0),
                &Term::cyl(i, Term::var(0)),
                CheckMode::Exhaustive,
                Comparison::Leq,
            )
            .unwrap();
            assert!(r.holds);
            assert_eq!(r.assignments_tried, 256);
        }
    }

    #[test]
    fn all_ca_and_pea_axioms_hold_on_set_algebra() {
        let s = full_set_algebra(3, 2).unwrap();
        assert!(failing_axioms(&s, &ca_axioms(3), CheckMode::Exhaustive).unwrap().is_empty());
        assert!(failing_axioms(&s, &pea_axioms(3), CheckMode::Exhaustive).unwrap().is_empty());
    }

    /// Three atoms; T_0 pairs {0,1}, T_1 pairs {1,2}, so the composites differ.
    fn noncommuting() -> CaAtomStructure {
        let n = 3;
        let t0 = Relation::from_key(n, |a| if a == 2 { 1 } else { 0 });
        let t1 = Relation::from_key(n, |a| if a == 0 { 0 } else { 1 });
        let full = AtomSet::full(n);
        let diag = vec![vec![full.clone(), full.clone()], vec![full.clone(), full]];
        CaAtomStructure::new(2, vec!["p".into(), "q".into(), "r".into()], vec![t0, t1], diag).unwrap()
    }

    #[test]
    fn commutativity_counterexample_is_reported() {
        let s = noncommuting();
        let c4 = ca_axioms(2).into_iter().find(|a| a.family == "C4").unwrap();
        let r = check_equation(&s, &c4.lhs, &c4.rhs, CheckMode::Exhaustive, Comparison::Eq).unwrap();
        assert!(!r.holds);
        let cx = r.counterexample.unwrap();
        // first failing assignment in mask order is the singleton {0}
        assert_eq!(cx[0].to_vec(), vec![0]);
        let a = s.cyl(0, &s.cyl(1, &cx[0]).unwrap()).unwrap();
        let b = s.cyl(1, &s.cyl(0, &cx[0]).unwrap()).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn atoms_and_sample_modes() {
        let s = noncommuting();
        let c4 = ca_axioms(2).into_iter().find(|a| a.family == "C4").unwrap();
        let r = check_equation(&s, &c4.lhs, &c4.rhs, CheckMode::Atoms, Comparison::Eq).unwrap();
        assert!(!r.holds);
        let r1 = check_equation(&s, &c4.lhs, &c4.rhs, CheckMode::Sample { seed: 7, count: 50 }, Comparison::Eq).unwrap();
        let r2 = check_equation(&s, &c4.lhs, &c4.rhs, CheckMode::Sample { seed: 7, count: 50 }, Comparison::Eq).unwrap();
        assert_eq!(r1.holds, r2.holds);
        assert_eq!(r1.assignments_tried, r2.assignments_tried);
    }

    #[test]
    fn exhaustive_bounds_are_enforced() {
        let s = full_set_algebra(3, 3).unwrap();
        let r = check_equation(&s, &Term::var(0), &Term::var(0), CheckMode::Exhaustive, Comparison::Eq);
        assert!(matches!(r, Err(Error::BoundExceeded(_))));
        let t = Term::meet(Term::var(0), Term::meet(Term::var(1), Term::var(2)));
        let small = full_set_algebra(2, 2).unwrap();
        assert!(matches!(
            check_equation(&small, &t, &t, CheckMode::Exhaustive, Comparison::Eq),
            Err(Error::BoundExceeded(_))
        ));
    }
}
