//! The twelve acceptance criteria as functions returning a verdict line.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atomset::AtomSet;
use crate::bao::element::Element;
use crate::bao::equation::{ca_axioms, check_equation, failing_axioms, CheckMode, Comparison};
use crate::bao::frame::check_ca_frame;
use crate::bao::structure::CaAtomStructure;
use crate::bao::term::eval_term;
use crate::bao::witness::{approximate_unary, inequality_pairs};
use crate::constructions::hh::{bin_forb, hh_ra, PsiBound};
use crate::constructions::hyper::{enumerate_hypernetworks, is_hyperbasis};
use crate::constructions::matrices::basic_matrices;
use crate::constructions::monk::{johnson_extend, monk_atoms};
use crate::constructions::ramsey::{kappa, psi};
use crate::constructions::set_algebra::{index_of, three_cube};
use crate::constructions::split::{merge_ca_copies, split_ca_atom, SplitPolicy};
use crate::error::Result;
use crate::games::{solve, CaArena, GameSpec, RaArena, SolveOptions, SolveResult, Winner};
use crate::neat::{ra_reduct, restriction_iso};
use crate::ra::{check_ra_axioms, cyclic_group_ra};
use crate::suite::fixtures::{corrupted_cs3, cs, frame_fixtures, game_fixtures, ra_game_fixtures};
use crate::suite::oracles::{monk_oracle, naive_ra_check, psi_unrolled, relation_compose};

pub const CRITERIA: usize = 12;

/// Wall-clock limits.
pub const MONK_LIMIT: Duration = Duration::from_secs(1);
pub const RA_AXIOM_LIMIT: Duration = Duration::from_secs(5);
pub const SWAP_LIMIT: Duration = Duration::from_secs(60);

/// Seed and size of the sampled composition comparison.
pub const REDUCT_SEED: u64 = 0x5eed_0009;
pub const REDUCT_SAMPLES: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} [{verdict}] {}: {}", self.id, self.title, self.detail)
    }
}

fn verdict(id: usize, title: &'static str, passed: bool, detail: String) -> CriterionResult {
    CriterionResult {
        id,
        title,
        passed,
        detail,
    }
}

fn on_error(id: usize, title: &'static str, r: Result<CriterionResult>) -> CriterionResult {
    r.unwrap_or_else(|e| verdict(id, title, false, format!("error: {e}")))
}

pub fn run(id: usize) -> Option<CriterionResult> {
    let r = match id {
        1 => frame_equation_agreement(),
        2 => monk_structure(),
        3 => hh_relation_algebra(),
        4 => ramsey_values(),
        5 => basic_matrix_frame(),
        6 => neat_restriction(),
        7 => swap_inequalities(),
        8 => cube_point_images(),
        9 => reduct_of_cs4(),
        10 => splitting_embedding(),
        11 => game_sanity(),
        12 => hyperbasis_deletions(),
        _ => return None,
    };
    Some(r)
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=CRITERIA).filter_map(run).collect()
}

pub fn frame_equation_agreement() -> CriterionResult {
    const TITLE: &str = "frame conditions agree with the cylindric equations";
    on_error(1, TITLE, (|| {
        let mut disagree = Vec::new();
        let (mut good, mut bad) = (0, 0);
        for (name, s) in frame_fixtures() {
            let frame = check_ca_frame(&s).ca_passed();
            let eqs = failing_axioms(&s, &ca_axioms(s.dim()), CheckMode::Exhaustive)?.is_empty();
            if frame != eqs {
                disagree.push(name);
            } else if frame {
                good += 1;
            } else {
                bad += 1;
            }
        }
        let passed = disagree.is_empty() && good > 0 && bad > 0;
        let detail = if disagree.is_empty() {
            format!("{} fixtures agree ({good} cylindric, {bad} not)", good + bad)
        } else {
            format!("disagreement on {}", disagree.join(", "))
        };
        Ok(verdict(1, TITLE, passed, detail))
    })())
}

pub fn monk_structure() -> CriterionResult {
    const TITLE: &str = "Monk structure G(3,3)";
    on_error(2, TITLE, (|| {
        let start = Instant::now();
        let g = monk_atoms(3, 3)?;
        let count = g.atoms.len();
        let oracle = monk_oracle(3, 3);
        let ours: BTreeSet<(Vec<u8>, Vec<Option<u8>>)> = g
            .atoms
            .iter()
            .map(|a| (a.partition.clone(), (0..9).map(|kl| a.colour(kl / 3, kl % 3)).collect()))
            .collect();
        let frame = check_ca_frame(&g.structure).ca_passed();
        let j = johnson_extend(&g)?;
        let mut involution = true;
        for i in 0..3 {
            for k in i + 1..3 {
                let p = j.transposition(i, k).expect("polyadic");
                for a in 0..count {
                    involution &= p[p[a]] == a;
                    if j.diag_set(i, k).contains(a) {
                        involution &= p[a] == a;
                    }
                }
            }
        }
        let fast = start.elapsed() < MONK_LIMIT;
        let passed = count == 34 && ours == oracle && frame && involution && fast;
        let detail = format!(
            "{count} atoms, oracle {} ({}), frame {}, transpositions {}, {}",
            oracle.len(),
            if ours == oracle { "same atoms" } else { "different atoms" },
            if frame { "ok" } else { "fails" },
            if involution { "involutive" } else { "not involutive" },
            if fast { "within 1 s" } else { "over 1 s" },
        );
        Ok(verdict(2, TITLE, passed, detail))
    })())
}

pub fn hh_relation_algebra() -> CriterionResult {
    const TITLE: &str = "hh_ra(3,2,3) relation algebra axioms";
    on_error(3, TITLE, (|| {
        let start = Instant::now();
        let ra = hh_ra(3, 2, 3)?;
        let report = check_ra_axioms(&ra, u128::MAX)?;
        let naive = naive_ra_check(&ra);
        let fast = start.elapsed() < RA_AXIOM_LIMIT;
        let assoc = report.get("associativity").expect("checked");
        let peirce = report.get("peircean").expect("checked");
        let agree = assoc.passed == naive.associative && peirce.passed == naive.peircean;
        let passed = ra.atom_count() == 13 && report.all_passed() && agree && fast;
        let mut failing: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        if failing.is_empty() {
            failing.push("none");
        }
        let witness = naive
            .associativity_witness
            .map(|[a, b, c]| format!("; ({};{});{} differs from {};({};{})", ra.label(a), ra.label(b), ra.label(c), ra.label(a), ra.label(b), ra.label(c)))
            .unwrap_or_default();
        let detail = format!(
            "{} atoms, failing: {}; independent check {}{witness}",
            ra.atom_count(),
            failing.join(", "),
            if agree { "agrees" } else { "disagrees" },
        );
        Ok(verdict(3, TITLE, passed, detail))
    })())
}

pub fn ramsey_values() -> CriterionResult {
    const TITLE: &str = "kappa and psi values";
    let zero = (0..=100u64).all(|x| kappa(x, 0) == BigUint::from(0u32));
    let small = psi(2, 1) == BigUint::from(2u32) && psi(3, 1) == BigUint::from(4u32);
    let unrolled = [(2u64, 1u64), (3, 1), (3, 2), (4, 1)]
        .iter()
        .all(|&(n, r)| psi(n, r) == BigUint::from(psi_unrolled(n as u128, r as u128)));
    // (x^y - 1) / (x - 1) far past 128 bits
    let big = kappa(7, 60) == (BigUint::from(7u32).pow(60) - 1u32) / 6u32;
    let passed = zero && small && unrolled && big;
    verdict(
        4,
        TITLE,
        passed,
        format!("psi(2,1)={}, psi(3,1)={}, psi(3,2)={}, kappa(x,0)=0 for x<=100: {zero}, exact past 128 bits: {big}", psi(2, 1), psi(3, 1), psi(3, 2)),
    )
}

pub fn basic_matrix_frame() -> CriterionResult {
    const TITLE: &str = "basic matrices over bin_forb(3,1,2) form a cylindric frame";
    on_error(5, TITLE, (|| {
        let bin = bin_forb(3, 1, PsiBound::Cap(2))?;
        let f = basic_matrices(3, &bin)?;
        let report = check_ca_frame(&f.structure);
        let failing: Vec<String> = report.failures().filter(|c| c.family != "PEA").map(|c| c.name.clone()).collect();
        let detail = format!(
            "{} matrices, {}",
            f.matrices.len(),
            if failing.is_empty() { "all cylindric frame conditions hold".to_string() } else { format!("failing: {}", failing.join(", ")) }
        );
        Ok(verdict(5, TITLE, report.ca_passed(), detail))
    })())
}

pub fn neat_restriction() -> CriterionResult {
    const TITLE: &str = "restriction_iso(3, 4, bin_forb(3,1,2))";
    on_error(6, TITLE, (|| {
        let r = restriction_iso(3, 4, &bin_forb(3, 1, PsiBound::Cap(2))?)?;
        let companion = restriction_iso(3, 4, &bin_forb(4, 1, PsiBound::Cap(1))?)?;
        let detail = format!(
            "{} small and {} big atoms, {}; companion at bin_forb(4,1,1): {}",
            r.params["small_atoms"],
            r.params["big_atoms"],
            r.counterexample.clone().unwrap_or_else(|| "certified".into()),
            if companion.passed { "certified".to_string() } else { companion.counterexample.clone().unwrap_or_default() },
        );
        Ok(verdict(6, TITLE, r.passed, detail))
    })())
}

/// Elements of `s` fixed by `c_i`, as unions of `T_i` classes.
fn fixed_by(s: &CaAtomStructure, i: usize) -> Vec<Element> {
    let r = s.cyl_relation(i);
    let mut reps: Vec<usize> = Vec::new();
    for a in 0..s.atom_count() {
        if !reps.iter().any(|&b| r.related(a, b)) {
            reps.push(a);
        }
    }
    (0..1u64 << reps.len())
        .map(|mask| {
            let mut set = AtomSet::empty(s.atom_count());
            for (k, &b) in reps.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    for &a in r.successors(b) {
                        set.insert(a as usize);
                    }
                }
            }
            s.element_from_set(set).expect("same universe")
        })
        .collect()
}

pub fn swap_inequalities() -> CriterionResult {
    const TITLE: &str = "swap terms below their approximations on Cs_4";
    on_error(7, TITLE, (|| {
        let start = Instant::now();
        let s = cs(4);
        let mut parts = Vec::new();
        let mut all = true;
        for (name, swap, approx) in inequality_pairs() {
            let r = check_equation(&s, &swap, &approx, CheckMode::Exhaustive, Comparison::Leq)?;
            all &= r.holds;
            parts.push(match &r.counterexample {
                None => format!("{name} holds"),
                Some(env) => {
                    let shown: Vec<String> = env
                        .iter()
                        .map(|e| format!("{{{}}}", e.members().iter().map(|a| s.label(a).to_string()).collect::<Vec<_>>().join(" ")))
                        .collect();
                    format!("{name} fails at {}", shown.join(", "))
                }
            });
        }
        // companion over the elements with c_3 x = x
        let fixed = fixed_by(&s, 3);
        let mut companion = true;
        for (_, swap, approx) in inequality_pairs() {
            let binary = swap.variables().len() > 1;
            for x in &fixed {
                let ys: &[Element] = if binary { &fixed } else { std::slice::from_ref(x) };
                for y in ys {
                    let env = [x.clone(), y.clone()];
                    let l = eval_term(&s, &swap, &env)?;
                    let r = eval_term(&s, &approx, &env)?;
                    companion &= l.is_below(&r)?;
                }
            }
        }
        let fast = start.elapsed() < SWAP_LIMIT;
        let detail = format!(
            "{}; over the {} elements with c3 x = x: {}{}",
            parts.join("; "),
            fixed.len(),
            if companion { "holds" } else { "fails" },
            if fast { "" } else { "; over 60 s" }
        );
        Ok(verdict(7, TITLE, all && fast, detail))
    })())
}

pub fn cube_point_images() -> CriterionResult {
    const TITLE: &str = "approximate swap sends points of the 3-cube to points";
    on_error(8, TITLE, (|| {
        let s = three_cube();
        let tau = approximate_unary();
        let mut singles = 0;
        let mut first_bad = None;
        for u in 0..s.atom_count() {
            let img = eval_term(&s, &tau, &[s.atom(u)?])?;
            if img.len() == 1 {
                singles += 1;
            } else if first_bad.is_none() {
                first_bad = Some(format!("; {} has {} images", s.label(u), img.len()));
            }
        }
        let passed = singles == 27;
        Ok(verdict(8, TITLE, passed, format!("{singles}/27 singleton images{}", first_bad.unwrap_or_default())))
    })())
}

fn relation_element(s: &CaAtomStructure, rel: &BTreeSet<(usize, usize)>) -> Element {
    let n = s.dim();
    let set = AtomSet::from_indices(
        s.atom_count(),
        (0..s.atom_count()).filter(|&a| {
            let t = crate::constructions::set_algebra::tuple_of(a, n, 2);
            rel.contains(&(t[n - 2], t[n - 1]))
        }),
    );
    s.element_from_set(set).expect("same universe")
}

pub fn reduct_of_cs4() -> CriterionResult {
    const TITLE: &str = "relation algebra reduct of Cs_4";
    on_error(9, TITLE, (|| {
        let s = cs(4);
        let r = ra_reduct(&s)?;
        let atoms = r.atom_structure()?;
        let axioms = check_ra_axioms(&atoms, u128::MAX)?.all_passed();
        let pairs = [(0, 0), (0, 1), (1, 0), (1, 1)];
        let relation = |mask: u32| -> BTreeSet<(usize, usize)> {
            pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(REDUCT_SEED);
        let mut agree = 0;
        for _ in 0..REDUCT_SAMPLES {
            let (x, y) = (relation(rng.gen_range(0..16)), relation(rng.gen_range(0..16)));
            let got = r.compose(&relation_element(&s, &x), &relation_element(&s, &y))?;
            if got == relation_element(&s, &relation_compose(&x, &y)) {
                agree += 1;
            }
        }
        let passed = axioms && agree == REDUCT_SAMPLES;
        let detail = format!(
            "{} atoms, axioms {}, composition agrees on {agree}/{REDUCT_SAMPLES} sampled pairs",
            atoms.atom_count(),
            if axioms { "hold" } else { "fail" }
        );
        Ok(verdict(9, TITLE, passed, detail))
    })())
}

/// The first atom outside every off-diagonal `E_ij`.
pub fn off_diagonal_atom(s: &CaAtomStructure) -> Option<usize> {
    let n = s.dim();
    (0..s.atom_count()).find(|&a| (0..n).all(|i| (0..n).all(|j| i == j || !s.diag_set(i, j).contains(a))))
}

pub fn splitting_embedding() -> CriterionResult {
    const TITLE: &str = "splitting an atom of G(3,3) into 3 copies";
    on_error(10, TITLE, (|| {
        let g = monk_atoms(3, 3)?;
        let s = &g.structure;
        let a = off_diagonal_atom(s).expect("G(3,3) has atoms off the diagonals");
        let sp = split_ca_atom(s, a, &SplitPolicy::inherit(3))?;
        let (old, new) = (s.atom_count(), sp.structure.atom_count());
        let mut ok = new == old + 2;
        // Boolean embedding: images of atoms are non-empty, disjoint and cover
        let mut cover = AtomSet::empty(new);
        for b in 0..old {
            let img = sp.map.embed(&AtomSet::singleton(old, b));
            ok &= !img.is_empty() && img.is_disjoint(&cover);
            cover.union_with(&img);
        }
        ok &= cover.is_full();
        for i in 0..3 {
            for j in 0..3 {
                ok &= sp.map.embed(s.diag_set(i, j)) == *sp.structure.diag_set(i, j);
            }
            for b in 0..old {
                let x = AtomSet::singleton(old, b);
                ok &= sp.map.embed(&s.cyl_raw(i, &x)) == sp.structure.cyl_raw(i, &sp.map.embed(&x));
            }
        }
        let before = check_ca_frame(s).ca_passed();
        let after = check_ca_frame(&sp.structure).ca_passed();
        let merged = merge_ca_copies(&sp, s.labels())? == *s;
        let passed = ok && before && after && merged;
        let detail = format!(
            "split {} into 3: {old} -> {new} atoms, embedding {}, frame {} -> {}, merging copies {}",
            s.label(a),
            if ok { "preserves cylindrifiers and diagonals" } else { "fails" },
            if before { "ok" } else { "fails" },
            if after { "ok" } else { "fails" },
            if merged { "restores G(3,3)" } else { "differs" },
        );
        Ok(verdict(10, TITLE, passed, detail))
    })())
}

fn ca_winner(s: &CaAtomStructure, spec: GameSpec, atom: usize) -> Result<SolveResult> {
    solve(&CaArena::new(s, spec, atom)?, &SolveOptions::default())
}

/// Rounds checked for monotonicity.
pub const MONOTONE_ROUNDS: usize = 4;

/// Winners for rounds `0..=MONOTONE_ROUNDS` never go from `∀` back to `∃`.
fn monotone(ws: &[Winner]) -> bool {
    ws.windows(2).all(|w| !(w[0] == Winner::Forall && w[1] == Winner::Exists))
}

pub fn game_sanity() -> CriterionResult {
    const TITLE: &str = "game solver sanity";
    on_error(11, TITLE, (|| {
        let s = cs(3);
        let mut notes = Vec::new();
        let mut ok = true;
        let mut g_ok = true;
        let mut f_ok = true;
        for atom in 0..s.atom_count() {
            for k in 0..=3 {
                g_ok &= ca_winner(&s, GameSpec::g(k), atom)?.winner == Winner::Exists;
                f_ok &= ca_winner(&s, GameSpec::f(4, k), atom)?.winner == Winner::Exists;
            }
        }
        notes.push(format!(
            "Cs_3: G_0..G_3 {}, F^4 up to 3 rounds {}",
            if g_ok { "won by exists" } else { "lost" },
            if f_ok { "won by exists" } else { "lost" }
        ));
        ok &= g_ok && f_ok;

        let bad = corrupted_cs3();
        let origin = index_of(&[0, 0, 0], 2);
        let r = ca_winner(&bad, GameSpec::g(2), origin)?;
        let refuted = r.winner == Winner::Forall && r.rounds_used <= 2;
        notes.push(format!("corrupted Cs_3: forall wins in {} round(s)", r.rounds_used));
        ok &= refuted;

        let mut mono = true;
        for (_, s) in game_fixtures() {
            for atom in 0..s.atom_count() {
                for forgetful in [false, true] {
                    let spec = |r| if forgetful { GameSpec::f(s.dim() + 1, r) } else { GameSpec::g(r) };
                    let ws: Vec<Winner> = (0..=MONOTONE_ROUNDS)
                        .map(|r| ca_winner(&s, spec(r), atom).map(|x| x.winner))
                        .collect::<Result<_>>()?;
                    mono &= monotone(&ws);
                }
            }
        }
        for (_, ra) in ra_game_fixtures() {
            for atom in 0..ra.atom_count() {
                for pebbles in 3..=4 {
                    let ws: Vec<Winner> = (0..=MONOTONE_ROUNDS.min(3))
                        .map(|r| {
                            solve(&RaArena::new(&ra, GameSpec::ra_triangle(pebbles, r), atom)?, &SolveOptions::default())
                                .map(|x| x.winner)
                        })
                        .collect::<Result<_>>()?;
                    mono &= monotone(&ws);
                }
            }
        }
        notes.push(format!("monotone in rounds: {mono}"));
        ok &= mono;

        let mut same = true;
        for threads in [1, 4] {
            let opts = SolveOptions {
                threads,
                ..SolveOptions::default()
            };
            let one = solve(&CaArena::new(&s, GameSpec::g(2), 1)?, &SolveOptions { threads: 2, ..opts })?;
            let two = solve(&CaArena::new(&s, GameSpec::g(2), 1)?, &opts)?;
            let c1 = solve(&CaArena::new(&bad, GameSpec::g(2), origin)?, &SolveOptions { threads: 2, ..opts })?;
            let c2 = solve(&CaArena::new(&bad, GameSpec::g(2), origin)?, &opts)?;
            same &= one == two && c1 == c2;
        }
        notes.push(format!("identical across thread counts: {same}"));
        ok &= same;
        Ok(verdict(11, TITLE, ok, notes.join("; ")))
    })())
}

pub fn hyperbasis_deletions() -> CriterionResult {
    const TITLE: &str = "hyperbasis over Z_4";
    on_error(12, TITLE, (|| {
        let ra = cyclic_group_ra(4)?;
        let h = enumerate_hypernetworks(&ra, 3, 3, 1, u128::MAX)?;
        let full = is_hyperbasis(&ra, &h);
        let mut broken = 0;
        for k in 0..h.len() {
            let mut less = h.clone();
            less.remove(k);
            if !is_hyperbasis(&ra, &less).passed {
                broken += 1;
            }
        }
        let passed = full.passed && broken == h.len();
        let detail = format!(
            "{} hypernetworks, full set {}, {broken}/{} single deletions break a condition",
            h.len(),
            if full.passed { "is a hyperbasis" } else { "fails" },
            h.len()
        );
        Ok(verdict(12, TITLE, passed, detail))
    })())
}
