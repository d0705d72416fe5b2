//! Exact solver for truncated games by memoized alternating search.
//!
//! Openings are solved as independent tasks, each with a private memo, so
//! results and statistics do not depend on the thread count.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::arena::{Arena, Counter};

/// Default cap on generated positions per solve.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Winner {
    Exists,
    Forall,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    /// Positions evaluated (memo misses).
    pub positions: u64,
    pub memo_hits: u64,
    /// Networks generated as openings or answers.
    pub generated: u64,
}

impl SolveStats {
    fn add(&mut self, o: &SolveStats) {
        self.positions += o.positions;
        self.memo_hits += o.memo_hits;
        self.generated += o.generated;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyEntry {
    pub position: String,
    pub rounds_left: usize,
    /// The `∀` move being answered, for `∃` strategies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forall_move: Option<String>,
    pub choice: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub winner: Winner,
    pub rounds: usize,
    /// `rounds` when `∃` wins; otherwise the fewest rounds `∀` needs.
    pub rounds_used: usize,
    pub opening: Option<String>,
    pub strategy: Vec<StrategyEntry>,
    pub stats: SolveStats,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Worker threads; 0 uses the global pool.
    pub threads: usize,
    pub memo: bool,
    pub budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            threads: 0,
            memo: true,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Memoized evaluation of "`∃` survives `r` more rounds from `p`".
///
/// Survival is monotone in `r`, so the memo keeps per position the most
/// rounds known to be survived and the fewest known to be lost.
type Answers<A> = HashMap<(<A as Arena>::Pos, <A as Arena>::Move), Vec<<A as Arena>::Pos>>;

pub struct Search<'a, A: Arena> {
    arena: &'a A,
    memo: HashMap<A::Pos, (usize, usize)>,
    answers: Answers<A>,
    use_memo: bool,
    pub stats: SolveStats,
    pub counter: Counter,
}

impl<'a, A: Arena> Search<'a, A> {
    pub fn new(arena: &'a A, use_memo: bool, budget: u64) -> Self {
        Search {
            arena,
            memo: HashMap::new(),
            answers: HashMap::new(),
            use_memo,
            stats: SolveStats::default(),
            counter: Counter::new(budget),
        }
    }

    pub fn responses(&mut self, p: &A::Pos, m: &A::Move) -> Result<Vec<A::Pos>> {
        if self.use_memo {
            if let Some(v) = self.answers.get(&(p.clone(), m.clone())) {
                return Ok(v.clone());
            }
        }
        let v = self.arena.responses(p, m, &mut self.counter)?;
        self.stats.generated = self.counter.generated;
        if self.use_memo {
            self.answers.insert((p.clone(), m.clone()), v.clone());
        }
        Ok(v)
    }

    pub fn wins(&mut self, p: &A::Pos, r: usize) -> Result<bool> {
        if r == 0 {
            return Ok(true);
        }
        if self.use_memo {
            if let Some(&(won, lost)) = self.memo.get(p) {
                if r <= won || r >= lost {
                    self.stats.memo_hits += 1;
                    return Ok(r <= won);
                }
            }
        }
        self.stats.positions += 1;
        let mut value = true;
        for m in self.arena.forall_moves(p)? {
            let mut answered = false;
            for q in self.responses(p, &m)? {
                if self.wins(&q, r - 1)? {
                    answered = true;
                    break;
                }
            }
            if !answered {
                value = false;
                break;
            }
        }
        if self.use_memo {
            let e = self.memo.entry(p.clone()).or_insert((0, usize::MAX));
            if value {
                e.0 = e.0.max(r);
            } else {
                e.1 = e.1.min(r);
            }
        }
        Ok(value)
    }

    /// Largest `r <= rounds` that `∃` survives from `p`.
    pub fn survival(&mut self, p: &A::Pos, rounds: usize) -> Result<usize> {
        let mut r = rounds;
        while r > 0 && !self.wins(p, r)? {
            r -= 1;
        }
        Ok(r)
    }

    /// The least move after which every answer loses `r - 1` rounds.
    pub fn winning_forall_move(&mut self, p: &A::Pos, r: usize) -> Result<Option<A::Move>> {
        if r == 0 {
            return Ok(None);
        }
        for m in self.arena.forall_moves(p)? {
            let mut refuted = true;
            for q in self.responses(p, &m)? {
                if self.wins(&q, r - 1)? {
                    refuted = false;
                    break;
                }
            }
            if refuted {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    /// The least answer that survives `r - 1` rounds.
    pub fn winning_answer(&mut self, p: &A::Pos, m: &A::Move, r: usize) -> Result<Option<A::Pos>> {
        for q in self.responses(p, m)? {
            if self.wins(&q, r.saturating_sub(1))? {
                return Ok(Some(q));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Choice<P, M> {
    Answer(P),
    Move(M),
}

type Plan<A> = BTreeMap<(<A as Arena>::Pos, usize, Option<<A as Arena>::Move>), Choice<<A as Arena>::Pos, <A as Arena>::Move>>;

fn run_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Solves the truncated game, extracts the winner's strategy
/// and replays it before returning.
pub fn solve<A: Arena>(arena: &A, opts: &SolveOptions) -> Result<SolveResult> {
    let rounds = arena.rounds();
    let mut counter = Counter::new(opts.budget);
    let openings = arena.openings(&mut counter)?;
    let mut stats = SolveStats {
        generated: counter.generated,
        ..SolveStats::default()
    };

    let tasks: Vec<Result<(usize, Search<'_, A>)>> = run_pool(opts.threads, || {
        openings
            .par_iter()
            .map(|p| {
                let mut s = Search::new(arena, opts.memo, opts.budget);
                let r = s.survival(p, rounds)?;
                Ok((r, s))
            })
            .collect()
    })?;
    let mut survival = Vec::with_capacity(openings.len());
    let mut searches = Vec::with_capacity(openings.len());
    for t in tasks {
        let (v, s) = t?;
        survival.push(v);
        searches.push(s);
    }

    let best = survival.iter().copied().max();
    let (winner, rounds_used) = match best {
        Some(b) if b == rounds => (Winner::Exists, rounds),
        Some(b) => (Winner::Forall, b + 1),
        None => (Winner::Forall, 0),
    };
    let winning_opening = survival.iter().position(|&r| r == rounds).filter(|_| winner == Winner::Exists);

    // each opening's strategy comes from its own search; choices depend only
    // on game values, so the merged plan is independent of scheduling
    let plans: Vec<Result<Plan<A>>> = run_pool(opts.threads, || {
        searches
            .par_iter_mut()
            .enumerate()
            .map(|(i, search)| {
                let mut plan: Plan<A> = BTreeMap::new();
                let mut seen = HashSet::new();
                match winning_opening {
                    Some(w) if w == i => extract_exists(search, &openings[i], rounds, &mut plan, &mut seen)?,
                    Some(_) => {}
                    None => extract_forall(search, &openings[i], rounds_used, &mut plan, &mut seen)?,
                }
                Ok(plan)
            })
            .collect()
    })?;
    let mut plan: Plan<A> = BTreeMap::new();
    for p in plans {
        plan.extend(p?);
    }
    for s in &searches {
        stats.add(&s.stats);
    }
    if stats.generated > opts.budget {
        return Err(Error::Budget {
            reason: "game search".into(),
            estimate: stats.generated as u128,
            budget: opts.budget as u128,
        });
    }
    let opening = winning_opening.map(|i| openings[i].clone());

    let mut replay = Counter::new(opts.budget);
    let ok = match &opening {
        Some(p) => {
            openings.contains(p) && verify_exists::<A>(arena, p, rounds, &plan, &mut replay, &mut HashSet::new())?
        }
        None => {
            let mut seen = HashSet::new();
            let mut all = true;
            for p in &openings {
                all &= verify_forall::<A>(arena, p, rounds_used, &plan, &mut replay, &mut seen)?;
            }
            all
        }
    };
    if !ok {
        return Err(Error::Verification("extracted strategy does not replay to a win".into()));
    }

    let strategy = plan
        .iter()
        .map(|((p, r, m), c)| StrategyEntry {
            position: arena.show_pos(p),
            rounds_left: *r,
            forall_move: m.as_ref().map(|m| arena.show_move(m)),
            choice: match c {
                Choice::Answer(q) => arena.show_pos(q),
                Choice::Move(m) => arena.show_move(m),
            },
        })
        .collect();
    Ok(SolveResult {
        winner,
        rounds,
        rounds_used,
        opening: opening.map(|p| arena.show_pos(&p)),
        strategy,
        stats,
    })
}

fn extract_exists<A: Arena>(
    search: &mut Search<'_, A>,
    p: &A::Pos,
    r: usize,
    plan: &mut Plan<A>,
    seen: &mut HashSet<(A::Pos, usize)>,
) -> Result<()> {
    if r == 0 || !seen.insert((p.clone(), r)) {
        return Ok(());
    }
    for m in search.arena.forall_moves(p)? {
        let q = search
            .winning_answer(p, &m, r)?
            .ok_or_else(|| Error::Verification("winning position without an answer".into()))?;
        plan.insert((p.clone(), r, Some(m)), Choice::Answer(q.clone()));
        extract_exists(search, &q, r - 1, plan, seen)?;
    }
    Ok(())
}

fn extract_forall<A: Arena>(
    search: &mut Search<'_, A>,
    p: &A::Pos,
    r: usize,
    plan: &mut Plan<A>,
    seen: &mut HashSet<(A::Pos, usize)>,
) -> Result<()> {
    if !seen.insert((p.clone(), r)) {
        return Ok(());
    }
    let m = search
        .winning_forall_move(p, r)?
        .ok_or_else(|| Error::Verification("losing position without a refutation".into()))?;
    for q in search.responses(p, &m)? {
        extract_forall(search, &q, r - 1, plan, seen)?;
    }
    plan.insert((p.clone(), r, None), Choice::Move(m));
    Ok(())
}

/// Every `∀` move has a recorded, legal answer, down to the last round.
fn verify_exists<A: Arena>(
    arena: &A,
    p: &A::Pos,
    r: usize,
    plan: &Plan<A>,
    counter: &mut Counter,
    seen: &mut HashSet<(A::Pos, usize)>,
) -> Result<bool> {
    if r == 0 || !seen.insert((p.clone(), r)) {
        return Ok(true);
    }
    for m in arena.forall_moves(p)? {
        let Some(Choice::Answer(q)) = plan.get(&(p.clone(), r, Some(m.clone()))) else {
            return Ok(false);
        };
        if !arena.responses(p, &m, counter)?.contains(q) || !verify_exists(arena, q, r - 1, plan, counter, seen)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The recorded `∀` move is legal and every answer to it is refuted in
/// the remaining rounds.
fn verify_forall<A: Arena>(
    arena: &A,
    p: &A::Pos,
    r: usize,
    plan: &Plan<A>,
    counter: &mut Counter,
    seen: &mut HashSet<(A::Pos, usize)>,
) -> Result<bool> {
    if r == 0 {
        return Ok(false);
    }
    if !seen.insert((p.clone(), r)) {
        return Ok(true);
    }
    let Some(Choice::Move(m)) = plan.get(&(p.clone(), r, None)) else {
        return Ok(false);
    };
    if !arena.forall_moves(p)?.contains(m) {
        return Ok(false);
    }
    for q in arena.responses(p, m, counter)? {
        if !verify_forall(arena, &q, r - 1, plan, counter, seen)? {
            return Ok(false);
        }
    }
    Ok(true)
}
