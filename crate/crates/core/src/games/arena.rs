//! Game positions and moves for the cylindric games `G` and `F^m` and the
//! relation-algebra triangle game.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::bao::structure::CaAtomStructure;
use crate::error::{Error, Result};
use crate::games::network::{code_tuple, tuple_code, CaNetwork, Candidates, RaNetwork};
use crate::ra::RaAtomStructure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Unbounded nodes; every demand gets a fresh node.
    G,
    /// At most `pebbles` nodes; `∀` may reuse a node.
    F,
    /// Relation-algebra triangle moves on at most `pebbles` nodes.
    RaTriangle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSpec {
    pub variant: Variant,
    pub rounds: usize,
    /// Node budget for `F` and `RaTriangle`; ignored by `G`.
    pub pebbles: usize,
}

pub const MAX_ROUNDS: usize = 6;
pub const MAX_PEBBLES: usize = 5;
/// Largest network `G` may grow to.
pub const MAX_G_NODES: usize = 8;

impl GameSpec {
    pub fn g(rounds: usize) -> Self {
        GameSpec {
            variant: Variant::G,
            rounds,
            pebbles: 0,
        }
    }

    pub fn f(pebbles: usize, rounds: usize) -> Self {
        GameSpec {
            variant: Variant::F,
            rounds,
            pebbles,
        }
    }

    pub fn ra_triangle(pebbles: usize, rounds: usize) -> Self {
        GameSpec {
            variant: Variant::RaTriangle,
            rounds,
            pebbles,
        }
    }

    pub(crate) fn validate(&self, dim: Option<usize>) -> Result<()> {
        if self.rounds > MAX_ROUNDS {
            return Err(Error::Parameter(format!("at most {MAX_ROUNDS} rounds, got {}", self.rounds)));
        }
        match (self.variant, dim) {
            (Variant::G, Some(n)) => {
                if n + self.rounds > MAX_G_NODES {
                    return Err(Error::Parameter(format!(
                        "G on dimension {n} for {} rounds grows past {MAX_G_NODES} nodes",
                        self.rounds
                    )));
                }
            }
            (Variant::F, Some(n)) => {
                if self.pebbles <= n || self.pebbles > MAX_PEBBLES {
                    return Err(Error::Parameter(format!(
                        "F needs dimension < pebbles <= {MAX_PEBBLES}; got {} pebbles at dimension {n}",
                        self.pebbles
                    )));
                }
            }
            (Variant::RaTriangle, None) => {
                if !(3..=MAX_PEBBLES).contains(&self.pebbles) {
                    return Err(Error::Parameter(format!(
                        "triangle game needs 3 <= pebbles <= {MAX_PEBBLES}, got {}",
                        self.pebbles
                    )));
                }
            }
            _ => return Err(Error::Parameter("game variant does not match the structure kind".into())),
        }
        Ok(())
    }
}

/// Counts generated positions against a cap.
#[derive(Clone, Debug)]
pub struct Counter {
    pub generated: u64,
    pub cap: u64,
}

impl Counter {
    pub fn new(cap: u64) -> Self {
        Counter { generated: 0, cap }
    }

    pub fn tick(&mut self) -> Result<()> {
        self.generated += 1;
        if self.generated > self.cap {
            return Err(Error::Budget {
                reason: "game search".into(),
                estimate: self.generated as u128,
                budget: self.cap as u128,
            });
        }
        Ok(())
    }
}

pub trait Arena: Sync {
    type Pos: Clone + Ord + Hash + Debug + Send + Sync;
    type Move: Clone + Ord + Hash + Debug + Send + Sync;

    /// `∃`'s legal opening networks, canonical, sorted and distinct.
    fn openings(&self, counter: &mut Counter) -> Result<Vec<Self::Pos>>;
    /// `∀`'s moves, sorted.
    fn forall_moves(&self, p: &Self::Pos) -> Result<Vec<Self::Move>>;
    /// `∃`'s legal answers, canonical, sorted and distinct.
    fn responses(&self, p: &Self::Pos, m: &Self::Move, counter: &mut Counter) -> Result<Vec<Self::Pos>>;
    fn canonical(&self, p: &Self::Pos) -> Self::Pos;
    fn show_pos(&self, p: &Self::Pos) -> String;
    fn show_move(&self, m: &Self::Move) -> String;
    /// Rounds of the truncated game.
    fn rounds(&self) -> usize;
}

/// All permutations of `0..n` that list nodes by increasing invariant
/// (ties broken every way).
fn ordered_perms(inv: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let n = inv.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match groups.last_mut() {
            Some(g) if inv[g[0]] == inv[v] => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let mut out = vec![Vec::new()];
    for g in groups {
        let perms = permutations(&g);
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for prefix in &out {
            for p in &perms {
                let mut q: Vec<usize> = prefix.clone();
                q.extend(p);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Restricted growth strings of length `len` using exactly `c` values.
fn growth_strings(len: usize, c: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, len: usize, c: usize, out: &mut Vec<Vec<usize>>) {
        let used = prefix.iter().max().map_or(0, |m| m + 1);
        if prefix.len() == len {
            if used == c {
                out.push(prefix.clone());
            }
            return;
        }
        for v in 0..=used.min(c - 1) {
            prefix.push(v);
            go(prefix, len, c, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), len, c, &mut out);
    out
}

/// Cylindric games over a (polyadic) atom structure.
pub struct CaArena<'a> {
    pub s: &'a CaAtomStructure,
    pub spec: GameSpec,
    pub initial_atom: usize,
    /// Whether positions are reduced to canonical form.
    pub canonicalize: bool,
    tables: Candidates<'a>,
}

/// `∀` demands an atom `b` below `c_l N(t)` at `t[l -> k]`; `others` is `t`
/// with position `l` removed. `reuse` names the node `k` when it is not fresh.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CaMove {
    pub others: Vec<usize>,
    pub l: usize,
    pub b: usize,
    pub reuse: Option<usize>,
}

impl<'a> CaArena<'a> {
    pub fn new(s: &'a CaAtomStructure, spec: GameSpec, initial_atom: usize) -> Result<Self> {
        spec.validate(Some(s.dim()))?;
        s.check_atom(initial_atom)?;
        Ok(CaArena {
            s,
            spec,
            initial_atom,
            canonicalize: true,
            tables: Candidates::new(s),
        })
    }

    /// Every completion of `fixed` (a partial labelling on `nodes` nodes);
    /// the labels at `check` are tested against the other fixed ones.
    fn complete(
        &self,
        nodes: usize,
        fixed: Vec<Option<u32>>,
        check: &[usize],
        counter: &mut Counter,
    ) -> Result<Vec<CaNetwork>> {
        let n = self.s.dim();
        let open: Vec<usize> = (0..fixed.len()).filter(|&c| fixed[c].is_none()).collect();
        let mut out = Vec::new();
        let mut labels = fixed;
        for &c in check {
            if let Some(a) = labels[c] {
                labels[c] = None;
                let ok = self.tables.at(nodes, &labels, &code_tuple(c, n, nodes)).contains(a as usize);
                labels[c] = Some(a);
                if !ok {
                    return Ok(out);
                }
            }
        }
        self.fill(0, &open, nodes, &mut labels, &mut out, counter)?;
        Ok(out)
    }

    fn fill(
        &self,
        k: usize,
        open: &[usize],
        nodes: usize,
        labels: &mut Vec<Option<u32>>,
        out: &mut Vec<CaNetwork>,
        counter: &mut Counter,
    ) -> Result<()> {
        if k == open.len() {
            counter.tick()?;
            out.push(CaNetwork {
                dim: self.s.dim(),
                nodes,
                labels: labels.iter().map(|l| l.expect("filled")).collect(),
            });
            return Ok(());
        }
        let c = open[k];
        let t = code_tuple(c, self.s.dim(), nodes);
        for a in self.tables.at(nodes, labels, &t).iter() {
            labels[c] = Some(a as u32);
            self.fill(k + 1, open, nodes, labels, out, counter)?;
        }
        labels[c] = None;
        Ok(())
    }

    fn finish(&self, nets: Vec<CaNetwork>) -> Vec<CaNetwork> {
        let set: BTreeSet<CaNetwork> = nets.into_iter().map(|p| self.canonical(&p)).collect();
        set.into_iter().collect()
    }

    /// The demanded tuple, with the new node in position `l`.
    pub fn demanded(&self, m: &CaMove, k: usize) -> Vec<usize> {
        let mut t = m.others.clone();
        t.insert(m.l, k);
        t
    }
}

impl Arena for CaArena<'_> {
    type Pos = CaNetwork;
    type Move = CaMove;

    fn openings(&self, counter: &mut Counter) -> Result<Vec<CaNetwork>> {
        let n = self.s.dim();
        let mut nets = Vec::new();
        for c in 1..=n {
            for d in growth_strings(n, c) {
                let mut fixed = vec![None; c.pow(n as u32)];
                let code = tuple_code(&d, c);
                fixed[code] = Some(self.initial_atom as u32);
                nets.extend(self.complete(c, fixed, &[code], counter)?);
            }
        }
        Ok(self.finish(nets))
    }

    fn forall_moves(&self, p: &CaNetwork) -> Result<Vec<CaMove>> {
        let n = self.s.dim();
        let c = p.nodes;
        let fresh = match self.spec.variant {
            Variant::G => true,
            _ => c < self.spec.pebbles,
        };
        let mut out = Vec::new();
        for code in 0..c.pow(n as u32 - 1) {
            let others = code_tuple(code, n - 1, c);
            for l in 0..n {
                let mut t = others.clone();
                t.insert(l, 0);
                let base = p.label(&t);
                let r = self.s.cyl_relation(l);
                for d in 1..c {
                    t[l] = d;
                    let alt = p.label(&t);
                    let same = r.predecessors(base).len() == r.predecessors(alt).len()
                        && r.predecessors(base).iter().all(|&b| r.related(b as usize, alt));
                    if !same {
                        return Err(Error::Verification(format!(
                            "c{l} of a network tuple depends on the representative at node {d}"
                        )));
                    }
                }
                for &b in r.predecessors(base) {
                    if fresh {
                        out.push(CaMove {
                            others: others.clone(),
                            l,
                            b: b as usize,
                            reuse: None,
                        });
                    }
                    if self.spec.variant == Variant::F {
                        for w in (0..c).filter(|w| !others.contains(w)) {
                            out.push(CaMove {
                                others: others.clone(),
                                l,
                                b: b as usize,
                                reuse: Some(w),
                            });
                        }
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn responses(&self, p: &CaNetwork, m: &CaMove, counter: &mut Counter) -> Result<Vec<CaNetwork>> {
        let n = self.s.dim();
        let (base, others) = match m.reuse {
            None => (p.clone(), m.others.clone()),
            Some(w) => (
                p.drop_node(w),
                m.others.iter().map(|&v| if v > w { v - 1 } else { v }).collect(),
            ),
        };
        let c = base.nodes + 1;
        let k = base.nodes;
        let mut fixed = vec![None; c.pow(n as u32)];
        for code in 0..fixed.len() {
            let t = code_tuple(code, n, c);
            if !t.contains(&k) {
                fixed[code] = Some(base.label(&t) as u32);
            }
        }
        let mut t = others;
        t.insert(m.l, k);
        let code = tuple_code(&t, c);
        fixed[code] = Some(m.b as u32);
        let nets = self.complete(c, fixed, &[code], counter)?;
        Ok(self.finish(nets))
    }

    fn canonical(&self, p: &CaNetwork) -> CaNetwork {
        if !self.canonicalize || p.nodes <= 1 {
            return p.clone();
        }
        let c = p.nodes;
        let inv: Vec<Vec<u32>> = (0..c)
            .map(|v| {
                let diag = vec![v; p.dim];
                let mut row: Vec<u32> = (0..c)
                    .map(|w| {
                        let mut t = diag.clone();
                        t[0] = w;
                        p.label(&t) as u32
                    })
                    .collect();
                row.sort_unstable();
                row.insert(0, p.label(&diag) as u32);
                row
            })
            .collect();
        ordered_perms(&inv)
            .into_iter()
            .map(|order| p.renamed_subnetwork(&order))
            .min()
            .expect("at least one ordering")
    }

    fn rounds(&self) -> usize {
        self.spec.rounds
    }

    fn show_pos(&self, p: &CaNetwork) -> String {
        p.key()
    }

    fn show_move(&self, m: &CaMove) -> String {
        let others: Vec<String> = m.others.iter().map(|v| v.to_string()).collect();
        let target = match m.reuse {
            None => "fresh".to_string(),
            Some(w) => format!("reuse {w}"),
        };
        format!(
            "c{} at ({}) position {} demands {} on {target}",
            m.l,
            others.join(","),
            m.l,
            self.s.label(m.b)
        )
    }
}

/// The triangle game over a relation-algebra atom structure.
pub struct RaArena<'a> {
    pub ra: &'a RaAtomStructure,
    pub spec: GameSpec,
    pub initial_atom: usize,
    pub canonicalize: bool,
}

/// `∀` picks an edge `(x, y)` and atoms `a, b` with `N(x,y) <= a;b` and
/// demands a node `z` with `N(x,z) = a`, `N(z,y) = b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RaMove {
    pub x: usize,
    pub y: usize,
    pub a: usize,
    pub b: usize,
    pub reuse: Option<usize>,
}

impl<'a> RaArena<'a> {
    pub fn new(ra: &'a RaAtomStructure, spec: GameSpec, initial_atom: usize) -> Result<Self> {
        spec.validate(None)?;
        if initial_atom >= ra.atom_count() {
            return Err(Error::IndexOutOfRange {
                index: initial_atom,
                bound: ra.atom_count(),
            });
        }
        Ok(RaArena {
            ra,
            spec,
            initial_atom,
            canonicalize: true,
        })
    }

    fn complete(&self, nodes: usize, fixed: Vec<Option<u32>>, counter: &mut Counter) -> Result<Vec<RaNetwork>> {
        let mut edges = fixed;
        // converse closure of the fixed labels
        for x in 0..nodes {
            for y in 0..nodes {
                if let Some(a) = edges[x * nodes + y] {
                    let conv = self.ra.converse_of(a as usize) as u32;
                    match edges[y * nodes + x] {
                        Some(b) if b != conv => return Ok(Vec::new()),
                        _ => edges[y * nodes + x] = Some(conv),
                    }
                }
            }
        }
        let open: Vec<(usize, usize)> = (0..nodes)
            .flat_map(|x| (x..nodes).map(move |y| (x, y)))
            .filter(|&(x, y)| edges[x * nodes + y].is_none())
            .collect();
        let mut out = Vec::new();
        if !self.consistent_so_far(nodes, &edges) {
            return Ok(out);
        }
        self.fill(0, &open, nodes, &mut edges, &mut out, counter)?;
        Ok(out)
    }

    fn consistent_so_far(&self, c: usize, e: &[Option<u32>]) -> bool {
        let id = self.ra.identity_set();
        for x in 0..c {
            if let Some(a) = e[x * c + x] {
                if !id.contains(a as usize) {
                    return false;
                }
            }
            for y in 0..c {
                for z in 0..c {
                    if let (Some(a), Some(b), Some(d)) = (e[x * c + y], e[x * c + z], e[z * c + y]) {
                        if !self.ra.is_consistent(a as usize, b as usize, d as usize) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn fill(
        &self,
        k: usize,
        open: &[(usize, usize)],
        c: usize,
        e: &mut Vec<Option<u32>>,
        out: &mut Vec<RaNetwork>,
        counter: &mut Counter,
    ) -> Result<()> {
        if k == open.len() {
            counter.tick()?;
            out.push(RaNetwork {
                nodes: c,
                edges: e.iter().map(|l| l.expect("filled")).collect(),
            });
            return Ok(());
        }
        let (x, y) = open[k];
        for a in 0..self.ra.atom_count() {
            if x == y && !self.ra.identity_set().contains(a) {
                continue;
            }
            e[x * c + y] = Some(a as u32);
            e[y * c + x] = Some(self.ra.converse_of(a) as u32);
            if x == y && e[x * c + y] != Some(a as u32) {
                continue;
            }
            if self.consistent_so_far(c, e) {
                self.fill(k + 1, open, c, e, out, counter)?;
            }
        }
        e[x * c + y] = None;
        e[y * c + x] = None;
        Ok(())
    }

    fn finish(&self, nets: Vec<RaNetwork>) -> Vec<RaNetwork> {
        let set: BTreeSet<RaNetwork> = nets.into_iter().map(|p| self.canonical(&p)).collect();
        set.into_iter().collect()
    }
}

impl Arena for RaArena<'_> {
    type Pos = RaNetwork;
    type Move = RaMove;

    fn openings(&self, counter: &mut Counter) -> Result<Vec<RaNetwork>> {
        let a = self.initial_atom as u32;
        let mut nets = Vec::new();
        if self.ra.identity_set().contains(self.initial_atom) {
            nets.extend(self.complete(1, vec![Some(a)], counter)?);
        }
        nets.extend(self.complete(2, vec![None, Some(a), None, None], counter)?);
        Ok(self.finish(nets))
    }

    fn forall_moves(&self, p: &RaNetwork) -> Result<Vec<RaMove>> {
        let c = p.nodes;
        let fresh = c < self.spec.pebbles;
        let mut out = Vec::new();
        for x in 0..c {
            for y in 0..c {
                let e = p.edge(x, y);
                for a in 0..self.ra.atom_count() {
                    for b in 0..self.ra.atom_count() {
                        if !self.ra.is_consistent(e, a, b) {
                            continue;
                        }
                        if fresh {
                            out.push(RaMove { x, y, a, b, reuse: None });
                        }
                        for w in (0..c).filter(|&w| w != x && w != y) {
                            out.push(RaMove {
                                x,
                                y,
                                a,
                                b,
                                reuse: Some(w),
                            });
                        }
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn responses(&self, p: &RaNetwork, m: &RaMove, counter: &mut Counter) -> Result<Vec<RaNetwork>> {
        let (base, x, y) = match m.reuse {
            None => (p.clone(), m.x, m.y),
            Some(w) => {
                let shift = |v: usize| if v > w { v - 1 } else { v };
                (p.drop_node(w), shift(m.x), shift(m.y))
            }
        };
        let c = base.nodes + 1;
        let z = base.nodes;
        let mut fixed = vec![None; c * c];
        for u in 0..base.nodes {
            for v in 0..base.nodes {
                fixed[u * c + v] = Some(base.edge(u, v) as u32);
            }
        }
        fixed[x * c + z] = Some(m.a as u32);
        // when x = y the converse closure in `complete` reconciles both labels
        fixed[z * c + y] = Some(m.b as u32);
        let nets = self.complete(c, fixed, counter)?;
        Ok(self.finish(nets))
    }

    fn canonical(&self, p: &RaNetwork) -> RaNetwork {
        if !self.canonicalize || p.nodes <= 1 {
            return p.clone();
        }
        let c = p.nodes;
        let inv: Vec<Vec<u32>> = (0..c)
            .map(|v| {
                let mut row: Vec<u32> = (0..c).map(|w| p.edge(v, w) as u32).collect();
                row.sort_unstable();
                row.insert(0, p.edge(v, v) as u32);
                row
            })
            .collect();
        ordered_perms(&inv)
            .into_iter()
            .map(|order| p.renamed_subnetwork(&order))
            .min()
            .expect("at least one ordering")
    }

    fn rounds(&self) -> usize {
        self.spec.rounds
    }

    fn show_pos(&self, p: &RaNetwork) -> String {
        p.key()
    }

    fn show_move(&self, m: &RaMove) -> String {
        let target = match m.reuse {
            None => "fresh z".to_string(),
            Some(w) => format!("z = {w}"),
        };
        format!(
            "edge ({},{}) split as {} ; {} through {target}",
            m.x,
            m.y,
            self.ra.label(m.a),
            self.ra.label(m.b)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_string_counts() {
        // Stirling numbers S(3, c)
        assert_eq!(growth_strings(3, 1).len(), 1);
        assert_eq!(growth_strings(3, 2).len(), 3);
        assert_eq!(growth_strings(3, 3).len(), 1);
    }

    #[test]
    fn ordered_perms_respect_invariants() {
        let inv = vec![vec![2], vec![1], vec![2]];
        let ps = ordered_perms(&inv);
        assert_eq!(ps, vec![vec![1, 0, 2], vec![1, 2, 0]]);
    }
}
