//! Atomic networks over cylindric (polyadic) and relation-algebra atom
//! structures. Nodes are always `0..nodes`.

use serde::{Deserialize, Serialize};

use crate::atomset::AtomSet;
use crate::error::{Error, Result};
use crate::bao::structure::CaAtomStructure;
use crate::ra::RaAtomStructure;

/// Labels every `dim`-tuple of nodes with an atom; tuple `t` sits at the
/// base-`nodes` number with `t[0]` most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaNetwork {
    pub dim: usize,
    pub nodes: usize,
    pub labels: Vec<u32>,
}

/// Edge labels, row-major `nodes x nodes`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RaNetwork {
    pub nodes: usize,
    pub edges: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NetworkReport {
    pub valid: bool,
    pub violation: Option<String>,
}

impl NetworkReport {
    fn from(violation: Option<String>) -> Self {
        NetworkReport {
            valid: violation.is_none(),
            violation,
        }
    }
}

pub(crate) fn tuple_code(t: &[usize], base: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * base + x)
}

pub(crate) fn code_tuple(mut code: usize, dim: usize, base: usize) -> Vec<usize> {
    let mut t = vec![0; dim];
    for p in (0..dim).rev() {
        t[p] = code % base;
        code /= base;
    }
    t
}

fn show(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl CaNetwork {
    pub fn tuple_count(&self) -> usize {
        self.nodes.pow(self.dim as u32)
    }

    pub fn label(&self, t: &[usize]) -> usize {
        self.labels[tuple_code(t, self.nodes)] as usize
    }

    /// A network read off an assignment of nodes to tuples: `label(t)` is
    /// `f(t)` for a caller-supplied map on node tuples.
    pub fn from_fn(dim: usize, nodes: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let labels = (0..nodes.pow(dim as u32))
            .map(|c| f(&code_tuple(c, dim, nodes)) as u32)
            .collect();
        CaNetwork { dim, nodes, labels }
    }

    /// The network on the nodes other than `w`, renumbered in order.
    pub fn drop_node(&self, w: usize) -> CaNetwork {
        let keep: Vec<usize> = (0..self.nodes).filter(|&v| v != w).collect();
        self.renamed_subnetwork(&keep)
    }

    /// The subnetwork on `keep`, with `keep[p]` becoming node `p`.
    pub fn renamed_subnetwork(&self, keep: &[usize]) -> CaNetwork {
        let c = keep.len();
        let total = c.pow(self.dim as u32);
        let mut labels = Vec::with_capacity(total);
        // odometer over new tuples, tracking the original code incrementally
        let mut digits = vec![0usize; self.dim];
        let weights: Vec<usize> = (0..self.dim).map(|p| self.nodes.pow((self.dim - 1 - p) as u32)).collect();
        let mut orig = keep.first().map_or(0, |&k0| k0 * weights.iter().sum::<usize>());
        for _ in 0..total {
            labels.push(self.labels[orig]);
            for p in (0..self.dim).rev() {
                orig -= keep[digits[p]] * weights[p];
                digits[p] += 1;
                if digits[p] < c {
                    orig += keep[digits[p]] * weights[p];
                    break;
                }
                digits[p] = 0;
                orig += keep[0] * weights[p];
            }
        }
        CaNetwork {
            dim: self.dim,
            nodes: c,
            labels,
        }
    }

    pub fn key(&self) -> String {
        let parts: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        format!("{}:{}", self.nodes, parts.join(","))
    }

    /// Inverse of [`CaNetwork::key`].
    pub fn from_key(dim: usize, key: &str) -> Result<CaNetwork> {
        let (nodes, labels) = parse_key(key)?;
        let net = CaNetwork { dim, nodes, labels };
        if net.labels.len() != net.tuple_count() {
            return Err(Error::InvalidStructure(format!("{} labels for {} tuples", net.labels.len(), net.tuple_count())));
        }
        Ok(net)
    }
}

impl RaNetwork {
    pub fn edge(&self, x: usize, y: usize) -> usize {
        self.edges[x * self.nodes + y] as usize
    }

    pub fn renamed_subnetwork(&self, keep: &[usize]) -> RaNetwork {
        let c = keep.len();
        let edges = (0..c * c).map(|xy| self.edges[keep[xy / c] * self.nodes + keep[xy % c]]).collect();
        RaNetwork { nodes: c, edges }
    }

    pub fn drop_node(&self, w: usize) -> RaNetwork {
        let keep: Vec<usize> = (0..self.nodes).filter(|&v| v != w).collect();
        self.renamed_subnetwork(&keep)
    }

    pub fn key(&self) -> String {
        let parts: Vec<String> = self.edges.iter().map(|l| l.to_string()).collect();
        format!("{}:{}", self.nodes, parts.join(","))
    }

    /// Inverse of [`RaNetwork::key`].
    pub fn from_key(key: &str) -> Result<RaNetwork> {
        let (nodes, edges) = parse_key(key)?;
        if edges.len() != nodes * nodes {
            return Err(Error::InvalidStructure(format!("{} edges for {nodes} nodes", edges.len())));
        }
        Ok(RaNetwork { nodes, edges })
    }
}

fn parse_key(key: &str) -> Result<(usize, Vec<u32>)> {
    let bad = || Error::InvalidStructure(format!("not a network key: {key:?}"));
    let (nodes, rest) = key.split_once(':').ok_or_else(bad)?;
    let nodes = nodes.parse().map_err(|_| bad())?;
    let labels = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split(',').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    Ok((nodes, labels))
}

/// Checks the diagonal, cylindrifier and (when present) transposition
/// bullets, reporting the first violation.
pub fn validate_network(s: &CaAtomStructure, net: &CaNetwork) -> NetworkReport {
    NetworkReport::from(ca_defect(s, net))
}

fn ca_defect(s: &CaAtomStructure, net: &CaNetwork) -> Option<String> {
    let n = s.dim();
    if net.dim != n {
        return Some(format!("network dimension {} differs from structure dimension {n}", net.dim));
    }
    if net.labels.len() != net.tuple_count() {
        return Some(format!("{} labels for {} tuples", net.labels.len(), net.tuple_count()));
    }
    if let Some(&l) = net.labels.iter().find(|&&l| l as usize >= s.atom_count()) {
        return Some(format!("label {l} is not an atom"));
    }
    for code in 0..net.tuple_count() {
        let t = code_tuple(code, n, net.nodes);
        let a = net.labels[code] as usize;
        for i in 0..n {
            for j in i + 1..n {
                if t[i] == t[j] && !s.diag_set(i, j).contains(a) {
                    return Some(format!("N{} = {} is not below d{i}{j}", show(&t), s.label(a)));
                }
            }
        }
        for i in 0..n {
            for d in 0..net.nodes {
                let mut u = t.clone();
                u[i] = d;
                let b = net.label(&u);
                if !s.cyl_relation(i).related(b, a) {
                    return Some(format!(
                        "N{} = {} is not below c{i} N{} = c{i} {}",
                        show(&u),
                        s.label(b),
                        show(&t),
                        s.label(a)
                    ));
                }
            }
        }
        if s.has_transpositions() {
            for i in 0..n {
                for j in i + 1..n {
                    let mut u = t.clone();
                    u.swap(i, j);
                    let p = s.transposition(i, j).expect("polyadic")[a];
                    if net.label(&u) != p {
                        return Some(format!(
                            "N{} = {} differs from s[{i},{j}] N{} = {}",
                            show(&u),
                            s.label(net.label(&u)),
                            show(&t),
                            s.label(p)
                        ));
                    }
                }
            }
        }
    }
    None
}

pub fn validate_ra_network(ra: &RaAtomStructure, net: &RaNetwork) -> NetworkReport {
    NetworkReport::from(ra_defect(ra, net))
}

fn ra_defect(ra: &RaAtomStructure, net: &RaNetwork) -> Option<String> {
    let c = net.nodes;
    if net.edges.len() != c * c {
        return Some(format!("{} edge labels for {c} nodes", net.edges.len()));
    }
    if let Some(&l) = net.edges.iter().find(|&&l| l as usize >= ra.atom_count()) {
        return Some(format!("label {l} is not an atom"));
    }
    for x in 0..c {
        if !ra.identity_set().contains(net.edge(x, x)) {
            return Some(format!("N({x},{x}) = {} is not an identity atom", ra.label(net.edge(x, x))));
        }
        for y in 0..c {
            if net.edge(y, x) != ra.converse_of(net.edge(x, y)) {
                return Some(format!("N({y},{x}) is not the converse of N({x},{y})"));
            }
            for z in 0..c {
                let (a, b, d) = (net.edge(x, y), net.edge(x, z), net.edge(z, y));
                if !ra.is_consistent(a, b, d) {
                    return Some(format!(
                        "triangle ({x},{y},{z}): {} is not below {};{}",
                        ra.label(a),
                        ra.label(b),
                        ra.label(d)
                    ));
                }
            }
        }
    }
    None
}

/// Per-structure lookup tables for [`Candidates::at`].
pub(crate) struct Candidates<'a> {
    s: &'a CaAtomStructure,
    /// `both[i][b]`: atoms `a` with `a T_i b` and `b T_i a`.
    both: Vec<Vec<AtomSet>>,
    /// Atoms that are `T_i`-reflexive for every `i`.
    reflexive: AtomSet,
}

impl<'a> Candidates<'a> {
    pub(crate) fn new(s: &'a CaAtomStructure) -> Self {
        let n = s.atom_count();
        let both = (0..s.dim())
            .map(|i| {
                let r = s.cyl_relation(i);
                (0..n)
                    .map(|b| {
                        AtomSet::from_indices(
                            n,
                            r.predecessors(b).iter().map(|&a| a as usize).filter(|&a| r.related(b, a)),
                        )
                    })
                    .collect()
            })
            .collect();
        let reflexive = AtomSet::from_indices(n, (0..n).filter(|&a| (0..s.dim()).all(|i| s.cyl_relation(i).related(a, a))));
        Candidates { s, both, reflexive }
    }

    /// Atoms allowed at a tuple given every already-labelled tuple: diagonal
    /// sets, two-way cylindrifier relations with one-coordinate variants, and
    /// transposition images.
    pub(crate) fn at(&self, nodes: usize, labels: &[Option<u32>], t: &[usize]) -> AtomSet {
        let s = self.s;
        let n = s.dim();
        let mut cand = self.reflexive.clone();
        for i in 0..n {
            for j in i + 1..n {
                if t[i] == t[j] {
                    cand.intersect_with(s.diag_set(i, j));
                }
            }
        }
        let code = tuple_code(t, nodes);
        for i in 0..n {
            let w = nodes.pow((n - 1 - i) as u32);
            let base = code - t[i] * w;
            for d in (0..nodes).filter(|&d| d != t[i]) {
                if let Some(b) = labels[base + d * w] {
                    cand.intersect_with(&self.both[i][b as usize]);
                }
            }
        }
        if s.has_transpositions() {
            for i in 0..n {
                for j in i + 1..n {
                    let mut v = t.to_vec();
                    v.swap(i, j);
                    let p = s.transposition(i, j).expect("polyadic");
                    if v.as_slice() == t {
                        cand = AtomSet::from_indices(s.atom_count(), cand.iter().filter(|&a| p[a] == a));
                    } else if let Some(b) = labels[tuple_code(&v, nodes)] {
                        let img = p[b as usize];
                        let keep = cand.contains(img);
                        cand = AtomSet::empty(s.atom_count());
                        if keep {
                            cand.insert(img);
                        }
                    }
                }
            }
        }
        cand
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::set_algebra::{full_set_algebra, index_of};

    /// The network of an assignment of nodes to points of the base.
    fn semantic(dim: usize, g: &[usize]) -> CaNetwork {
        CaNetwork::from_fn(dim, g.len(), |t| {
            let pts: Vec<usize> = t.iter().map(|&v| g[v]).collect();
            index_of(&pts, 2)
        })
    }

    #[test]
    fn keys_round_trip() {
        let net = semantic(3, &[0, 1, 1]);
        assert_eq!(CaNetwork::from_key(3, &net.key()).unwrap(), net);
        assert!(CaNetwork::from_key(3, "2:0,1").is_err());
        let ra = RaNetwork { nodes: 2, edges: vec![0, 1, 2, 0] };
        assert_eq!(RaNetwork::from_key(&ra.key()).unwrap(), ra);
    }

    #[test]
    fn single_node() {
        let s = full_set_algebra(3, 2).unwrap();
        let net = CaNetwork {
            dim: 3,
            nodes: 1,
            labels: vec![index_of(&[1, 1, 1], 2) as u32],
        };
        assert!(validate_network(&s, &net).valid);
    }

    #[test]
    fn semantic_networks_are_valid() {
        let s = full_set_algebra(3, 2).unwrap();
        for g in [vec![0, 1, 0], vec![1, 1, 0, 0], vec![0, 1]] {
            let r = validate_network(&s, &semantic(3, &g));
            assert!(r.valid, "{g:?}: {r:?}");
        }
    }

    #[test]
    fn flipped_label_is_reported() {
        let s = full_set_algebra(3, 2).unwrap().without_transpositions();
        let mut net = semantic(3, &[0, 1, 0]);
        let code = tuple_code(&[0, 1, 2], 3);
        // (0,1,0) -> (0,0,0) moves coordinate 1 of a tuple whose node 1 is fixed elsewhere
        net.labels[code] = index_of(&[0, 0, 0], 2) as u32;
        let r = validate_network(&s, &net);
        assert!(!r.valid);
        assert!(r.violation.unwrap().contains("(0,1,2)"));
    }

    #[test]
    fn ra_networks() {
        let z = crate::ra::cyclic_group_ra(4).unwrap();
        // nodes 0, 1, 2 at group values 0, 1, 3
        let vals = [0usize, 1, 3];
        let edges = (0..9).map(|xy| ((vals[xy % 3] + 4 - vals[xy / 3]) % 4) as u32).collect();
        let mut net = RaNetwork { nodes: 3, edges };
        assert!(validate_ra_network(&z, &net).valid);
        net.edges[1] = 2;
        assert!(!validate_ra_network(&z, &net).valid);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn renaming_reads_the_original_labels(
            dim in 1usize..4,
            nodes in 1usize..5,
            seed in any::<u64>(),
            keep in proptest::collection::vec(0usize..5, 1..5),
        ) {
            let keep: Vec<usize> = keep.into_iter().map(|k| k % nodes).collect();
            let net = CaNetwork::from_fn(dim, nodes, |t| {
                t.iter().fold(seed as usize % 97, |acc, &v| acc.wrapping_mul(31).wrapping_add(v)) % 11
            });
            let expect = CaNetwork::from_fn(dim, keep.len(), |t| {
                let orig: Vec<usize> = t.iter().map(|&p| keep[p]).collect();
                net.label(&orig)
            });
            prop_assert_eq!(net.renamed_subnetwork(&keep), expect);
        }
    }
}
