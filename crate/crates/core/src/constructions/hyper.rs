//! Hypernetworks over a relation-algebra atom structure, the hyperbasis
//! property, and the polyadic atom structure a hyperbasis induces.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::atomset::AtomSet;
use crate::bao::structure::CaAtomStructure;
use crate::error::{Error, Result};
use crate::ra::RaAtomStructure;
use crate::relation::Relation;

/// Tuples over `{0..m-1}` of every length `<= n_wide` other than 2, with
/// their positions in a hyperlabel vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleSpace {
    pub m: usize,
    pub n_wide: usize,
    pub tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl TupleSpace {
    pub fn new(m: usize, n_wide: usize) -> Self {
        let mut tuples = Vec::new();
        for len in (0..=n_wide).filter(|&l| l != 2) {
            let total = m.pow(len as u32);
            for code in 0..total {
                let mut t = vec![0; len];
                let mut rest = code;
                for p in (0..len).rev() {
                    t[p] = rest % m;
                    rest /= m;
                }
                tuples.push(t);
            }
        }
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        TupleSpace {
            m,
            n_wide,
            tuples,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn position(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// Edge labels are relation-algebra atoms (row-major `m x m`); every other
/// tuple of length at most `n_wide` carries a hyperlabel below `|Λ|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HyperNetwork {
    pub m: usize,
    pub n_wide: usize,
    pub edges: Vec<usize>,
    pub hyper: Vec<u16>,
}

impl HyperNetwork {
    pub fn edge(&self, x: usize, y: usize) -> usize {
        self.edges[x * self.m + y]
    }

    /// `N o s`: the network whose label at `t` is the label of `N` at `s(t)`.
    pub fn compose_map(&self, space: &TupleSpace, s: &[usize]) -> HyperNetwork {
        let m = self.m;
        let edges = (0..m * m).map(|xy| self.edge(s[xy / m], s[xy % m])).collect();
        let hyper = space
            .tuples
            .iter()
            .map(|t| {
                let img: Vec<usize> = t.iter().map(|&p| s[p]).collect();
                self.hyper[space.position(&img).expect("same space")]
            })
            .collect();
        HyperNetwork {
            m,
            n_wide: self.n_wide,
            edges,
            hyper,
        }
    }

    /// Agreement on every tuple avoiding the points in `avoid`.
    pub fn agrees_off(&self, other: &HyperNetwork, space: &TupleSpace, avoid: &[usize]) -> bool {
        let m = self.m;
        let free = |p: usize| !avoid.contains(&p);
        (0..m * m).all(|xy| !(free(xy / m) && free(xy % m)) || self.edges[xy] == other.edges[xy])
            && space
                .tuples
                .iter()
                .enumerate()
                .all(|(i, t)| !t.iter().all(|&p| free(p)) || self.hyper[i] == other.hyper[i])
    }

    pub fn label(&self, ra: &RaAtomStructure) -> String {
        let m = self.m;
        let mut parts = Vec::new();
        for x in 0..m {
            for y in x + 1..m {
                parts.push(ra.label(self.edge(x, y)).to_string());
            }
        }
        let hyp: Vec<String> = self.hyper.iter().map(|h| h.to_string()).collect();
        format!("[{}]<{}>", parts.join(" "), hyp.join(""))
    }
}

/// First violated network condition, if any.
pub fn network_defect(ra: &RaAtomStructure, space: &TupleSpace, n: &HyperNetwork) -> Option<String> {
    let m = n.m;
    let id = ra.identity_set();
    for x in 0..m {
        if !id.contains(n.edge(x, x)) {
            return Some(format!("N({x},{x}) is not below the identity"));
        }
    }
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                if !ra.is_consistent(n.edge(x, y), n.edge(x, z), n.edge(z, y)) {
                    return Some(format!("N({x},{y}) is not below N({x},{z});N({z},{y})"));
                }
            }
        }
    }
    // tuples equal up to identity-labelled coordinates carry equal labels
    let close = |a: usize, b: usize| id.contains(n.edge(a, b));
    for x0 in 0..m {
        for x1 in 0..m {
            for y0 in 0..m {
                for y1 in 0..m {
                    if close(x0, y0) && close(x1, y1) && n.edge(x0, x1) != n.edge(y0, y1) {
                        return Some(format!("N({x0},{x1}) != N({y0},{y1}) under identity edges"));
                    }
                }
            }
        }
    }
    for (i, s) in space.tuples.iter().enumerate() {
        for (j, t) in space.tuples.iter().enumerate().skip(i + 1) {
            if s.len() == t.len() && s.iter().zip(t).all(|(&a, &b)| close(a, b)) && n.hyper[i] != n.hyper[j] {
                return Some(format!("hyperlabels of {s:?} and {t:?} differ under identity edges"));
            }
        }
    }
    None
}

/// Upper bound on candidate labellings: `atoms^(m(m-1)/2) * |Λ|^tuples`.
pub fn hypernetwork_estimate(ra: &RaAtomStructure, m: usize, n_wide: usize, lambda: usize) -> u128 {
    let pairs = (m * (m - 1) / 2) as u32;
    let hyper = TupleSpace::new(m, n_wide).len() as u32;
    (ra.atom_count() as u128)
        .checked_pow(pairs)
        .and_then(|e| (lambda as u128).checked_pow(hyper).and_then(|h| e.checked_mul(h)))
        .unwrap_or(u128::MAX)
}

/// All hypernetworks on `m` nodes, in sorted order.
pub fn enumerate_hypernetworks(
    ra: &RaAtomStructure,
    m: usize,
    n_wide: usize,
    lambda: usize,
    budget: u128,
) -> Result<Vec<HyperNetwork>> {
    if !(2..=4).contains(&m) || n_wide > m + 1 || !(1..=3).contains(&lambda) {
        return Err(Error::Parameter(format!(
            "hypernetworks need 2 <= m <= 4, n_wide <= m + 1, 1 <= |labels| <= 3; got m={m}, n_wide={n_wide}, labels={lambda}"
        )));
    }
    let estimate = hypernetwork_estimate(ra, m, n_wide, lambda);
    if estimate > budget {
        return Err(Error::Budget {
            reason: format!("hypernetworks on {m} nodes"),
            estimate,
            budget,
        });
    }
    let space = TupleSpace::new(m, n_wide);
    let na = ra.atom_count();
    let id = ra.identity_set();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|x| (x + 1..m).map(move |y| (x, y))).collect();
    let mut edge_sets = Vec::new();
    let mut e = vec![0usize; m * m];
    let diag_atoms: Vec<usize> = id.iter().collect();
    // diagonal entries range over identity atoms, off-diagonal over all atoms
    let mut diag_choice = vec![0usize; m];
    loop {
        for x in 0..m {
            e[x * m + x] = diag_atoms[diag_choice[x]];
        }
        let mut code = vec![0usize; pairs.len()];
        loop {
            for (p, &(x, y)) in pairs.iter().enumerate() {
                e[x * m + y] = code[p];
                e[y * m + x] = ra.converse_of(code[p]);
            }
            edge_sets.push(e.clone());
            // odometer over off-diagonal choices
            let mut p = 0;
            while p < code.len() {
                code[p] += 1;
                if code[p] < na {
                    break;
                }
                code[p] = 0;
                p += 1;
            }
            if p == code.len() {
                break;
            }
        }
        let mut p = 0;
        while p < m {
            diag_choice[p] += 1;
            if diag_choice[p] < diag_atoms.len() {
                break;
            }
            diag_choice[p] = 0;
            p += 1;
        }
        if p == m {
            break;
        }
    }
    let mut out = Vec::new();
    for edges in edge_sets {
        let probe = HyperNetwork {
            m,
            n_wide,
            edges: edges.clone(),
            hyper: vec![0; space.len()],
        };
        if network_defect(ra, &space, &probe).is_some() {
            continue;
        }
        // hyperlabels are constant on classes of tuples equal up to identity edges
        let mut class = vec![usize::MAX; space.len()];
        let mut classes = 0;
        for i in 0..space.len() {
            if class[i] != usize::MAX {
                continue;
            }
            for j in i..space.len() {
                let (s, t) = (&space.tuples[i], &space.tuples[j]);
                if class[j] == usize::MAX
                    && s.len() == t.len()
                    && s.iter().zip(t).all(|(&a, &b)| id.contains(edges[a * m + b]))
                {
                    class[j] = classes;
                }
            }
            classes += 1;
        }
        let total = (lambda as u128).pow(classes as u32);
        for code in 0..total {
            let mut rest = code;
            let vals: Vec<u16> = (0..classes)
                .map(|_| {
                    let v = (rest % lambda as u128) as u16;
                    rest /= lambda as u128;
                    v
                })
                .collect();
            let n = HyperNetwork {
                m,
                n_wide,
                edges: edges.clone(),
                hyper: class.iter().map(|&c| vals[c]).collect(),
            };
            if network_defect(ra, &space, &n).is_none() {
                out.push(n);
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperbasisReport {
    pub passed: bool,
    /// `witness`, `cylindrifier`, `amalgamation` or `symmetry`.
    pub bullet: Option<&'static str>,
    pub violation: Option<String>,
}

impl HyperbasisReport {
    fn ok() -> Self {
        HyperbasisReport {
            passed: true,
            bullet: None,
            violation: None,
        }
    }

    fn fail(bullet: &'static str, violation: String) -> Self {
        HyperbasisReport {
            passed: false,
            bullet: Some(bullet),
            violation: Some(violation),
        }
    }
}

fn all_maps(m: usize) -> Vec<Vec<usize>> {
    let total = m.pow(m as u32);
    (0..total)
        .map(|mut code| {
            (0..m)
                .map(|_| {
                    let v = code % m;
                    code /= m;
                    v
                })
                .collect()
        })
        .collect()
}

/// Checks the witness, cylindrifier, amalgamation and symmetry conditions;
/// reports the first failure in that order.
pub fn is_hyperbasis(ra: &RaAtomStructure, h: &[HyperNetwork]) -> HyperbasisReport {
    let Some(first) = h.first() else {
        return HyperbasisReport::fail("witness", "empty set".into());
    };
    let (m, n_wide) = (first.m, first.n_wide);
    let space = TupleSpace::new(m, n_wide);
    if let Some(bad) = h.iter().find(|n| n.m != m || n.n_wide != n_wide) {
        return HyperbasisReport::fail("witness", format!("mixed shapes: {}", bad.label(ra)));
    }
    if let Some(n) = h.iter().find(|n| network_defect(ra, &space, n).is_some()) {
        return HyperbasisReport::fail("witness", format!("{} is not a hypernetwork", n.label(ra)));
    }
    let members: HashSet<&HyperNetwork> = h.iter().collect();

    for a in 0..ra.atom_count() {
        if !h.iter().any(|n| n.edge(0, 1) == a) {
            return HyperbasisReport::fail("witness", format!("no network with N(0,1) = {}", ra.label(a)));
        }
    }

    for n in h {
        for x in 0..m {
            for y in 0..m {
                for z in (0..m).filter(|&z| z != x && z != y) {
                    let target = n.edge(x, y);
                    for a in 0..ra.atom_count() {
                        for b in 0..ra.atom_count() {
                            if !ra.is_consistent(target, a, b) {
                                continue;
                            }
                            let found = h.iter().any(|mm| {
                                mm.edge(x, z) == a && mm.edge(z, y) == b && mm.agrees_off(n, &space, &[z])
                            });
                            if !found {
                                return HyperbasisReport::fail(
                                    "cylindrifier",
                                    format!(
                                        "{} at x={x}, y={y}, z={z} has no variant with N({x},{z})={} and N({z},{y})={}",
                                        n.label(ra),
                                        ra.label(a),
                                        ra.label(b)
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    for (i, p) in h.iter().enumerate() {
        for q in &h[i..] {
            for x in 0..m {
                for y in 0..m {
                    if !p.agrees_off(q, &space, &[x, y]) {
                        continue;
                    }
                    for (mm, nn) in [(p, q), (q, p)] {
                        let found = h
                            .iter()
                            .any(|l| mm.agrees_off(l, &space, &[x]) && l.agrees_off(nn, &space, &[y]));
                        if !found {
                            return HyperbasisReport::fail(
                                "amalgamation",
                                format!("{} and {} do not amalgamate over ({x},{y})", mm.label(ra), nn.label(ra)),
                            );
                        }
                    }
                }
            }
        }
    }

    let maps = all_maps(m);
    for n in h {
        for s in &maps {
            let img = n.compose_map(&space, s);
            if !members.contains(&img) {
                return HyperbasisReport::fail("symmetry", format!("{} composed with {s:?} is missing", n.label(ra)));
            }
        }
    }
    HyperbasisReport::ok()
}

/// The polyadic atom structure of a hyperbasis: `T_i` is agreement off `i`,
/// `d_ij` holds the networks with an identity edge at `(i, j)`, and `P_ij`
/// composes with the transposition.
pub fn ca_over_hyperbasis(ra: &RaAtomStructure, h: &[HyperNetwork]) -> Result<CaAtomStructure> {
    let report = is_hyperbasis(ra, h);
    if !report.passed {
        return Err(Error::NotHyperbasis(format!(
            "{} condition: {}",
            report.bullet.unwrap_or("?"),
            report.violation.unwrap_or_default()
        )));
    }
    let m = h[0].m;
    let space = TupleSpace::new(m, h[0].n_wide);
    let count = h.len();
    let id = ra.identity_set();
    let labels = h.iter().map(|n| n.label(ra)).collect();
    let cyl = (0..m)
        .map(|i| {
            Relation::from_key(count, |a| {
                let n = &h[a];
                let edges: Vec<usize> = (0..m * m)
                    .filter(|xy| xy / m != i && xy % m != i)
                    .map(|xy| n.edges[xy])
                    .collect();
                let hyper: Vec<u16> = space
                    .tuples
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| !t.contains(&i))
                    .map(|(k, _)| n.hyper[k])
                    .collect();
                (edges, hyper)
            })
        })
        .collect();
    let diag = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| AtomSet::from_indices(count, (0..count).filter(|&a| id.contains(h[a].edge(i, j)))))
                .collect()
        })
        .collect();
    let index: HashMap<&HyperNetwork, usize> = h.iter().enumerate().map(|(i, n)| (n, i)).collect();
    CaAtomStructure::new(m, labels, cyl, diag)?.with_transposition_fn(|i, j, a| {
        let mut s: Vec<usize> = (0..m).collect();
        s.swap(i, j);
        index[&h[a].compose_map(&space, &s)]
    })
}

/// `a -> {N : N(0,1) <= a}` on atoms.
pub fn hyperbasis_embedding(ra: &RaAtomStructure, h: &[HyperNetwork]) -> Vec<AtomSet> {
    (0..ra.atom_count())
        .map(|a| AtomSet::from_indices(h.len(), (0..h.len()).filter(|&k| h[k].edge(0, 1) == a)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::check_ca_frame;
    use crate::ra::cyclic_group_ra;

    #[test]
    fn group_hyperbasis() {
        let z = cyclic_group_ra(4).unwrap();
        let h = enumerate_hypernetworks(&z, 3, 3, 1, 1 << 30).unwrap();
        // N(0,1) and N(1,2) determine the rest
        assert_eq!(h.len(), 16);
        let r = is_hyperbasis(&z, &h);
        assert!(r.passed, "{r:?}");
        let ca = ca_over_hyperbasis(&z, &h).unwrap();
        assert!(check_ca_frame(&ca).all_passed());
        assert!(ca.diag_set(1, 1).is_full());
        assert!(hyperbasis_embedding(&z, &h).iter().all(|s| !s.is_empty()));
    }

    #[test]
    fn tuple_space_excludes_edges() {
        let space = TupleSpace::new(3, 3);
        assert_eq!(space.len(), 1 + 3 + 27);
        assert!(space.tuples.iter().all(|t| t.len() != 2));
    }

    #[test]
    fn deleting_a_variant_breaks_a_bullet() {
        let z = cyclic_group_ra(4).unwrap();
        let mut h = enumerate_hypernetworks(&z, 3, 3, 1, 1 << 30).unwrap();
        h.remove(5);
        assert!(!is_hyperbasis(&z, &h).passed);
        assert!(matches!(ca_over_hyperbasis(&z, &h), Err(Error::NotHyperbasis(_))));
    }

    #[test]
    fn budget_refusal() {
        let z = cyclic_group_ra(4).unwrap();
        assert!(matches!(
            enumerate_hypernetworks(&z, 3, 3, 2, 1000),
            Err(Error::Budget { .. })
        ));
    }
}
