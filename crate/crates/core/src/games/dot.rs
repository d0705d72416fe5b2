//! Graphviz renderings of atom structures and networks.

use std::fmt::Write;

use crate::bao::structure::CaAtomStructure;
use crate::games::network::{code_tuple, CaNetwork, RaNetwork};
use crate::ra::RaAtomStructure;

const COLOURS: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal"];

fn colour(i: usize) -> &'static str {
    COLOURS[i % COLOURS.len()]
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Atoms as nodes; an undirected edge per `T_i`-related pair of distinct
/// atoms, coloured by `i`.
pub fn structure_dot(s: &CaAtomStructure) -> String {
    let mut out = String::from("graph atoms {\n  node [shape=ellipse];\n");
    for a in 0..s.atom_count() {
        writeln!(out, "  a{a} [label={}];", quote(s.label(a))).unwrap();
    }
    for i in 0..s.dim() {
        let r = s.cyl_relation(i);
        for a in 0..s.atom_count() {
            for &b in r.successors(a) {
                let b = b as usize;
                if a < b {
                    writeln!(out, "  a{a} -- a{b} [color={}, label=\"T{i}\"];", colour(i)).unwrap();
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Network nodes as points; a box per tuple of distinct nodes carrying its
/// label, joined to its nodes by edges numbered by position.
pub fn ca_network_dot(s: &CaAtomStructure, net: &CaNetwork) -> String {
    let mut out = String::from("graph network {\n  node [shape=circle];\n");
    for v in 0..net.nodes {
        writeln!(out, "  v{v} [label=\"{v}\"];").unwrap();
    }
    for code in 0..net.tuple_count() {
        let t = code_tuple(code, net.dim, net.nodes);
        let distinct = (0..t.len()).all(|i| !t[i + 1..].contains(&t[i]));
        if !distinct {
            continue;
        }
        let label = s.label(net.labels[code] as usize);
        writeln!(out, "  t{code} [shape=box, label={}];", quote(label)).unwrap();
        for (p, &v) in t.iter().enumerate() {
            writeln!(out, "  t{code} -- v{v} [color={}, label=\"{p}\"];", colour(p)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// One directed edge per ordered pair of distinct nodes.
pub fn ra_network_dot(ra: &RaAtomStructure, net: &RaNetwork) -> String {
    let mut out = String::from("digraph network {\n  node [shape=circle];\n");
    for v in 0..net.nodes {
        writeln!(out, "  v{v} [label=\"{v}\"];").unwrap();
    }
    for x in 0..net.nodes {
        for y in (0..net.nodes).filter(|&y| y != x) {
            writeln!(out, "  v{x} -> v{y} [label={}];", quote(ra.label(net.edge(x, y)))).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::set_algebra::full_set_algebra;

    #[test]
    fn structure_edges_are_coloured_by_index() {
        let s = full_set_algebra(2, 2).unwrap();
        let d = structure_dot(&s);
        assert_eq!(d.matches("a0 [").count(), 1);
        // each T_i has 4 two-element classes on the 4 pairs
        assert_eq!(d.matches("color=red").count(), 2);
        assert_eq!(d.matches("color=blue").count(), 2);
    }

    #[test]
    fn ra_network_edges() {
        let z = crate::ra::cyclic_group_ra(3).unwrap();
        let net = RaNetwork {
            nodes: 2,
            edges: vec![0, 1, 2, 0],
        };
        assert_eq!(ra_network_dot(&z, &net).matches("->").count(), 2);
    }
}
