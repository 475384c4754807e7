//! Graphviz export of skeletons and of the lattice of saturated hereditary
//! sets.

use std::fmt::Write as _;

use crate::kgraph::KGraph;
use crate::lattice::{is_regular, ShLattice};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Arrows point from `r(e)` to `s(e)`. Colors 1 to 3 are drawn solid, dashed
/// and dotted; higher colors carry their number in the label.
pub fn graph_to_dot(g: &KGraph) -> String {
    let mut out = String::from("digraph kgraph {\n");
    for v in g.vertices() {
        writeln!(out, "  {};", quote(g.vertex_name(v))).unwrap();
    }
    for e in g.edge_ids() {
        let edge = g.edge(e);
        let color = edge.color + 1;
        let (label, style) = match color {
            1 => (edge.name.clone(), "solid"),
            2 => (edge.name.clone(), "dashed"),
            3 => (edge.name.clone(), "dotted"),
            c => (format!("{} [{c}]", edge.name), "solid"),
        };
        writeln!(
            out,
            "  {} -> {} [label={}, style={style}];",
            quote(g.vertex_name(edge.range)),
            quote(g.vertex_name(edge.source)),
            quote(&label)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram, bottom to top; regular sets are double circles.
pub fn lattice_to_dot(g: &KGraph, lattice: &ShLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
    for (i, h) in lattice.sets().iter().enumerate() {
        let label = if h.is_empty() { "∅".to_owned() } else { h.display(g).to_string() };
        let shape = if is_regular(g, h).unwrap_or(false) { "doublecircle" } else { "circle" };
        writeln!(out, "  n{i} [label={}, shape={shape}];", quote(&label)).unwrap();
    }
    for (lo, hi) in lattice.hasse_edges() {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}
