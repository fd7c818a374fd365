//! Graphviz export for base graphs and their lifts.

use std::fmt::Write;

use crate::graph::{LabeledGraph, Mode};
use crate::lift::LiftGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Base graph with edge labels in cycle notation.
pub fn base_dot(g: &LabeledGraph) -> String {
    let (kind, arrow) = match g.mode() {
        Mode::Undirected => ("graph", "--"),
        Mode::Directed => ("digraph", "->"),
    };
    let mut out = format!("{kind} G {{\n");
    for name in g.vertices() {
        writeln!(out, "  {};", quote(name)).unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "  {} {arrow} {} [label={}];",
            quote(g.vertex_name(e.from)),
            quote(g.vertex_name(e.to)),
            quote(&e.label.to_cycle_string())
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Lift graph with one same-rank cluster per fiber; vertex `(i, j)` is named `v_i_j`.
pub fn lift_dot(lift: &LiftGraph<'_>) -> String {
    let g = lift.base();
    let mut out = String::from("graph KG {\n  newrank=true;\n");
    for i in 0..g.vertex_count() {
        writeln!(out, "  subgraph cluster_{i} {{").unwrap();
        writeln!(
            out,
            "    label={};",
            quote(&format!("v_{i} ({})", g.vertex_name(i)))
        )
        .unwrap();
        out.push_str("    rank=same;\n");
        for v in lift.fiber(i) {
            writeln!(out, "    v_{}_{};", v.base, v.level).unwrap();
        }
        out.push_str("  }\n");
    }
    for &(a, b) in lift.edges() {
        writeln!(
            out,
            "  v_{}_{} -- v_{}_{};",
            a.base, a.level, b.base, b.level
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
