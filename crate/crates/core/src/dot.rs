//! Graphviz export of Hasse-type diagrams.

use std::fmt::Write as _;

use crate::relation::HasseDiagram;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph drawn bottom-up: covers as plain lines, dashed pairs as dashed lines,
/// back edges as arrows that do not affect ranking.
pub fn export_dot(diagram: &HasseDiagram, names: &[String]) -> String {
    let mut out = String::from("digraph psoset {\n  rankdir=BT;\n  node [shape=circle];\n");
    for name in names {
        let _ = writeln!(out, "  {};", quote(name));
    }
    for &(x, y) in &diagram.cover_edges {
        let _ = writeln!(out, "  {} -> {} [dir=none];", quote(&names[x]), quote(&names[y]));
    }
    for &(x, y) in &diagram.dashed_pairs {
        let _ = writeln!(out, "  {} -> {} [dir=none, style=dashed, constraint=false];", quote(&names[x]), quote(&names[y]));
    }
    for &(y, x) in &diagram.back_edges {
        let _ = writeln!(out, "  {} -> {} [constraint=false];", quote(&names[y]), quote(&names[x]));
    }
    out.push_str("}\n");
    out
}
