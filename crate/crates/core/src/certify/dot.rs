use std::fmt::Write as _;

use crate::graph::ProductGraph;

use super::Certificate;

/// Graphviz digraph with one node per rule application, numbered in
/// pre-order.
pub fn export_certificate_dot(g: &ProductGraph, c: &Certificate) -> String {
    let mut out = String::from("digraph certificate {\n  node [shape=box];\n");
    let mut next = 0;
    emit(g, c, &mut next, &mut out);
    out.push_str("}\n");
    out
}

fn emit(g: &ProductGraph, c: &Certificate, next: &mut usize, out: &mut String) -> usize {
    let id = *next;
    *next += 1;
    let subject = g.names(c.subject).join(", ").replace('\\', "\\\\").replace('"', "\\\"");
    let _ = writeln!(out, "  n{id} [label=\"{}\\n{{{subject}}}\\n{}\"];", c.rule.name(), c.verdict.as_str());
    for ch in c.children() {
        let child = emit(g, ch, next, out);
        let _ = writeln!(out, "  n{id} -> n{child};");
    }
    id
}
