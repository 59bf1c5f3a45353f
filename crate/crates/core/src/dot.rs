//! Graphviz export for author review.

use std::fmt::Write;

use crate::model::{edge_legend_tag, node_colour_token, PathwayGraph};

/// Render the graph as a DOT digraph. Nodes are labelled with their English
/// titles and carry their colour token; edges carry their legend tag. Output
/// depends only on the graph.
pub fn export_dot(graph: &PathwayGraph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(&graph.id)).unwrap();
    writeln!(out, "  graph [rankdir=LR, label={}];", quote(&graph.title.en)).unwrap();
    writeln!(out, "  node [shape=box, style=rounded];").unwrap();
    for n in &graph.nodes {
        writeln!(
            out,
            "  {} [label={}, class={}, category={:?}];",
            quote(&n.id),
            quote(&n.title.en),
            quote(node_colour_token(n.category)),
            format!("{:?}", n.category),
        )
        .unwrap();
    }
    for e in &graph.edges {
        writeln!(
            out,
            "  {} -> {} [id={}, label={}, class={}, kind={:?}];",
            quote(&e.from),
            quote(&e.to),
            quote(&e.id),
            quote(&e.label.en),
            quote(&format!("legend-{}", edge_legend_tag(e.kind))),
            format!("{:?}", e.kind),
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        match c {
            '"' => q.push_str("\\\""),
            '\\' => q.push_str("\\\\"),
            '\n' => q.push_str("\\n"),
            '\r' => {}
            c => q.push(c),
        }
    }
    q.push('"');
    q
}
