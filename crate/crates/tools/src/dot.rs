//! Graphviz export. Inputs are filled, outputs are drawn as squares.

use std::fmt::Write;

use mbqc_core::graph::OpenGraph;
use mbqc_core::PathCover;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

#[derive(Clone, Copy, Debug, Default)]
pub struct DotAnnotations<'a> {
    /// Appended to each label as `L<k>`.
    pub layers: Option<&'a [usize]>,
    /// Colours vertices by path and groups each path in a cluster.
    pub paths: Option<&'a PathCover>,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

pub fn emit_dot(og: &OpenGraph, ann: DotAnnotations<'_>) -> String {
    let mut out = String::from("graph open_graph {\n  node [shape=circle];\n");
    for v in og.vertices() {
        let mut attrs = Vec::new();
        if let Some(layers) = ann.layers {
            attrs.push(format!("label=\"{}\\nL{}\"", escape(og.name(v)), layers[v.0]));
        }
        if og.is_output(v) {
            attrs.push("shape=square".into());
        }
        if og.is_input(v) {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=lightgray".into());
        }
        if let Some(cover) = ann.paths {
            attrs.push(format!("color=\"{}\"", PALETTE[cover.path_of(v) % PALETTE.len()]));
            attrs.push("penwidth=2".into());
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {};", quote(og.name(v)));
        } else {
            let _ = writeln!(out, "  {} [{}];", quote(og.name(v)), attrs.join(", "));
        }
    }
    if let Some(cover) = ann.paths {
        for (k, path) in cover.paths().iter().enumerate() {
            let members: Vec<String> = path.iter().map(|&v| quote(og.name(v))).collect();
            let _ = writeln!(
                out,
                "  subgraph cluster_path{k} {{ label=\"path {k}\"; {}; }}",
                members.join("; ")
            );
        }
    }
    for (u, v) in og.edges() {
        let _ = writeln!(out, "  {} -- {};", quote(og.name(u)), quote(og.name(v)));
    }
    out.push_str("}\n");
    out
}
