//! Graphviz export.
//!
//! Loop weights go into the node labels, cut-vertices are drawn red, and a
//! pair of opposite edges with equal weight is drawn as one undirected edge.

use std::fmt::Write as _;

use crate::blocks::BlockDecomposition;
use crate::digraph::WeightedDigraph;
use crate::scalar::Scalar;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DotOptions {
    /// Colour the edges of each block differently.
    pub color_blocks: bool,
}

pub fn to_dot<T: Scalar>(g: &WeightedDigraph<T>, d: &BlockDecomposition, opts: DotOptions) -> String {
    let mut s = String::from("digraph G {\n  node [shape=circle];\n");
    for &v in g.vertices() {
        let mut label = format!("v{}", v.0);
        if let Some(w) = g.weight(v, v) {
            write!(label, "\\n{}", w.label()).unwrap();
        }
        let color = if d.is_cut_vertex(v) { ", color=red, fontcolor=red" } else { "" };
        writeln!(s, "  {} [label=\"{label}\"{color}];", v.0).unwrap();
    }
    let block_of_edge = |u, v| {
        d.blocks
            .iter()
            .position(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok())
    };
    for (u, v, w) in g.edges() {
        if u == v {
            continue;
        }
        let back = g.weight(v, u);
        let symmetric = back == Some(w);
        if symmetric && v < u {
            continue;
        }
        let mut attrs = vec![format!("label=\"{}\"", w.label())];
        if symmetric {
            attrs.push("dir=none".into());
        }
        if opts.color_blocks {
            if let Some(b) = block_of_edge(u, v) {
                attrs.push(format!("color=\"{}\"", PALETTE[b % PALETTE.len()]));
            }
        }
        writeln!(s, "  {} -> {} [{}];", u.0, v.0, attrs.join(", ")).unwrap();
    }
    s.push_str("}\n");
    s
}
