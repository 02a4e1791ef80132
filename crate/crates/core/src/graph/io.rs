//! Edge-list documents and DOT export.
//!
//! Canonical edge-list text (what [`serialize`] writes, byte for byte):
//!
//! ```text
//! {
//!   "n": 3,
//!   "edges": [
//!     [0, 1],
//!     [1, 2]
//!   ]
//! }
//! ```
//!
//! Two-space indent, one edge per line, `", "` inside each pair, LF line
//! endings and a trailing newline. A graph without edges is written with
//! `"edges": []` on one line. [`parse`] accepts any JSON with the same shape.

use super::{GraphBuilder, GraphError, Multigraph, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeListDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Multigraph> for EdgeListDoc {
    fn from(g: &Multigraph) -> Self {
        EdgeListDoc { n: g.vertex_count(), edges: g.raw_edges().iter().map(|&(a, b)| [a, b]).collect() }
    }
}

impl TryFrom<EdgeListDoc> for Multigraph {
    type Error = GraphError;

    fn try_from(doc: EdgeListDoc) -> Result<Self> {
        let mut b = GraphBuilder::new(doc.n);
        for [a, c] in doc.edges {
            b.add_edge(a, c)?;
        }
        Ok(b.build())
    }
}

pub fn serialize(g: &Multigraph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.edge_count());
    let _ = write!(out, "{{\n  \"n\": {},\n", g.vertex_count());
    if g.edge_count() == 0 {
        out.push_str("  \"edges\": []\n}\n");
        return out;
    }
    out.push_str("  \"edges\": [\n");
    for (i, &(a, b)) in g.raw_edges().iter().enumerate() {
        let sep = if i + 1 == g.edge_count() { "" } else { "," };
        let _ = writeln!(out, "    [{a}, {b}]{sep}");
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn parse(text: &str) -> Result<Multigraph> {
    let doc: EdgeListDoc = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
    Multigraph::try_from(doc)
}

/// Undirected DOT: one node statement per vertex (so isolated vertices
/// survive), then one edge statement per copy in id order.
pub fn to_dot(g: &Multigraph, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "\\\""));
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {v};");
    }
    for &(a, b) in g.raw_edges() {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}
