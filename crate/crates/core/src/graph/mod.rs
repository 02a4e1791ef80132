//! Loop-free multigraphs with individually identified parallel edges, plus
//! the cut and connectivity machinery used to certify constructions.

mod cut;
mod io;
mod ops;

pub use cut::{edge_connectivity, gomory_hu, is_r_graph, max_flow, min_odd_cut, Cut, GomoryHuTree};
pub use io::{parse, serialize, to_dot, EdgeListDoc};
pub use ops::{
    add_matchings, boundary, delete_edges, disjoint_union, edge_multiset_equal, identify_vertices, is_regular, relabel,
    remove_copies_of, Identified,
};

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {edge} out of range (graph has {m} edges)")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("identifying {0} and {1} would create a loop")]
    WouldCreateLoop(usize, usize),
    #[error("cannot identify a vertex with itself ({0})")]
    SameVertex(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has odd order {0}")]
    OddOrder(usize),
    #[error("vertex map is not a bijection: {0}")]
    NotBijection(String),
    #[error("no remaining copy of edge {0}-{1} to remove")]
    MissingCopy(usize, usize),
    #[error("malformed edge-list document: {0}")]
    Parse(String),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An undirected loop-free multigraph.
///
/// Every parallel copy of an edge has its own [`EdgeId`]; ids are positions
/// in the edge list. Multiplicity is derived from the list, never stored.
/// Values are immutable once built; all graph operations return new graphs.
#[derive(Clone)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    incidence: Vec<Vec<EdgeId>>,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Multigraph {}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multigraph").field("n", &self.n).field("m", &self.edges.len()).finish()
    }
}

impl Multigraph {
    /// Builds a graph from an ordered edge list; edge `i` gets `EdgeId(i)`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (a, c) in edges {
            b.add_edge(a, c)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    /// Endpoints in the order they were inserted.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (a, b) = self.edges[e.0];
        (VertexId(a), VertexId(b))
    }

    #[inline]
    pub fn raw_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v.0]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v.0].len()
    }

    pub fn min_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).min().unwrap_or(0)
    }

    #[inline]
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e.0];
        if a == v.0 {
            VertexId(b)
        } else {
            VertexId(a)
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v.0, n: self.n })
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e.0 < self.edges.len() {
            Ok(())
        } else {
            Err(GraphError::EdgeOutOfRange { edge: e.0, m: self.edges.len() })
        }
    }

    /// All copies joining `a` and `b`, in id order.
    pub fn edges_between(&self, a: VertexId, b: VertexId) -> Vec<EdgeId> {
        self.incidence[a.0].iter().copied().filter(|&e| self.other_end(e, a) == b).collect()
    }

    pub fn multiplicity(&self, a: VertexId, b: VertexId) -> usize {
        self.incidence[a.0].iter().filter(|&&e| self.other_end(e, a) == b).count()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.pair_multiplicities().values().copied().max().unwrap_or(0)
    }

    /// Multiplicity of every adjacent unordered pair `(min, max)`.
    pub fn pair_multiplicities(&self) -> std::collections::BTreeMap<(usize, usize), usize> {
        let mut out = std::collections::BTreeMap::new();
        for &(a, b) in &self.edges {
            *out.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        self.pair_multiplicities().values().all(|&c| c == 1)
    }

    /// Sorted, deduplicated neighbour lists (the simple projection).
    pub fn simple_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<Vec<usize>> = (0..self.n)
            .map(|v| self.incidence[v].iter().map(|&e| self.other_end(e, VertexId(v)).0).collect())
            .collect();
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Connected components, each sorted; components ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &e in &self.incidence[v] {
                    let w = self.other_end(e, VertexId(v)).0;
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp.into_iter().map(VertexId).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    /// Returns the graph and, for each new edge, the original edge id.
    pub fn induced(&self, vertices: &[VertexId]) -> (Multigraph, Vec<EdgeId>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, v) in vertices.iter().enumerate() {
            local[v.0] = i;
        }
        let mut b = GraphBuilder::new(vertices.len());
        let mut origin = Vec::new();
        for (id, &(a, c)) in self.edges.iter().enumerate() {
            if local[a] != usize::MAX && local[c] != usize::MAX {
                b.push(local[a], local[c]);
                origin.push(EdgeId(id));
            }
        }
        (b.build(), origin)
    }
}

/// Incremental builder; the only way to grow a graph.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        Self { n, edges: Vec::new() }
    }

    pub fn from_graph(g: &Multigraph) -> Self {
        Self { n: g.n, edges: g.edges.clone() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.n += 1;
        VertexId(self.n - 1)
    }

    pub fn add_vertices(&mut self, count: usize) -> std::ops::Range<usize> {
        let start = self.n;
        self.n += count;
        start..self.n
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<EdgeId> {
        for v in [a, b] {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if a == b {
            return Err(GraphError::Loop(a));
        }
        Ok(self.push(a, b))
    }

    /// Adds `count` parallel copies of `ab`.
    pub fn add_parallel(&mut self, a: usize, b: usize, count: usize) -> Result<Vec<EdgeId>> {
        (0..count).map(|_| self.add_edge(a, b)).collect()
    }

    // Callers guarantee a valid, loop-free pair.
    pub(crate) fn push(&mut self, a: usize, b: usize) -> EdgeId {
        debug_assert!(a != b && a < self.n && b < self.n);
        self.edges.push((a, b));
        EdgeId(self.edges.len() - 1)
    }

    pub fn build(self) -> Multigraph {
        let mut incidence = vec![Vec::new(); self.n];
        for (id, &(a, b)) in self.edges.iter().enumerate() {
            incidence[a].push(EdgeId(id));
            incidence[b].push(EdgeId(id));
        }
        Multigraph { n: self.n, edges: self.edges, incidence }
    }
}
