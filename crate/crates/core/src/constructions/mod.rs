//! Graph families built from Petersen-graph gadgets, together with
//! embeddings recording where every gadget copy lives in the host.

mod cover;
mod gadgets;
mod meredith;
mod petersen;

pub use cover::{is_vertex_cover, min_vertex_cover};
pub use gadgets::{
    build_h, build_p, build_q, build_s, build_t, counterexample, h_step_identity, n_block_types, petersen_plus,
    pm_family_n, pm_family_on, variant_identity, Counterexample, NFamily,
};
pub use meredith::{meredith_extend, meredith_simple, parallel_classes_covered};
pub use petersen::{
    canonical, canonical_matchings, edge_index, petersen, rotate, CanonicalMatchings, PetersenLabeling, PETERSEN_EDGES,
    SPOKE_1, U1, V1,
};

use crate::graph::{EdgeId, GraphBuilder, GraphError, Multigraph, VertexId};
use crate::matching::MatchingError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("parameter k must be at least 1")]
    ZeroK,
    #[error("r must be at least 4, got {0}")]
    RTooSmall(usize),
    #[error("base graph is not cubic")]
    NotCubic,
    #[error("base graph has a bridge")]
    HasBridge,
    #[error("base graph is disconnected")]
    Disconnected,
    #[error("vertex {vertex} has degree {degree}; need at least 2")]
    DegreeTooSmall { vertex: usize, degree: usize },
    #[error("cover misses the parallel class {0}-{1}")]
    NotACover(usize, usize),
    #[error("no perfect matching with the requested block types ({0})")]
    NoTypedMatching(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockRole {
    PetersenCopy,
    QBlock,
    TBlock,
}

/// Where one gadget copy sits inside a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEmbedding {
    pub role: BlockRole,
    /// Position among blocks of the same role (0-based).
    pub index: usize,
    /// Host vertices of the block, in the gadget's local order.
    pub vertices: Vec<VertexId>,
    /// For Petersen copies and Q-blocks: host vertex of each Petersen-local
    /// vertex, one array per copy. In a Q-block both copies send `u_1` to
    /// the shared vertex `u_Q`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub petersen_copies: Vec<[VertexId; 10]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_q: Option<VertexId>,
    /// Q-block: `z_1 = v_1^1`, `z_2 = v_1^2`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub z: Vec<VertexId>,
    /// T-block: `x_1, x_2, x_3`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub x: Vec<VertexId>,
    /// Q-block: `U^1, U^2`, the edges at `u_Q` into each copy.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub u_sides: Vec<Vec<EdgeId>>,
    /// Edges leaving the block. Q-block: `V^1, V^2` (at `z_1`, `z_2`).
    /// T-block: one connector bundle per neighbouring Q-block, ordered by
    /// that block's index.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub external: Vec<Vec<EdgeId>>,
}

impl BlockEmbedding {
    fn new(role: BlockRole, index: usize, vertices: Vec<VertexId>) -> Self {
        BlockEmbedding {
            role,
            index,
            vertices,
            petersen_copies: Vec::new(),
            u_q: None,
            z: Vec::new(),
            x: Vec::new(),
            u_sides: Vec::new(),
            external: Vec::new(),
        }
    }

    fn shifted(&self, vertex_offset: usize, edge_offset: usize, index: usize) -> Self {
        let v = |x: &VertexId| VertexId(x.0 + vertex_offset);
        let e = |x: &EdgeId| EdgeId(x.0 + edge_offset);
        BlockEmbedding {
            role: self.role,
            index,
            vertices: self.vertices.iter().map(v).collect(),
            petersen_copies: self.petersen_copies.iter().map(|c| c.map(|x| VertexId(x.0 + vertex_offset))).collect(),
            u_q: self.u_q.as_ref().map(v),
            z: self.z.iter().map(v).collect(),
            x: self.x.iter().map(v).collect(),
            u_sides: self.u_sides.iter().map(|s| s.iter().map(e).collect()).collect(),
            external: self.external.iter().map(|s| s.iter().map(e).collect()).collect(),
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

/// A contiguous run of edge ids that were appended as one copy of a matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLayer {
    pub label: String,
    pub first: EdgeId,
    pub len: usize,
}

impl EdgeLayer {
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (self.first.0..self.first.0 + self.len).map(EdgeId)
    }
}

/// `H_k` and the graphs obtained by adding copies of `N_0, N_1, N_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HVariant {
    /// `H_k`, 4k-regular.
    Base,
    /// `H_k + N_0 + N_1 + N_2`, (4k+3)-regular.
    Prime,
    /// `H_k + N_0`, (4k+1)-regular.
    DoublePrime,
    /// `H_k + N_0 + N_1`, (4k+2)-regular.
    TriplePrime,
}

impl HVariant {
    /// Which of `N_0..N_3` are appended, in order.
    pub fn added(self) -> &'static [usize] {
        match self {
            HVariant::Base => &[],
            HVariant::Prime => &[0, 1, 2],
            HVariant::DoublePrime => &[0],
            HVariant::TriplePrime => &[0, 1],
        }
    }

    /// `N_i` that must be removed from `H_{k+1}` to obtain this variant.
    pub fn removed_from_next(self) -> &'static [usize] {
        match self {
            HVariant::Base => &[0, 1, 2, 3],
            HVariant::Prime => &[3],
            HVariant::DoublePrime => &[1, 2, 3],
            HVariant::TriplePrime => &[2, 3],
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            HVariant::Base => "",
            HVariant::Prime => "'",
            HVariant::DoublePrime => "''",
            HVariant::TriplePrime => "'''",
        }
    }
}

/// A built graph with its gadget embeddings and matching-copy provenance.
#[derive(Debug, Clone)]
pub struct Construction {
    pub name: String,
    pub graph: Multigraph,
    pub blocks: Vec<BlockEmbedding>,
    pub layers: Vec<EdgeLayer>,
    pub marked_edges: BTreeMap<String, Vec<EdgeId>>,
}

impl Construction {
    fn bare(name: impl Into<String>, graph: Multigraph) -> Self {
        Construction { name: name.into(), graph, blocks: Vec::new(), layers: Vec::new(), marked_edges: BTreeMap::new() }
    }

    pub fn blocks_with_role(&self, role: BlockRole) -> impl Iterator<Item = &BlockEmbedding> {
        self.blocks.iter().filter(move |b| b.role == role)
    }

    pub fn q_blocks(&self) -> Vec<&BlockEmbedding> {
        self.blocks_with_role(BlockRole::QBlock).collect()
    }

    pub fn layer(&self, label: &str) -> Option<&EdgeLayer> {
        self.layers.iter().find(|l| l.label == label)
    }

    /// Recomputes `u_sides` and `external` edge sets from the current graph.
    pub(crate) fn refresh_sides(&mut self) {
        let g = &self.graph;
        let mut owner = vec![usize::MAX; g.vertex_count()];
        for (i, b) in self.blocks.iter().enumerate() {
            if b.role != BlockRole::PetersenCopy {
                for v in &b.vertices {
                    owner[v.0] = i;
                }
            }
        }
        let q_index: Vec<usize> = self.blocks.iter().map(|b| b.index).collect();
        for (i, block) in self.blocks.iter_mut().enumerate() {
            match block.role {
                BlockRole::QBlock => {
                    let uq = block.u_q.expect("Q-block has u_Q");
                    block.u_sides = block
                        .petersen_copies
                        .iter()
                        .map(|copy| {
                            g.incident(uq).iter().copied().filter(|&e| copy.contains(&g.other_end(e, uq))).collect()
                        })
                        .collect();
                    block.external = block
                        .z
                        .iter()
                        .map(|&z| g.incident(z).iter().copied().filter(|&e| owner[g.other_end(e, z).0] != i).collect())
                        .collect();
                }
                BlockRole::TBlock => {
                    let mut bundles: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
                    for &x in &block.x {
                        for &e in g.incident(x) {
                            let o = owner[g.other_end(e, x).0];
                            if o != i && o != usize::MAX {
                                bundles.entry(q_index[o]).or_default().push(e);
                            }
                        }
                    }
                    block.external = bundles
                        .into_values()
                        .map(|mut v| {
                            v.sort_unstable();
                            v
                        })
                        .collect();
                }
                BlockRole::PetersenCopy => {}
            }
        }
    }

    /// The provenance sidecar document.
    pub fn provenance(&self) -> ProvenanceDoc {
        ProvenanceDoc {
            schema_version: PROVENANCE_SCHEMA_VERSION,
            name: self.name.clone(),
            n: self.graph.vertex_count(),
            m: self.graph.edge_count(),
            blocks: self.blocks.clone(),
            layers: self.layers.clone(),
            marked_edges: self.marked_edges.clone(),
        }
    }
}

pub const PROVENANCE_SCHEMA_VERSION: u32 = 1;

/// Sidecar written next to an edge-list document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceDoc {
    pub schema_version: u32,
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub blocks: Vec<BlockEmbedding>,
    pub layers: Vec<EdgeLayer>,
    pub marked_edges: BTreeMap<String, Vec<EdgeId>>,
}

impl ProvenanceDoc {
    /// Reattaches a sidecar to its graph.
    pub fn attach(self, graph: Multigraph) -> Result<Construction, ConstructionError> {
        if graph.vertex_count() != self.n || graph.edge_count() != self.m {
            return Err(ConstructionError::SelfCheck(format!(
                "sidecar describes {}x{} but graph is {}x{}",
                self.n,
                self.m,
                graph.vertex_count(),
                graph.edge_count()
            )));
        }
        Ok(Construction {
            name: self.name,
            graph,
            blocks: self.blocks,
            layers: self.layers,
            marked_edges: self.marked_edges,
        })
    }
}

/// Lays gadget copies side by side in one host graph.
pub(crate) struct Composer {
    builder: GraphBuilder,
    blocks: Vec<BlockEmbedding>,
}

impl Composer {
    pub(crate) fn new() -> Self {
        Composer { builder: GraphBuilder::new(0), blocks: Vec::new() }
    }

    /// Copies `part` in; returns its vertex offset.
    pub(crate) fn embed(&mut self, part: &Construction) -> usize {
        let voff = self.builder.add_vertices(part.graph.vertex_count()).start;
        let eoff = self.builder.edge_count();
        for &(a, b) in part.graph.raw_edges() {
            self.builder.push(a + voff, b + voff);
        }
        for block in &part.blocks {
            let index = self.blocks.iter().filter(|b| b.role == block.role).count();
            self.blocks.push(block.shifted(voff, eoff, index));
        }
        voff
    }

    pub(crate) fn add_parallel(&mut self, a: VertexId, b: VertexId, count: usize) -> Vec<EdgeId> {
        (0..count).map(|_| self.builder.push(a.0, b.0)).collect()
    }

    pub(crate) fn finish(self, name: String) -> Construction {
        let mut c = Construction::bare(name, self.builder.build());
        c.blocks = self.blocks;
        c.refresh_sides();
        c
    }
}
