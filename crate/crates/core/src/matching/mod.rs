//! Perfect matchings: search, enumeration, disjoint-family decisions, and
//! Petersen-type classification.

mod blossom;
mod classify;
mod cnf;
mod disjoint;
mod enumerate;
mod oracles;

pub use classify::{
    classify_q_block, classify_type, find_typed_pm, find_typed_pm_preferring, phi_omega, PhiVector, PmType, QBlockType,
    Side,
};
pub use cnf::cnf_export;
pub use disjoint::{has_disjoint_pms, validate_family, DisjointFamilyDecision, SearchBudget, SearchStats, Verdict};
pub use enumerate::{enumerate_perfect_matchings, CopyMode, EnumOutcome, PmEnumeration, PmEnumerator};
pub use oracles::{
    apex_host, phi_diagnostic, type_multisets, verify_forced_type, verify_subcollection, OracleCheck, PhiDiagnostic,
};

use crate::graph::{EdgeId, GraphError, Multigraph, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge set is not a perfect matching of the host")]
    NotPerfect,
    #[error("matchings {0} and {1} share an edge")]
    Overlap(usize, usize),
    #[error("host carries no {0} embedding")]
    MissingProvenance(&'static str),
    #[error("restriction to Petersen copy {copy} of block {block} does not extend to a perfect matching")]
    NotExtendable { block: usize, copy: usize },
    #[error("expected {expected} block types, got {got}")]
    BlockCount { expected: usize, got: usize },
    #[error("subcollection check supports at most 3 matchings, got {0}")]
    TooLarge(usize),
    #[error("type index {0} out of range 0..6")]
    BadType(u8),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// A set of edge ids, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching(Vec<EdgeId>);

impl Matching {
    pub fn new(mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Matching(edges)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn is_disjoint(&self, other: &Matching) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// No two edges share an endpoint (and every id is valid).
    pub fn is_matching_in(&self, g: &Multigraph) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        self.0.iter().all(|&e| {
            if e.0 >= g.edge_count() {
                return false;
            }
            let (a, b) = g.endpoints(e);
            !std::mem::replace(&mut seen[a.0], true) && !std::mem::replace(&mut seen[b.0], true)
        })
    }

    pub fn is_perfect_in(&self, g: &Multigraph) -> bool {
        2 * self.0.len() == g.vertex_count() && self.is_matching_in(g)
    }

    pub fn pairs(&self, g: &Multigraph) -> Vec<(VertexId, VertexId)> {
        self.0.iter().map(|&e| g.endpoints(e)).collect()
    }
}

impl AsRef<[EdgeId]> for Matching {
    fn as_ref(&self) -> &[EdgeId] {
        &self.0
    }
}

/// A multiset: each distinct item with its number of occurrences.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Collection<T: Ord>(BTreeMap<T, usize>);

impl<T: Ord> Collection<T> {
    pub fn multiplicity(&self, item: &T) -> usize {
        self.0.get(item).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every item occurs in `other` at least as often as here.
    pub fn is_subcollection_of(&self, other: &Collection<T>) -> bool {
        self.0.iter().all(|(k, &c)| other.multiplicity(k) >= c)
    }
}

impl<T: Ord> FromIterator<T> for Collection<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut map = BTreeMap::new();
        for item in iter {
            *map.entry(item).or_insert(0) += 1;
        }
        Collection(map)
    }
}

/// A perfect matching avoiding `forbidden`: maximum matching on the simple
/// projection of the allowed edges, lifted to the lowest allowed copy.
pub fn find_perfect_matching(g: &Multigraph, forbidden: &[EdgeId]) -> Option<Matching> {
    let mut blocked = vec![false; g.edge_count()];
    for &e in forbidden {
        if e.0 < blocked.len() {
            blocked[e.0] = true;
        }
    }
    find_perfect_matching_masked(g, &blocked)
}

pub(crate) fn find_perfect_matching_masked(g: &Multigraph, blocked: &[bool]) -> Option<Matching> {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return None;
    }
    let adj = allowed_adjacency(g, blocked);
    let alive = vec![true; n];
    let mate = blossom::maximum_matching(&adj, &alive);
    if !blossom::is_perfect(&mate, &alive) {
        return None;
    }
    Some(lift(g, blocked, &mate))
}

/// Simple adjacency of the edges not blocked.
pub(crate) fn allowed_adjacency(g: &Multigraph, blocked: &[bool]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (id, &(a, b)) in g.raw_edges().iter().enumerate() {
        if !blocked[id] {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Lowest-id allowed copy for every matched pair.
pub(crate) fn lift(g: &Multigraph, blocked: &[bool], mate: &[usize]) -> Matching {
    let mut out = Vec::with_capacity(g.vertex_count() / 2);
    for (v, &w) in mate.iter().enumerate() {
        if w == blossom::NONE || w < v {
            continue;
        }
        let e = g
            .incident(VertexId(v))
            .iter()
            .copied()
            .find(|&e| !blocked[e.0] && g.other_end(e, VertexId(v)).0 == w)
            .expect("matched pair has an allowed copy");
        out.push(e);
    }
    Matching::new(out)
}
