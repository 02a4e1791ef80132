//! The labelled Petersen graph and its six perfect matchings.
//!
//! Vertex layout: `v_1..v_5` are 0..4 (outer 5-cycle), `u_1..u_5` are 5..9.
//! The inner 5-cycle runs `u_1 u_3 u_5 u_2 u_4`, spokes are `u_i v_i`.
//! Edge ids: outer cycle 0..4, spokes 5..9 (`u_i v_i` is `4 + i`), inner
//! cycle 10..14.

use super::ConstructionError;
use crate::graph::{Multigraph, VertexId};
use crate::matching::{enumerate_perfect_matchings, Matching};
use std::sync::OnceLock;

pub const PETERSEN_EDGES: [(usize, usize); 15] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 0),
    (5, 0),
    (6, 1),
    (7, 2),
    (8, 3),
    (9, 4),
    (5, 7),
    (7, 9),
    (9, 6),
    (6, 8),
    (8, 5),
];

/// Petersen vertex `v_1`.
pub const V1: usize = 0;
/// Petersen vertex `u_1`.
pub const U1: usize = 5;
/// Edge id of the spoke `u_1 v_1`.
pub const SPOKE_1: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PetersenLabeling {
    /// `outer[i]` is `v_{i+1}`.
    pub outer: [VertexId; 5],
    /// `inner[i]` is `u_{i+1}`.
    pub inner: [VertexId; 5],
}

impl PetersenLabeling {
    /// Petersen-local index (0..10) of every labelled vertex.
    pub fn local(&self) -> [VertexId; 10] {
        let mut out = [VertexId(0); 10];
        out[..5].copy_from_slice(&self.outer);
        out[5..].copy_from_slice(&self.inner);
        out
    }
}

/// Edge id of the Petersen edge joining two local vertices.
pub fn edge_index(a: usize, b: usize) -> Option<usize> {
    static TABLE: OnceLock<[[Option<usize>; 10]; 10]> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = [[None; 10]; 10];
        for (i, &(x, y)) in PETERSEN_EDGES.iter().enumerate() {
            t[x][y] = Some(i);
            t[y][x] = Some(i);
        }
        t
    });
    if a < 10 && b < 10 {
        table[a][b]
    } else {
        None
    }
}

pub fn petersen() -> (Multigraph, PetersenLabeling) {
    let g = Multigraph::from_edges(10, PETERSEN_EDGES).expect("static edge list is valid");
    let labeling = PetersenLabeling { outer: [0, 1, 2, 3, 4].map(VertexId), inner: [5, 6, 7, 8, 9].map(VertexId) };
    (g, labeling)
}

/// The rotation `v_j -> v_{j+1}`, `u_j -> u_{j+1}` (indices mod 5).
pub fn rotate(vertex: usize) -> usize {
    if vertex < 5 {
        (vertex + 1) % 5
    } else {
        5 + (vertex - 5 + 1) % 5
    }
}

/// `M_0..M_5` as sets of Petersen edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalMatchings {
    sets: [Matching; 6],
    masks: [u16; 6],
}

impl CanonicalMatchings {
    pub fn get(&self, j: usize) -> &Matching {
        &self.sets[j]
    }

    pub fn all(&self) -> &[Matching; 6] {
        &self.sets
    }

    /// Which `M_j` has exactly these Petersen edge ids, if any.
    pub fn type_of(&self, edges: &[usize]) -> Option<u8> {
        let mut mask = 0u16;
        for &e in edges {
            if e >= 15 || mask & (1 << e) != 0 {
                return None;
            }
            mask |= 1 << e;
        }
        self.masks.iter().position(|&m| m == mask).map(|j| j as u8)
    }

    /// The two matchings containing Petersen edge `e`.
    pub fn matchings_through(&self, e: usize) -> Vec<usize> {
        (0..6).filter(|&j| self.masks[j] & (1 << e) != 0).collect()
    }
}

/// Builds `M_0..M_5` and checks them: `M_0` is the spokes, `M_1` the other
/// perfect matching through `u_1 v_1`, `M_i` the rotation image of
/// `M_{i-1}`; the six must be exactly the perfect matchings of the graph and
/// any two must meet in a single edge, distinct pairs in distinct edges.
pub fn canonical_matchings() -> Result<CanonicalMatchings, ConstructionError> {
    let (g, _) = petersen();
    let all = enumerate_perfect_matchings(&g, 64).matchings;
    let m0: Vec<usize> = (5..10).collect();
    let through_spoke: Vec<&Matching> = all
        .iter()
        .filter(|m| m.edges().iter().any(|e| e.0 == SPOKE_1))
        .filter(|m| m.edges().iter().map(|e| e.0).collect::<Vec<_>>() != m0)
        .collect();
    if through_spoke.len() != 1 {
        return Err(ConstructionError::SelfCheck(format!(
            "expected one non-spoke matching through u1v1, found {}",
            through_spoke.len()
        )));
    }
    let mut sets: Vec<Vec<usize>> = vec![m0, through_spoke[0].edges().iter().map(|e| e.0).collect()];
    for i in 2..6 {
        let prev = &sets[i - 1];
        let next = prev
            .iter()
            .map(|&e| {
                let (a, b) = PETERSEN_EDGES[e];
                edge_index(rotate(a), rotate(b))
                    .ok_or_else(|| ConstructionError::SelfCheck("rotation is not an automorphism".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        sets.push(next);
    }
    let sets: [Matching; 6] =
        std::array::from_fn(|j| Matching::new(sets[j].iter().copied().map(crate::graph::EdgeId).collect()));
    let masks: [u16; 6] = std::array::from_fn(|j| sets[j].edges().iter().fold(0u16, |m, e| m | (1 << e.0)));

    let mut sorted_all: Vec<Matching> = all.clone();
    sorted_all.sort();
    let mut ours: Vec<Matching> = sets.to_vec();
    ours.sort();
    if sorted_all != ours {
        return Err(ConstructionError::SelfCheck(
            "M_0..M_5 are not the six perfect matchings of the Petersen graph".into(),
        ));
    }
    let mut hit = [false; 15];
    for i in 0..6 {
        for j in i + 1..6 {
            let common = masks[i] & masks[j];
            if common.count_ones() != 1 {
                return Err(ConstructionError::SelfCheck(format!(
                    "M_{i} and M_{j} meet in {} edges",
                    common.count_ones()
                )));
            }
            let e = common.trailing_zeros() as usize;
            if std::mem::replace(&mut hit[e], true) {
                return Err(ConstructionError::SelfCheck(format!("edge {e} is the meet of two pairs")));
            }
        }
    }
    Ok(CanonicalMatchings { sets, masks })
}

/// Process-wide copy of [`canonical_matchings`].
pub fn canonical() -> &'static CanonicalMatchings {
    static CACHE: OnceLock<CanonicalMatchings> = OnceLock::new();
    CACHE.get_or_init(|| canonical_matchings().expect("Petersen self-check"))
}
