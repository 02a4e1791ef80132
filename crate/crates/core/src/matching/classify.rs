use super::blossom;
use super::{allowed_adjacency, lift, Matching, MatchingError};
use crate::constructions::{canonical, edge_index, BlockEmbedding, BlockRole, Construction, PETERSEN_EDGES, SPOKE_1};
use crate::graph::{EdgeId, Multigraph, VertexId};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Type of a perfect matching of a Petersen-derived multigraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PmType {
    Type(u8),
    Unclassified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    First,
    Second,
}

/// Types induced in the two Petersen copies of a Q-block. `first` is the
/// copy containing `z_1`. `external` names the copy whose `z` is matched
/// outside the block; that copy's type is 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QBlockType {
    pub first: u8,
    pub second: u8,
    pub external: Side,
}

impl QBlockType {
    /// `None` unless exactly one of the two types uses `u_1 v_1`.
    pub fn new(first: u8, second: u8) -> Option<Self> {
        let spoke = |t: u8| t <= 1;
        if first > 5 || second > 5 || spoke(first) == spoke(second) {
            return None;
        }
        let external = if spoke(first) { Side::First } else { Side::Second };
        Some(QBlockType { first, second, external })
    }

    fn get(&self, copy: usize) -> u8 {
        if copy == 0 {
            self.first
        } else {
            self.second
        }
    }
}

impl fmt::Display for QBlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

fn local_map(n: usize, copy: &[VertexId; 10]) -> Vec<Option<usize>> {
    let mut map = vec![None; n];
    for (l, v) in copy.iter().enumerate() {
        map[v.0] = Some(l);
    }
    map
}

/// Petersen edge ids of those edges of `m` lying inside one copy.
fn project(g: &Multigraph, copy: &[VertexId; 10], m: &Matching) -> Vec<usize> {
    let map = local_map(g.vertex_count(), copy);
    m.edges()
        .iter()
        .filter_map(|&e| {
            let (a, b) = g.endpoints(e);
            edge_index(map[a.0]?, map[b.0]?)
        })
        .collect()
}

/// Type of a perfect matching of `P + M_{t_1} + ...`.
pub fn classify_type(host: &Construction, m: &Matching) -> Result<PmType, MatchingError> {
    let block = host
        .blocks_with_role(BlockRole::PetersenCopy)
        .next()
        .ok_or(MatchingError::MissingProvenance("Petersen copy"))?;
    let copy = block.petersen_copies.first().ok_or(MatchingError::MissingProvenance("Petersen copy"))?;
    if !m.is_perfect_in(&host.graph) {
        return Err(MatchingError::NotPerfect);
    }
    Ok(canonical().type_of(&project(&host.graph, copy, m)).map_or(PmType::Unclassified, PmType::Type))
}

/// Reads off the block type of a perfect matching `m` of `host`.
///
/// In each copy the edges of `m` inside the copy are projected to the
/// Petersen graph; when the copy's `z` is matched outside the block the
/// removed `u_1 v_1` edge is put back. The result must be one of
/// `M_0..M_5`.
pub fn classify_q_block(
    host: &Construction,
    block: &BlockEmbedding,
    m: &Matching,
) -> Result<QBlockType, MatchingError> {
    if block.role != BlockRole::QBlock || block.petersen_copies.len() != 2 || block.z.len() != 2 {
        return Err(MatchingError::MissingProvenance("Q-block"));
    }
    let g = &host.graph;
    if !m.is_perfect_in(g) {
        return Err(MatchingError::NotPerfect);
    }
    let mut partner = vec![usize::MAX; g.vertex_count()];
    for &e in m.edges() {
        let (a, b) = g.endpoints(e);
        partner[a.0] = b.0;
        partner[b.0] = a.0;
    }
    let mut types = [0u8; 2];
    let mut outside = [false; 2];
    for c in 0..2 {
        let z = block.z[c];
        outside[c] = !block.contains(VertexId(partner[z.0]));
        let mut edges = project(g, &block.petersen_copies[c], m);
        if outside[c] {
            edges.push(SPOKE_1);
        }
        types[c] =
            canonical().type_of(&edges).ok_or(MatchingError::NotExtendable { block: block.index, copy: c + 1 })?;
    }
    let ty = QBlockType::new(types[0], types[1]).ok_or_else(|| {
        MatchingError::Internal(format!("block {} has infeasible type ({},{})", block.index, types[0], types[1]))
    })?;
    let expected = [ty.external == Side::First, ty.external == Side::Second];
    if outside != expected {
        return Err(MatchingError::Internal(format!("block {} external side mismatch", block.index)));
    }
    Ok(ty)
}

/// A perfect matching of `host` with the given type on every Q-block,
/// avoiding `forbidden`.
///
/// Inside each block the types fix the Petersen edges; each is realised by
/// its lowest-id allowed copy. The vertices left over (T-block vertices and
/// the externally matched `z`s) are then matched with the remaining edges.
pub fn find_typed_pm(
    host: &Construction,
    types: &[QBlockType],
    forbidden: &[EdgeId],
) -> Result<Option<Matching>, MatchingError> {
    find_typed_pm_preferring(host, types, forbidden, &[])
}

/// As [`find_typed_pm`], additionally steering away from `avoid`: such an
/// edge is only used where no other allowed copy or completion exists.
pub fn find_typed_pm_preferring(
    host: &Construction,
    types: &[QBlockType],
    forbidden: &[EdgeId],
    avoid: &[EdgeId],
) -> Result<Option<Matching>, MatchingError> {
    let g = &host.graph;
    let blocks = host.q_blocks();
    if blocks.len() != types.len() {
        return Err(MatchingError::BlockCount { expected: blocks.len(), got: types.len() });
    }
    let mask = |ids: &[EdgeId]| {
        let mut out = vec![false; g.edge_count()];
        for e in ids {
            if e.0 < out.len() {
                out[e.0] = true;
            }
        }
        out
    };
    let blocked = mask(forbidden);
    let soft = mask(avoid);
    let cm = canonical();

    let mut covered = vec![false; g.vertex_count()];
    let mut chosen = Vec::with_capacity(g.vertex_count() / 2);
    for (block, ty) in blocks.iter().zip(types) {
        for t in [ty.first, ty.second] {
            if t > 5 {
                return Err(MatchingError::BadType(t));
            }
        }
        if QBlockType::new(ty.first, ty.second).is_none() {
            return Ok(None);
        }
        for c in 0..2 {
            let t = ty.get(c);
            let copy = &block.petersen_copies[c];
            for &pe in cm.get(t as usize).edges() {
                if pe.0 == SPOKE_1 && t <= 1 {
                    continue;
                }
                let (la, lb) = PETERSEN_EDGES[pe.0];
                let candidates: Vec<EdgeId> =
                    g.edges_between(copy[la], copy[lb]).into_iter().filter(|e| !blocked[e.0]).collect();
                let Some(&e) = candidates.iter().find(|e| !soft[e.0]).or(candidates.first()) else {
                    return Ok(None);
                };
                covered[copy[la].0] = true;
                covered[copy[lb].0] = true;
                chosen.push(e);
            }
        }
    }

    let alive: Vec<bool> = covered.iter().map(|c| !c).collect();
    for strict in [true, false] {
        let off: Vec<bool> = g
            .raw_edges()
            .iter()
            .enumerate()
            .map(|(id, &(a, b))| blocked[id] || (strict && soft[id]) || covered[a] || covered[b])
            .collect();
        let adj = allowed_adjacency(g, &off);
        let mate = blossom::maximum_matching(&adj, &alive);
        if blossom::is_perfect(&mate, &alive) {
            let rest = lift(g, &off, &mate);
            chosen.extend_from_slice(rest.edges());
            let pm = Matching::new(chosen);
            debug_assert!(pm.is_perfect_in(g));
            return Ok(Some(pm));
        }
    }
    Ok(None)
}

/// `φ(W)` over a family of pairwise disjoint matchings, with `ω` its weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhiVector(pub Vec<bool>);

impl PhiVector {
    pub fn omega(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

pub fn phi_omega(family: &[Matching], w: &[EdgeId]) -> Result<(PhiVector, usize), MatchingError> {
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !family[i].is_disjoint(&family[j]) {
                return Err(MatchingError::Overlap(i, j));
            }
        }
    }
    let phi = PhiVector(family.iter().map(|n| w.iter().filter(|&&e| n.contains(e)).count() % 2 == 1).collect());
    let omega = phi.omega();
    Ok((phi, omega))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_h, build_p, petersen_plus, HVariant};
    use crate::matching::enumerate_perfect_matchings;

    #[test]
    fn added_copy_is_its_own_type() {
        let p = petersen_plus(&[0, 3]).unwrap();
        for (i, t) in [(0usize, 0u8), (1, 3)] {
            let layer = &p.layers[i];
            let m = Matching::new(layer.edges().collect());
            assert_eq!(classify_type(&p, &m).unwrap(), PmType::Type(t));
        }
        // base copy of M_3
        let base = Matching::new(canonical().get(3).edges().to_vec());
        assert_eq!(classify_type(&p, &base).unwrap(), PmType::Type(3));
    }

    #[test]
    fn every_pm_of_p1_is_classified() {
        let p = build_p(1).unwrap();
        let all = enumerate_perfect_matchings(&p.graph, 1000);
        assert_eq!(all.matchings.len(), 42);
        for m in &all.matchings {
            assert!(matches!(classify_type(&p, m).unwrap(), PmType::Type(_)));
        }
    }

    #[test]
    fn infeasible_pairs() {
        assert!(QBlockType::new(0, 1).is_none());
        assert!(QBlockType::new(3, 4).is_none());
        assert_eq!(QBlockType::new(4, 1).unwrap().external, Side::Second);
    }

    #[test]
    fn typed_pm_round_trips_on_h1() {
        let h = build_h(1, HVariant::Base).unwrap();
        let types = [QBlockType::new(0, 4).unwrap(); 3];
        let pm = find_typed_pm(&h, &types, &[]).unwrap().unwrap();
        assert_eq!(pm.len(), 30);
        for (b, block) in h.q_blocks().into_iter().enumerate() {
            assert_eq!(classify_q_block(&h, block, &pm).unwrap(), types[b]);
        }
        let mixed = [QBlockType::new(0, 4).unwrap(), QBlockType::new(4, 0).unwrap(), QBlockType::new(0, 4).unwrap()];
        // two z_1 and one z_2 external: z_2 has only triangle neighbours, so no completion
        assert_eq!(find_typed_pm(&h, &mixed, &[]).unwrap(), None);
    }

    #[test]
    fn phi_basics() {
        let m = Matching::new(vec![EdgeId(0), EdgeId(2), EdgeId(4)]);
        let (phi, w) = phi_omega(std::slice::from_ref(&m), &[]).unwrap();
        assert_eq!((phi.0, w), (vec![false], 0));
        let (phi, w) = phi_omega(std::slice::from_ref(&m), m.edges()).unwrap();
        assert_eq!((phi.0, w), (vec![true], 1));
        let (_, w) = phi_omega(std::slice::from_ref(&m), &[EdgeId(0), EdgeId(2)]).unwrap();
        assert_eq!(w, 0);
        assert_eq!(phi_omega(&[m.clone(), m], &[]).unwrap_err(), MatchingError::Overlap(0, 1));
    }
}
