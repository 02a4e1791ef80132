use super::petersen::{canonical, petersen, PETERSEN_EDGES, U1, V1};
use super::{BlockEmbedding, BlockRole, Composer, Construction, ConstructionError, EdgeLayer, HVariant};
use crate::graph::{
    add_matchings, edge_connectivity, edge_multiset_equal, is_regular, remove_copies_of, EdgeId, GraphBuilder,
    Multigraph, VertexId,
};
use crate::matching::{classify_q_block, find_typed_pm_preferring, Matching, QBlockType};
use serde::{Deserialize, Serialize};

fn check_k(k: usize) -> Result<(), ConstructionError> {
    if k == 0 {
        Err(ConstructionError::ZeroK)
    } else {
        Ok(())
    }
}

fn petersen_block() -> BlockEmbedding {
    let mut b = BlockEmbedding::new(BlockRole::PetersenCopy, 0, (0..10).map(VertexId).collect());
    b.petersen_copies = vec![std::array::from_fn(VertexId)];
    b
}

/// `P + M_{t_1} + M_{t_2} + ...`, one layer per added matching.
pub fn petersen_plus(types: &[u8]) -> Result<Construction, ConstructionError> {
    let cm = canonical();
    let (base, _) = petersen();
    let mut builder = GraphBuilder::from_graph(&base);
    let mut layers = Vec::with_capacity(types.len());
    let mut seen = [0usize; 6];
    for &t in types {
        if t > 5 {
            return Err(crate::matching::MatchingError::BadType(t).into());
        }
        seen[t as usize] += 1;
        let first = EdgeId(builder.edge_count());
        for e in cm.get(t as usize).edges() {
            let (a, b) = PETERSEN_EDGES[e.0];
            builder.push(a, b);
        }
        layers.push(EdgeLayer { label: format!("M{t}#{}", seen[t as usize]), first, len: 5 });
    }
    let name = if types.is_empty() {
        "P".to_string()
    } else {
        format!("P+{}", types.iter().map(|t| format!("M{t}")).collect::<Vec<_>>().join("+"))
    };
    let mut c = Construction::bare(name, builder.build());
    c.blocks.push(petersen_block());
    c.layers = layers;
    Ok(c)
}

/// `P_k = P + k M_0 + (k-1)(M_1 + M_3 + M_4)`.
pub fn build_p(k: usize) -> Result<Construction, ConstructionError> {
    check_k(k)?;
    let mut types = vec![0u8; k];
    for _ in 1..k {
        types.extend([1, 3, 4]);
    }
    let mut c = petersen_plus(&types)?;
    c.name = format!("P_{k}");
    Ok(c)
}

/// Two copies of `P_k` without their `u_1 v_1` multiedge, glued at `u_1`.
///
/// Vertices: copy 1 keeps the Petersen ids 0..9 (`u_Q` = 5, `z_1` = 0);
/// copy 2 puts `v_1..v_5` at 10..14 and `u_2..u_5` at 15..18 (`z_2` = 10).
pub fn build_q(k: usize) -> Result<Construction, ConstructionError> {
    let p = build_p(k)?;
    let copies: [[VertexId; 10]; 2] = [
        std::array::from_fn(VertexId),
        std::array::from_fn(|l| {
            VertexId(if l < 5 {
                10 + l
            } else if l == U1 {
                U1
            } else {
                l + 9
            })
        }),
    ];
    let mut builder = GraphBuilder::new(19);
    for copy in &copies {
        for &(a, b) in p.graph.raw_edges() {
            if (a.min(b), a.max(b)) == (V1, U1) {
                continue;
            }
            builder.push(copy[a].0, copy[b].0);
        }
    }
    let mut block = BlockEmbedding::new(BlockRole::QBlock, 0, (0..19).map(VertexId).collect());
    block.petersen_copies = copies.to_vec();
    block.u_q = Some(VertexId(U1));
    block.z = vec![VertexId(0), VertexId(10)];
    let mut c = Construction::bare(format!("Q_{k}"), builder.build());
    c.blocks.push(block);
    c.refresh_sides();
    Ok(c)
}

/// Triangle `x_1 x_2 x_3` with every side of multiplicity `k`.
pub fn build_t(k: usize) -> Result<Construction, ConstructionError> {
    check_k(k)?;
    let mut builder = GraphBuilder::new(3);
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        for _ in 0..k {
            builder.push(a, b);
        }
    }
    let mut block = BlockEmbedding::new(BlockRole::TBlock, 0, (0..3).map(VertexId).collect());
    block.x = block.vertices.clone();
    let mut c = Construction::bare(format!("T_{k}"), builder.build());
    c.blocks.push(block);
    Ok(c)
}

/// `S_k(G)`: a `T_k` per vertex of the cubic graph `G`, a `Q_k` per edge.
///
/// Edge `e = ab` puts `z_1` of its block at `a` and `z_2` at `b`. At a
/// vertex with incident edges `e_1, e_2, e_3` (id order) the block end of
/// `e_j` gets `k` edges to `x_j` and `k` to `x_{j+1}`.
pub fn build_s(base: &Multigraph, k: usize) -> Result<Construction, ConstructionError> {
    check_k(k)?;
    if is_regular(base) != Some(3) {
        return Err(ConstructionError::NotCubic);
    }
    if !base.is_connected() {
        return Err(ConstructionError::Disconnected);
    }
    if edge_connectivity(base) < 2 {
        return Err(ConstructionError::HasBridge);
    }
    let q = build_q(k)?;
    let t = build_t(k)?;
    let mut composer = Composer::new();
    let q_off: Vec<usize> = base.edge_ids().map(|_| composer.embed(&q)).collect();
    let t_off: Vec<usize> = base.vertices().map(|_| composer.embed(&t)).collect();
    for v in base.vertices() {
        for (j, &e) in base.incident(v).iter().enumerate() {
            let (a, _) = base.endpoints(e);
            let z = if a == v { q_off[e.0] } else { q_off[e.0] + 10 };
            let x = t_off[v.0];
            composer.add_parallel(VertexId(z), VertexId(x + j), k);
            composer.add_parallel(VertexId(z), VertexId(x + (j + 1) % 3), k);
        }
    }
    Ok(composer.finish(format!("S_{k}")))
}

/// `H_k` and its variants. Q-blocks at vertex offsets 0, 19, 38 and the
/// T-block at 57..59.
pub fn build_h(k: usize, variant: HVariant) -> Result<Construction, ConstructionError> {
    let base = build_h_base(k)?;
    if variant == HVariant::Base {
        return Ok(base);
    }
    let family = pm_family_on(&base)?;
    let added: Vec<&Matching> = variant.added().iter().map(|&i| &family.matchings[i]).collect();
    let graph = add_matchings(&base.graph, added.iter().copied())?;
    let mut c = Construction::bare(format!("H_{k}{}", variant.suffix()), graph);
    c.blocks = base.blocks;
    c.marked_edges = base.marked_edges;
    let mut first = base.graph.edge_count();
    for &i in variant.added() {
        c.layers.push(EdgeLayer { label: format!("N{i}"), first: EdgeId(first), len: 30 });
        c.marked_edges.insert(format!("N{i}"), family.matchings[i].edges().to_vec());
        first += 30;
    }
    c.refresh_sides();
    Ok(c)
}

fn build_h_base(k: usize) -> Result<Construction, ConstructionError> {
    let q = build_q(k)?;
    let t = build_t(k)?;
    let mut composer = Composer::new();
    let q_off: Vec<usize> = (0..3).map(|_| composer.embed(&q)).collect();
    let x = composer.embed(&t);
    for (b, &z1) in q_off.iter().enumerate() {
        composer.add_parallel(VertexId(z1), VertexId(x + (b + 1) % 3), k);
        composer.add_parallel(VertexId(z1), VertexId(x + (b + 2) % 3), k);
    }
    let mut triangle = Vec::with_capacity(3 * k);
    for b in 0..3 {
        triangle.extend(composer.add_parallel(VertexId(q_off[b] + 10), VertexId(q_off[(b + 1) % 3] + 10), k));
    }
    let mut c = composer.finish(format!("H_{k}"));
    c.marked_edges.insert("z2-triangle".into(), triangle);
    Ok(c)
}

/// Block types of `N_i` on the three Q-blocks of `H_k`.
pub fn n_block_types(i: usize) -> [QBlockType; 3] {
    let ty = |a, b| QBlockType::new(a, b).expect("feasible pair");
    if i == 0 {
        return [ty(0, 4); 3];
    }
    let b = (i - 1) % 3;
    let mut out = [ty(0, 4); 3];
    out[b] = ty(1, 3);
    out[(b + 1) % 3] = ty(3, 0);
    out[(b + 2) % 3] = ty(4, 1);
    out
}

/// `N_0..N_3` over some `H_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NFamily {
    pub matchings: Vec<Matching>,
    pub block_types: Vec<[QBlockType; 3]>,
    /// Whether the four are pairwise edge-disjoint as edge-id sets.
    pub disjoint: bool,
}

/// Builds `N_0..N_3` on `H_k` in order. Each one avoids the edges of the
/// earlier ones and, where it has a choice, the vertex pairs they join, so
/// that every pair outside the Q-blocks is used by exactly one of the four.
/// When avoiding the edges is impossible (in `H_1` some simple edges would
/// be needed twice) edges are reused and `disjoint` reports false.
pub fn pm_family_on(h: &Construction) -> Result<NFamily, ConstructionError> {
    if h.q_blocks().len() != 3 {
        return Err(crate::matching::MatchingError::BlockCount { expected: 3, got: h.q_blocks().len() }.into());
    }
    let g = &h.graph;
    let mut used: Vec<EdgeId> = Vec::new();
    let mut matchings = Vec::with_capacity(4);
    let mut block_types = Vec::with_capacity(4);
    let mut disjoint = true;
    for i in 0..4 {
        let types = n_block_types(i);
        // every copy of a vertex pair some earlier N_j already joins
        let same_pair: Vec<EdgeId> = used
            .iter()
            .flat_map(|&e| {
                let (a, b) = g.endpoints(e);
                g.edges_between(a, b)
            })
            .collect();
        let pm = match find_typed_pm_preferring(h, &types, &used, &same_pair)? {
            Some(pm) => pm,
            None => {
                disjoint = false;
                find_typed_pm_preferring(h, &types, &[], &same_pair)?
                    .ok_or_else(|| ConstructionError::NoTypedMatching(format!("N_{i}")))?
            }
        };
        for (b, block) in h.q_blocks().into_iter().enumerate() {
            let got = classify_q_block(h, block, &pm)?;
            if got != types[b] {
                return Err(ConstructionError::SelfCheck(format!("N_{i} has type {got} on block {b}")));
            }
        }
        used.extend_from_slice(pm.edges());
        matchings.push(pm);
        block_types.push(types);
    }
    Ok(NFamily { matchings, block_types, disjoint })
}

pub fn pm_family_n(k: usize) -> Result<NFamily, ConstructionError> {
    pm_family_on(&build_h(k, HVariant::Base)?)
}

/// `H_{k+1}` equals `H_k + N_0 + N_1 + N_2 + N_3` as edge multisets.
pub fn h_step_identity(k: usize) -> Result<bool, ConstructionError> {
    let h = build_h(k, HVariant::Base)?;
    let family = pm_family_on(&h)?;
    let sum = add_matchings(&h.graph, family.matchings.iter())?;
    let next = build_h(k + 1, HVariant::Base)?;
    let id: Vec<VertexId> = next.graph.vertices().collect();
    Ok(edge_multiset_equal(&next.graph, &sum, &id)?)
}

/// A variant of `H_k` equals `H_{k+1}` minus the `N_i` it lacks, as edge
/// multisets. For `Base` this is [`h_step_identity`].
pub fn variant_identity(k: usize, variant: HVariant) -> Result<bool, ConstructionError> {
    let h = build_h(k, HVariant::Base)?;
    let family = pm_family_on(&h)?;
    let pairs: Vec<(VertexId, VertexId)> =
        variant.removed_from_next().iter().flat_map(|&i| family.matchings[i].pairs(&h.graph)).collect();
    let next = build_h(k + 1, HVariant::Base)?;
    let trimmed = remove_copies_of(&next.graph, &pairs)?;
    let built = if variant == HVariant::Base { h } else { build_h(k, variant)? };
    let id: Vec<VertexId> = trimmed.vertices().collect();
    Ok(edge_multiset_equal(&trimmed, &built.graph, &id)?)
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub construction: Construction,
    pub r: usize,
    pub k: usize,
    pub variant: HVariant,
    /// Edge connectivity the graph is built to have.
    pub claimed_t: usize,
    /// Size of the disjoint perfect-matching family that must not exist.
    pub missing_family: usize,
}

/// The `r`-graph for a given `r >= 4`: `H_k`, `H''_k`, `H'''_k` or `H'_k`
/// with `k = r / 4` according to `r mod 4`.
pub fn counterexample(r: usize) -> Result<Counterexample, ConstructionError> {
    if r < 4 {
        return Err(ConstructionError::RTooSmall(r));
    }
    let k = r / 4;
    let (variant, claimed_t) = match r % 4 {
        0 => (HVariant::Base, r),
        1 => (HVariant::DoublePrime, r - 1),
        2 => (HVariant::TriplePrime, r - 2),
        _ => (HVariant::Prime, r - 1),
    };
    let construction = build_h(k, variant)?;
    Ok(Counterexample { construction, r, k, variant, claimed_t, missing_family: r - 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{delete_edges, disjoint_union, identify_vertices};

    #[test]
    fn p_k_counts() {
        for k in 1..=3 {
            let p = build_p(k).unwrap();
            assert_eq!(p.graph.edge_count(), 20 * k);
            assert_eq!(is_regular(&p.graph), Some(4 * k));
            assert!(p.graph.max_multiplicity() <= 2 * k);
        }
        let p2 = build_p(2).unwrap();
        assert_eq!(p2.graph.multiplicity(VertexId(U1), VertexId(V1)), 4);
        assert!(build_p(0).is_err());
    }

    #[test]
    fn q_matches_union_and_identify() {
        for k in 1..=2 {
            let p = build_p(k).unwrap().graph;
            let spokes = p.edges_between(VertexId(V1), VertexId(U1));
            let (trimmed, _) = delete_edges(&p, &spokes).unwrap();
            let both = disjoint_union(&trimmed, &trimmed);
            let glued = identify_vertices(&both, VertexId(U1), VertexId(10 + U1)).unwrap().graph;
            let q = build_q(k).unwrap();
            let id: Vec<VertexId> = (0..19).map(VertexId).collect();
            assert!(edge_multiset_equal(&q.graph, &glued, &id).unwrap());
            let block = &q.blocks[0];
            assert_eq!(block.u_sides.iter().map(Vec::len).collect::<Vec<_>>(), vec![2 * k, 2 * k]);
            assert_eq!(q.graph.degree(VertexId(0)), 2 * k);
            assert_eq!(q.graph.degree(VertexId(10)), 2 * k);
            assert_eq!(q.graph.degree(VertexId(U1)), 4 * k);
        }
    }

    #[test]
    fn t_is_multitriangle() {
        let t = build_t(2).unwrap();
        assert_eq!((t.graph.vertex_count(), t.graph.edge_count()), (3, 6));
        assert_eq!(is_regular(&t.graph), Some(4));
        assert_eq!(edge_connectivity(&t.graph), 4);
    }

    #[test]
    fn h_base_shape() {
        let h = build_h(1, HVariant::Base).unwrap();
        assert_eq!((h.graph.vertex_count(), h.graph.edge_count()), (60, 120));
        assert_eq!(is_regular(&h.graph), Some(4));
        let t = h.blocks_with_role(BlockRole::TBlock).next().unwrap();
        assert_eq!(t.x, vec![VertexId(57), VertexId(58), VertexId(59)]);
        assert_eq!(t.external.len(), 3);
        for q in h.q_blocks() {
            assert_eq!(q.external.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 2]);
        }
    }

    #[test]
    fn n_types_follow_the_rotation() {
        let t = n_block_types(2);
        assert_eq!((t[1].first, t[1].second), (1, 3));
        assert_eq!((t[2].first, t[2].second), (3, 0));
        assert_eq!((t[0].first, t[0].second), (4, 1));
    }

    #[test]
    fn variants_have_expected_degree() {
        for (v, r) in [(HVariant::Prime, 7), (HVariant::DoublePrime, 5), (HVariant::TriplePrime, 6)] {
            let h = build_h(1, v).unwrap();
            assert_eq!(is_regular(&h.graph), Some(r), "{v:?}");
        }
    }

    #[test]
    fn s_rejects_bad_bases() {
        let path = Multigraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(build_s(&path, 1).unwrap_err(), ConstructionError::NotCubic);
        // two K4s minus an edge, joined by a bridge
        let mut edges = vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)];
        edges.extend([(4, 5), (4, 6), (5, 6), (5, 7), (6, 7), (0, 4), (3, 7)]);
        let g = Multigraph::from_edges(8, edges).unwrap();
        assert!(build_s(&g, 1).is_ok());
        let bridged = Multigraph::from_edges(
            10,
            [
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (2, 3),
                (5, 6),
                (5, 7),
                (6, 7),
                (6, 8),
                (7, 8),
                (0, 4),
                (3, 4),
                (5, 9),
                (8, 9),
                (4, 9),
            ],
        )
        .unwrap();
        assert_eq!(build_s(&bridged, 1).unwrap_err(), ConstructionError::HasBridge);
    }

    #[test]
    fn identities_at_k1() {
        assert!(h_step_identity(1).unwrap());
        for v in [HVariant::Base, HVariant::Prime, HVariant::DoublePrime, HVariant::TriplePrime] {
            assert!(variant_identity(1, v).unwrap(), "{v:?}");
        }
    }

    #[test]
    fn counterexample_dispatch() {
        let c = counterexample(6).unwrap();
        assert_eq!((c.k, c.variant, c.claimed_t, c.missing_family), (1, HVariant::TriplePrime, 4, 4));
        assert_eq!(counterexample(7).unwrap().claimed_t, 6);
        assert_eq!(counterexample(3).unwrap_err(), ConstructionError::RTooSmall(3));
    }
}
