use super::{EdgeId, GraphBuilder, GraphError, Multigraph, Result, VertexId};
use std::collections::BTreeMap;

/// Edges with exactly one endpoint in `side`, in id order.
pub fn boundary(g: &Multigraph, side: &[VertexId]) -> Result<Vec<EdgeId>> {
    let mut inside = vec![false; g.vertex_count()];
    for &v in side {
        g.check_vertex(v)?;
        inside[v.0] = true;
    }
    Ok(g.edge_ids()
        .filter(|&e| {
            let (a, b) = g.endpoints(e);
            inside[a.0] != inside[b.0]
        })
        .collect())
}

/// `G + (N_1 + ... + N_k)`: appends one fresh parallel copy of every listed
/// edge, family by family, each family in ascending edge-id order. Existing
/// ids are untouched.
pub fn add_matchings<I, S>(g: &Multigraph, family: I) -> Result<Multigraph>
where
    I: IntoIterator<Item = S>,
    S: AsRef<[EdgeId]>,
{
    let mut b = GraphBuilder::from_graph(g);
    for set in family {
        let mut ids = set.as_ref().to_vec();
        ids.sort_unstable();
        for e in ids {
            g.check_edge(e)?;
            let (x, y) = g.endpoints(e);
            b.push(x.0, y.0);
        }
    }
    Ok(b.build())
}

/// Result of merging two vertices.
#[derive(Debug, Clone)]
pub struct Identified {
    pub graph: Multigraph,
    /// Old vertex id to new vertex id.
    pub vertex_map: Vec<VertexId>,
    pub merged: VertexId,
}

/// Merges `a` and `b` into one vertex. The merged vertex takes the smaller of
/// the two ids; vertices above the larger id shift down by one. Edge ids and
/// order are preserved.
pub fn identify_vertices(g: &Multigraph, a: VertexId, b: VertexId) -> Result<Identified> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if a == b {
        return Err(GraphError::SameVertex(a.0));
    }
    if g.multiplicity(a, b) > 0 {
        return Err(GraphError::WouldCreateLoop(a.0, b.0));
    }
    let (keep, drop) = (a.min(b), a.max(b));
    let vertex_map: Vec<VertexId> = (0..g.vertex_count())
        .map(|v| match v {
            v if v == drop.0 => keep,
            v if v > drop.0 => VertexId(v - 1),
            v => VertexId(v),
        })
        .collect();
    let mut builder = GraphBuilder::new(g.vertex_count() - 1);
    for &(x, y) in g.raw_edges() {
        builder.push(vertex_map[x].0, vertex_map[y].0);
    }
    Ok(Identified { graph: builder.build(), vertex_map, merged: keep })
}

/// Removes exactly the listed copies. Surviving edges keep their relative
/// order; the returned map sends each old id to its new id (or `None`).
pub fn delete_edges(g: &Multigraph, ids: &[EdgeId]) -> Result<(Multigraph, Vec<Option<EdgeId>>)> {
    let mut dead = vec![false; g.edge_count()];
    for &e in ids {
        g.check_edge(e)?;
        dead[e.0] = true;
    }
    let mut builder = GraphBuilder::new(g.vertex_count());
    let mut map = Vec::with_capacity(g.edge_count());
    for (id, &(x, y)) in g.raw_edges().iter().enumerate() {
        if dead[id] {
            map.push(None);
        } else {
            map.push(Some(builder.push(x, y)));
        }
    }
    Ok((builder.build(), map))
}

/// For each listed pair removes one remaining copy (the highest id) from `g`.
pub fn remove_copies_of(g: &Multigraph, pairs: &[(VertexId, VertexId)]) -> Result<Multigraph> {
    let mut dead = vec![false; g.edge_count()];
    for &(a, b) in pairs {
        g.check_vertex(a)?;
        g.check_vertex(b)?;
        let victim =
            g.edges_between(a, b).into_iter().rev().find(|e| !dead[e.0]).ok_or(GraphError::MissingCopy(a.0, b.0))?;
        dead[victim.0] = true;
    }
    let ids: Vec<EdgeId> = g.edge_ids().filter(|e| dead[e.0]).collect();
    Ok(delete_edges(g, &ids)?.0)
}

/// The common degree, if every vertex has the same degree.
pub fn is_regular(g: &Multigraph) -> Option<usize> {
    let mut degrees = g.vertices().map(|v| g.degree(v));
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

/// Whether the two graphs have identical pair multiplicities once `vmap`
/// carries `g1`'s vertices onto `g2`'s.
pub fn edge_multiset_equal(g1: &Multigraph, g2: &Multigraph, vmap: &[VertexId]) -> Result<bool> {
    check_bijection(vmap, g1.vertex_count(), g2.vertex_count())?;
    if g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let mut counts: BTreeMap<(usize, usize), isize> = BTreeMap::new();
    for &(a, b) in g1.raw_edges() {
        let (x, y) = (vmap[a].0, vmap[b].0);
        *counts.entry((x.min(y), x.max(y))).or_insert(0) += 1;
    }
    for &(a, b) in g2.raw_edges() {
        *counts.entry((a.min(b), a.max(b))).or_insert(0) -= 1;
    }
    Ok(counts.values().all(|&c| c == 0))
}

/// Renames vertex `v` to `perm[v]`; edge order is kept.
pub fn relabel(g: &Multigraph, perm: &[VertexId]) -> Result<Multigraph> {
    check_bijection(perm, g.vertex_count(), g.vertex_count())?;
    let mut builder = GraphBuilder::new(g.vertex_count());
    for &(a, b) in g.raw_edges() {
        builder.push(perm[a].0, perm[b].0);
    }
    Ok(builder.build())
}

/// Places `h` after `g`; `h`'s vertex `v` becomes `v + g.vertex_count()` and
/// its edges follow `g`'s.
pub fn disjoint_union(g: &Multigraph, h: &Multigraph) -> Multigraph {
    let offset = g.vertex_count();
    let mut builder = GraphBuilder::from_graph(g);
    builder.add_vertices(h.vertex_count());
    for &(a, b) in h.raw_edges() {
        builder.push(a + offset, b + offset);
    }
    builder.build()
}

fn check_bijection(map: &[VertexId], from: usize, to: usize) -> Result<()> {
    if map.len() != from || from != to {
        return Err(GraphError::NotBijection(format!("map has {} entries for {from} -> {to} vertices", map.len())));
    }
    let mut hit = vec![false; to];
    for &v in map {
        if v.0 >= to || std::mem::replace(&mut hit[v.0], true) {
            return Err(GraphError::NotBijection(format!("vertex {} repeated or out of range", v.0)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[usize]) -> Vec<EdgeId> {
        v.iter().copied().map(EdgeId).collect()
    }

    #[test]
    fn boundary_of_everything_is_empty() {
        let g = Multigraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let all: Vec<_> = g.vertices().collect();
        assert!(boundary(&g, &all).unwrap().is_empty());
        assert!(boundary(&g, &[VertexId(5)]).is_err());
    }

    #[test]
    fn add_matchings_appends_in_family_then_id_order() {
        let g = Multigraph::from_edges(4, [(0, 1), (2, 3), (1, 2)]).unwrap();
        let h = add_matchings(&g, [ids(&[1, 0]), ids(&[2])]).unwrap();
        assert_eq!(&h.raw_edges()[3..], &[(0, 1), (2, 3), (1, 2)]);
        assert_eq!(add_matchings(&g, Vec::<Vec<EdgeId>>::new()).unwrap(), g);
        assert!(add_matchings(&g, [ids(&[9])]).is_err());
    }

    #[test]
    fn identify_two_edges_into_a_path() {
        // x=0 - y=1, a=2 - b=3; identify y and a.
        let g = Multigraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let id = identify_vertices(&g, VertexId(1), VertexId(2)).unwrap();
        assert_eq!(id.merged, VertexId(1));
        assert_eq!(id.graph.vertex_count(), 3);
        assert_eq!(id.graph.raw_edges(), &[(0, 1), (1, 2)]);
        assert_eq!(id.graph.degree(id.merged), g.degree(VertexId(1)) + g.degree(VertexId(2)));
        assert_eq!(identify_vertices(&g, VertexId(0), VertexId(1)).unwrap_err(), GraphError::WouldCreateLoop(0, 1));
    }

    #[test]
    fn delete_edges_renumbers() {
        let g = Multigraph::from_edges(3, [(0, 1), (0, 1), (1, 2)]).unwrap();
        let (h, map) = delete_edges(&g, &ids(&[0])).unwrap();
        assert_eq!(h.raw_edges(), &[(0, 1), (1, 2)]);
        assert_eq!(map, vec![None, Some(EdgeId(0)), Some(EdgeId(1))]);
        assert_eq!(delete_edges(&g, &[]).unwrap().0, g);
    }

    #[test]
    fn remove_copies_takes_highest_remaining() {
        let g = Multigraph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        let h = remove_copies_of(&g, &[(VertexId(0), VertexId(1))]).unwrap();
        assert_eq!(h.raw_edges(), &[(0, 1), (1, 2)]);
        let pairs = [(VertexId(2), VertexId(1)), (VertexId(2), VertexId(1))];
        assert_eq!(remove_copies_of(&g, &pairs).unwrap_err(), GraphError::MissingCopy(2, 1));
    }

    #[test]
    fn regularity() {
        let g = Multigraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(is_regular(&g), None);
        let c = Multigraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(is_regular(&c), Some(2));
        let lone = Multigraph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(is_regular(&lone), None);
    }

    #[test]
    fn multiset_equality_under_map() {
        let g = Multigraph::from_edges(3, [(0, 1), (0, 1), (1, 2)]).unwrap();
        let h = Multigraph::from_edges(3, [(2, 1), (1, 0), (2, 1)]).unwrap();
        let swap = [VertexId(2), VertexId(1), VertexId(0)];
        assert!(edge_multiset_equal(&g, &h, &swap).unwrap());
        let ident = [VertexId(0), VertexId(1), VertexId(2)];
        assert!(!edge_multiset_equal(&g, &h, &ident).unwrap());
        assert!(edge_multiset_equal(&g, &g, &ident).unwrap());
        assert!(edge_multiset_equal(&g, &h, &[VertexId(0), VertexId(0), VertexId(1)]).is_err());
    }
}
