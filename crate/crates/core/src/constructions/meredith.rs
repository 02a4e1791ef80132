use super::ConstructionError;
use crate::graph::{Multigraph, VertexId};

/// Replaces `v` (degree `t`) by `K_{t,t-1}`.
///
/// `v` keeps its id and becomes `u_1`; `u_2..u_t` and then `w_1..w_{t-1}`
/// are appended. The former edges of `v`, sorted by (neighbour, edge id),
/// move to `u_1..u_t` in that order and keep their ids; the `t(t-1)` gadget
/// edges come last.
pub fn meredith_extend(g: &Multigraph, v: VertexId) -> Result<Multigraph, ConstructionError> {
    g.check_vertex(v)?;
    let t = g.degree(v);
    if t < 2 {
        return Err(ConstructionError::DegreeTooSmall { vertex: v.0, degree: t });
    }
    let n = g.vertex_count();
    let u = |i: usize| if i == 0 { v.0 } else { n + i - 1 };
    let w = |j: usize| n + t - 1 + j;

    let mut former: Vec<_> = g.incident(v).iter().map(|&e| (g.other_end(e, v), e)).collect();
    former.sort_unstable();
    let mut slot = vec![usize::MAX; g.edge_count()];
    for (i, &(_, e)) in former.iter().enumerate() {
        slot[e.0] = i;
    }

    let mut edges = Vec::with_capacity(g.edge_count() + t * (t - 1));
    for (id, &(a, b)) in g.raw_edges().iter().enumerate() {
        let s = slot[id];
        if s == usize::MAX {
            edges.push((a, b));
        } else if a == v.0 {
            edges.push((u(s), b));
        } else {
            edges.push((a, u(s)));
        }
    }
    for i in 0..t {
        for j in 0..t - 1 {
            edges.push((u(i), w(j)));
        }
    }
    Ok(Multigraph::from_edges(n + 2 * t - 2, edges)?)
}

/// The first parallel class (as a vertex pair) with no endpoint in `cover`.
pub fn parallel_classes_covered(g: &Multigraph, cover: &[VertexId]) -> Result<(), ConstructionError> {
    let mut inside = vec![false; g.vertex_count()];
    for &v in cover {
        g.check_vertex(v)?;
        inside[v.0] = true;
    }
    for (&(a, b), &m) in &g.pair_multiplicities() {
        if m >= 2 && !inside[a] && !inside[b] {
            return Err(ConstructionError::NotACover(a, b));
        }
    }
    Ok(())
}

/// Extends every vertex of `cover`, in increasing id order. The result is
/// simple when `cover` meets every parallel class.
pub fn meredith_simple(g: &Multigraph, cover: &[VertexId]) -> Result<Multigraph, ConstructionError> {
    parallel_classes_covered(g, cover)?;
    let mut order = cover.to_vec();
    order.sort_unstable();
    order.dedup();
    let mut out = g.clone();
    for v in order {
        out = meredith_extend(&out, v)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{edge_connectivity, is_regular};

    fn k4() -> Multigraph {
        Multigraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn cubic_vertex_gains_four() {
        let g = meredith_extend(&k4(), VertexId(0)).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(is_regular(&g), Some(3));
        assert_eq!(edge_connectivity(&g), 3);
        assert!(g.is_simple());
    }

    #[test]
    fn parallel_pair_is_split() {
        // 4-regular: 0-1 doubled, 0-2, 0-3 ... use the doubled 4-cycle
        let g = Multigraph::from_edges(4, [(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (2, 3), (3, 0), (3, 0)]).unwrap();
        let h = meredith_extend(&g, VertexId(0)).unwrap();
        assert_eq!(h.vertex_count(), 10);
        assert_eq!(h.multiplicity(VertexId(0), VertexId(1)), 1);
        assert_eq!(h.multiplicity(VertexId(4), VertexId(1)), 1);
        assert_eq!(is_regular(&h), Some(4));
        assert_eq!(edge_connectivity(&h), 4);
        // the doubled 1-2 and 2-3 classes remain
        assert!(!h.is_simple());
        let s = meredith_simple(&g, &[VertexId(0), VertexId(2)]).unwrap();
        assert!(s.is_simple());
        assert_eq!(s.vertex_count(), 4 + 2 * 6);
    }

    #[test]
    fn non_cover_is_rejected() {
        let g = Multigraph::from_edges(3, [(0, 1), (0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(meredith_simple(&g, &[VertexId(2)]).unwrap_err(), ConstructionError::NotACover(0, 1));
    }

    #[test]
    fn empty_cover_on_simple_graph_is_identity() {
        assert_eq!(meredith_simple(&k4(), &[]).unwrap(), k4());
    }

    #[test]
    fn degree_one_is_rejected() {
        let g = Multigraph::from_edges(2, [(0, 1)]).unwrap();
        assert!(matches!(meredith_extend(&g, VertexId(0)), Err(ConstructionError::DegreeTooSmall { .. })));
    }
}
