use super::ops::{boundary, is_regular};
use super::{GraphError, Multigraph, Result, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// A vertex set together with the size of its boundary (counted with
/// multiplicity).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub side: Vec<VertexId>,
    pub weight: usize,
}

/// Global minimum cut weight. Zero for disconnected graphs and for graphs
/// with fewer than two vertices.
pub fn edge_connectivity(g: &Multigraph) -> usize {
    if g.vertex_count() < 2 || !g.is_connected() {
        return 0;
    }
    stoer_wagner(g).weight
}

/// Multiplicity-weighted Stoer–Wagner on a dense weight matrix.
fn stoer_wagner(g: &Multigraph) -> Cut {
    let n = g.vertex_count();
    let mut w = vec![vec![0usize; n]; n];
    for &(a, b) in g.raw_edges() {
        w[a][b] += 1;
        w[b][a] += 1;
    }
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = Cut { side: Vec::new(), weight: usize::MAX };
    let mut key = vec![0usize; n];
    let mut added = vec![false; n];

    while active.len() > 1 {
        for &v in &active {
            key[v] = 0;
            added[v] = false;
        }
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let mut pick = usize::MAX;
            for &v in &active {
                if !added[v] && (pick == usize::MAX || key[v] > key[pick]) {
                    pick = v;
                }
            }
            added[pick] = true;
            if step + 1 == active.len() {
                if key[pick] < best.weight {
                    let mut side: Vec<VertexId> = members[pick].iter().copied().map(VertexId).collect();
                    side.sort_unstable();
                    best = Cut { side, weight: key[pick] };
                }
                last = pick;
            } else {
                prev = pick;
                for &v in &active {
                    if !added[v] {
                        key[v] += w[pick][v];
                    }
                }
            }
        }
        // merge `last` into `prev`
        let moved = std::mem::take(&mut members[last]);
        members[prev].extend(moved);
        for &v in &active {
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        w[prev][prev] = 0;
        active.retain(|&v| v != last);
    }
    best
}

/// Dinic max-flow over the multigraph with one unit of capacity per copy.
struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<usize>,
    base: Vec<usize>,
    level: Vec<usize>,
    iter: Vec<usize>,
}

impl FlowNetwork {
    fn new(g: &Multigraph) -> Self {
        let n = g.vertex_count();
        let mut net = FlowNetwork {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            base: Vec::new(),
            level: vec![0; n],
            iter: vec![0; n],
        };
        for (&(a, b), &c) in &g.pair_multiplicities() {
            net.head[a].push(net.to.len());
            net.to.push(b);
            net.base.push(c);
            net.head[b].push(net.to.len());
            net.to.push(a);
            net.base.push(c);
        }
        net.cap = net.base.clone();
        net
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &arc in &self.head[v] {
                let w = self.to[arc];
                if self.cap[arc] > 0 && self.level[w] == usize::MAX {
                    self.level[w] = self.level[v] + 1;
                    q.push_back(w);
                }
            }
        }
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: usize) -> usize {
        if v == t {
            return pushed;
        }
        while self.iter[v] < self.head[v].len() {
            let arc = self.head[v][self.iter[v]];
            let w = self.to[arc];
            if self.cap[arc] > 0 && self.level[w] == self.level[v] + 1 {
                let got = self.dfs(w, t, pushed.min(self.cap[arc]));
                if got > 0 {
                    self.cap[arc] -= got;
                    self.cap[arc ^ 1] += got;
                    return got;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    /// Max-flow value and the source side of the minimal minimum cut.
    fn min_cut(&mut self, s: usize, t: usize) -> (usize, Vec<bool>) {
        self.cap.copy_from_slice(&self.base);
        let mut flow = 0;
        loop {
            self.bfs(s);
            if self.level[t] == usize::MAX {
                break;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, usize::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        let side = self.level.iter().map(|&l| l != usize::MAX).collect();
        (flow, side)
    }
}

/// Maximum number of edge-disjoint `s`–`t` paths.
pub fn max_flow(g: &Multigraph, s: VertexId, t: VertexId) -> Result<usize> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(GraphError::SameVertex(s.0));
    }
    Ok(FlowNetwork::new(g).min_cut(s.0, t.0).0)
}

/// Gomory–Hu cut tree rooted at vertex 0: tree edge `(v, parent[v])` carries
/// `capacity[v]`, and the subtree below `v` is a minimum cut separating `v`
/// from its parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GomoryHuTree {
    parent: Vec<usize>,
    capacity: Vec<usize>,
}

impl GomoryHuTree {
    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    /// Tree edges `(child, parent, capacity)` for every non-root vertex.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, usize)> {
        (1..self.parent.len()).map(|v| (VertexId(v), VertexId(self.parent[v]), self.capacity[v])).collect()
    }

    fn depth(&self, mut v: usize) -> usize {
        let mut d = 0;
        while v != 0 {
            v = self.parent[v];
            d += 1;
        }
        d
    }

    /// Minimum capacity on the tree path between `s` and `t`.
    pub fn min_cut_value(&self, s: VertexId, t: VertexId) -> usize {
        let (mut a, mut b) = (s.0, t.0);
        let (mut da, mut db) = (self.depth(a), self.depth(b));
        let mut best = usize::MAX;
        while a != b {
            if da >= db {
                best = best.min(self.capacity[a]);
                a = self.parent[a];
                da -= 1;
            } else {
                best = best.min(self.capacity[b]);
                b = self.parent[b];
                db -= 1;
            }
        }
        best
    }

    /// Vertices in the subtree hanging below `v` (including `v`).
    pub fn subtree(&self, v: VertexId) -> Vec<VertexId> {
        (0..self.parent.len())
            .filter(|&w| {
                let mut x = w;
                loop {
                    if x == v.0 {
                        return true;
                    }
                    if x == 0 {
                        return false;
                    }
                    x = self.parent[x];
                }
            })
            .map(VertexId)
            .collect()
    }
}

/// Gusfield's construction: n−1 max-flow computations with parent swaps, which
/// yields a genuine cut tree (not only a flow-equivalent one).
pub fn gomory_hu(g: &Multigraph) -> Result<GomoryHuTree> {
    if !g.is_connected() || g.vertex_count() == 0 {
        return Err(GraphError::Disconnected);
    }
    let n = g.vertex_count();
    let mut net = FlowNetwork::new(g);
    let mut parent = vec![0usize; n];
    let mut capacity = vec![0usize; n];
    for s in 1..n {
        let t = parent[s];
        let (f, side) = net.min_cut(s, t);
        capacity[s] = f;
        for i in 0..n {
            if i != s && side[i] && parent[i] == t {
                parent[i] = s;
            }
        }
        if t != 0 && side[parent[t]] {
            parent[s] = parent[t];
            parent[t] = s;
            capacity[s] = capacity[t];
            capacity[t] = f;
        }
    }
    Ok(GomoryHuTree { parent, capacity })
}

/// Minimum `|∂(S)|` over odd-cardinality `S`. Scans the odd fundamental cuts
/// of the Gomory–Hu tree, where a minimum odd cut is always attained.
pub fn min_odd_cut(g: &Multigraph) -> Result<Cut> {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return Err(GraphError::OddOrder(n));
    }
    let tree = gomory_hu(g)?;
    let mut best: Option<(usize, Vec<VertexId>)> = None;
    for (child, _, cap) in tree.edges() {
        if best.as_ref().is_some_and(|(w, _)| *w <= cap) {
            continue;
        }
        let side = tree.subtree(child);
        if side.len() % 2 == 1 {
            best = Some((cap, side));
        }
    }
    let (cap, side) = best.expect("a connected graph of even order has a leaf cut");
    let weight = boundary(g, &side)?.len();
    debug_assert_eq!(weight, cap);
    Ok(Cut { side, weight })
}

/// `Some(r)` when `g` is r-regular of even order and every odd vertex set has
/// at least `r` boundary edges. Disconnected graphs qualify only if every
/// component has even order and meets the bound on its own.
pub fn is_r_graph(g: &Multigraph) -> Option<usize> {
    let r = is_regular(g)?;
    if g.vertex_count() % 2 == 1 {
        return None;
    }
    let comps = g.components();
    if comps.len() == 1 {
        return (min_odd_cut(g).ok()?.weight >= r).then_some(r);
    }
    for comp in comps {
        if comp.len() % 2 == 1 {
            return None;
        }
        let (sub, _) = g.induced(&comp);
        if min_odd_cut(&sub).ok()?.weight < r {
            return None;
        }
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Multigraph {
        Multigraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn bridge_between_triangles() {
        let g = Multigraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap();
        assert_eq!(edge_connectivity(&g), 1);
    }

    #[test]
    fn disconnected_has_zero_connectivity() {
        let g = Multigraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(edge_connectivity(&g), 0);
        assert_eq!(min_odd_cut(&g).unwrap_err(), GraphError::Disconnected);
        assert!(gomory_hu(&g).is_err());
    }

    #[test]
    fn star_tree_is_the_star() {
        let g = Multigraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let tree = gomory_hu(&g).unwrap();
        let mut edges = tree.edges();
        edges.sort();
        assert_eq!(
            edges,
            vec![(VertexId(1), VertexId(0), 1), (VertexId(2), VertexId(0), 1), (VertexId(3), VertexId(0), 1)]
        );
    }

    #[test]
    fn four_cycle_capacities_are_two() {
        let tree = gomory_hu(&cycle(4)).unwrap();
        assert!(tree.edges().iter().all(|&(_, _, c)| c == 2));
    }

    #[test]
    fn double_edge_odd_cut() {
        let g = Multigraph::from_edges(2, [(0, 1), (0, 1)]).unwrap();
        assert_eq!(min_odd_cut(&g).unwrap().weight, 2);
        assert_eq!(is_r_graph(&g), Some(2));
        let tri = cycle(3);
        assert_eq!(min_odd_cut(&tri).unwrap_err(), GraphError::OddOrder(3));
    }

    #[test]
    fn two_even_components_can_form_an_r_graph() {
        let g = Multigraph::from_edges(4, [(0, 1), (0, 1), (2, 3), (2, 3)]).unwrap();
        assert_eq!(is_r_graph(&g), Some(2));
        let odd = Multigraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(is_r_graph(&odd), None);
    }

    #[test]
    fn cubic_with_bridge_is_not_an_r_graph() {
        // two copies of K4 minus an edge joined by a 2-edge cut
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)];
        edges.extend([(4, 5), (4, 6), (4, 7), (5, 6), (5, 7)]);
        edges.extend([(2, 6), (3, 7)]);
        let g = Multigraph::from_edges(8, edges).unwrap();
        assert_eq!(is_regular(&g), Some(3));
        assert_eq!(edge_connectivity(&g), 2);

        // two 5-vertex blocks joined by a single bridge
        let mut bridged = vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 4), (3, 4)];
        bridged.extend([(5, 6), (5, 7), (6, 7), (5, 8), (6, 8), (7, 9), (8, 9)]);
        bridged.push((4, 9));
        let b = Multigraph::from_edges(10, bridged).unwrap();
        assert_eq!(is_regular(&b), Some(3));
        assert_eq!(edge_connectivity(&b), 1);
        assert_eq!(is_r_graph(&b), None);
    }
}
