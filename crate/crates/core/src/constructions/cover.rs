use crate::graph::{Multigraph, VertexId};

/// Whether every edge has an endpoint in `cover`.
pub fn is_vertex_cover(g: &Multigraph, cover: &[VertexId]) -> bool {
    let mut inside = vec![false; g.vertex_count()];
    for v in cover {
        if v.0 < inside.len() {
            inside[v.0] = true;
        }
    }
    g.raw_edges().iter().all(|&(a, b)| inside[a] || inside[b])
}

/// Minimum vertex cover of the simple projection, by branch and bound.
///
/// Degree-0 vertices are dropped and the neighbour of a degree-1 vertex is
/// taken outright. Once every degree is at most 2 the remaining paths and
/// cycles are solved directly; otherwise the search branches on a vertex of
/// maximum degree (take it, or take all its neighbours). A greedy maximal
/// matching gives the lower bound.
pub fn min_vertex_cover(g: &Multigraph) -> Vec<VertexId> {
    let adj = g.simple_adjacency();
    let n = adj.len();
    let mut search = Search { adj: &adj, best: (0..n).collect(), taken: Vec::new() };
    // an initial upper bound: every non-isolated vertex
    search.best.retain(|&v| !adj[v].is_empty());
    let mut alive = vec![true; n];
    search.go(&mut alive);
    let mut out: Vec<VertexId> = search.best.into_iter().map(VertexId).collect();
    out.sort_unstable();
    out
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    best: Vec<usize>,
    taken: Vec<usize>,
}

impl Search<'_> {
    fn degree(&self, alive: &[bool], v: usize) -> usize {
        self.adj[v].iter().filter(|&&w| alive[w]).count()
    }

    fn take(&mut self, alive: &mut [bool], v: usize, trail: &mut Vec<usize>) {
        alive[v] = false;
        self.taken.push(v);
        trail.push(v);
    }

    fn go(&mut self, alive: &mut [bool]) {
        let mark = self.taken.len();
        let mut trail = Vec::new();
        // pendant rule, to a fixed point
        loop {
            let mut changed = false;
            for v in 0..alive.len() {
                if alive[v] && self.degree(alive, v) == 1 {
                    let w = *self.adj[v].iter().find(|&&w| alive[w]).unwrap();
                    self.take(alive, w, &mut trail);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        if self.taken.len() + self.matching_bound(alive) < self.best.len() {
            let pick = (0..alive.len()).filter(|&v| alive[v]).max_by_key(|&v| (self.degree(alive, v), usize::MAX - v));
            match pick {
                Some(v) if self.degree(alive, v) > 2 => {
                    let mut inner = Vec::new();
                    self.take(alive, v, &mut inner);
                    self.go(alive);
                    self.undo(alive, &mut inner);

                    let nbrs: Vec<usize> = self.adj[v].iter().copied().filter(|&w| alive[w]).collect();
                    alive[v] = false;
                    for w in nbrs {
                        self.take(alive, w, &mut inner);
                    }
                    self.go(alive);
                    self.undo(alive, &mut inner);
                    alive[v] = true;
                }
                _ => {
                    let extra = self.paths_and_cycles(alive);
                    if self.taken.len() + extra.len() < self.best.len() {
                        let mut best = self.taken.clone();
                        best.extend(extra);
                        self.best = best;
                    }
                }
            }
        }

        self.undo(alive, &mut trail);
        debug_assert_eq!(self.taken.len(), mark);
    }

    fn undo(&mut self, alive: &mut [bool], trail: &mut Vec<usize>) {
        for v in trail.drain(..).rev() {
            alive[v] = true;
            self.taken.pop();
        }
    }

    fn matching_bound(&self, alive: &[bool]) -> usize {
        let mut used = vec![false; alive.len()];
        let mut size = 0;
        for v in 0..alive.len() {
            if !alive[v] || used[v] {
                continue;
            }
            if let Some(&w) = self.adj[v].iter().find(|&&w| alive[w] && !used[w]) {
                used[v] = true;
                used[w] = true;
                size += 1;
            }
        }
        size
    }

    /// Optimal cover when every alive vertex has degree at most 2: every
    /// other vertex along each path or cycle.
    fn paths_and_cycles(&self, alive: &[bool]) -> Vec<usize> {
        let n = alive.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let walk = |start: usize, seen: &mut Vec<bool>, out: &mut Vec<usize>| {
            let mut order = vec![start];
            seen[start] = true;
            let mut cur = start;
            while let Some(&next) = self.adj[cur].iter().find(|&&w| alive[w] && !seen[w]) {
                seen[next] = true;
                order.push(next);
                cur = next;
            }
            // a path of L vertices needs floor(L/2), a cycle ceil(L/2)
            out.extend(order.iter().skip(1).step_by(2));
            let closes = order.len() > 2 && self.adj[cur].contains(&start);
            if closes && order.len() % 2 == 1 {
                out.push(cur);
            }
        };
        for v in 0..n {
            if alive[v] && !seen[v] && self.degree(alive, v) <= 1 {
                walk(v, &mut seen, &mut out);
            }
        }
        for v in 0..n {
            if alive[v] && !seen[v] {
                walk(v, &mut seen, &mut out);
            }
        }
        out
    }
}
