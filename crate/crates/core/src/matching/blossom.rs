//! Edmonds' blossom algorithm on a simple adjacency list with a vertex mask.
//!
//! Kept deliberately small: callers hand in the current mate array and the
//! routine only searches for augmenting paths from exposed live vertices, so
//! an almost-perfect witness can be repaired with a single search.

pub(crate) const NONE: usize = usize::MAX;

pub(crate) struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    alive: &'a [bool],
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    lca_mark: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Blossom<'a> {
    pub(crate) fn new(adj: &'a [Vec<usize>], alive: &'a [bool]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            alive,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            lca_mark: vec![false; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn lca(&mut self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        self.lca_mark.iter_mut().for_each(|m| *m = false);
        loop {
            a = self.base[a];
            self.lca_mark[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if self.lca_mark[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// Searches an augmenting path from the exposed vertex `root`; on success
    /// flips it in `mate` and returns true.
    pub(crate) fn augment_from(&mut self, mate: &mut [usize], root: usize) -> bool {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if !self.alive[to] || self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.alive[i] && self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        let mut u = to;
                        while u != NONE {
                            let pv = self.parent[u];
                            let ppv = mate[pv];
                            mate[u] = pv;
                            mate[pv] = u;
                            u = ppv;
                        }
                        return true;
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        false
    }

    /// Grows `mate` to a maximum matching of the live subgraph.
    pub(crate) fn maximize(&mut self, mate: &mut [usize]) {
        for v in 0..self.adj.len() {
            if self.alive[v] && mate[v] == NONE {
                self.augment_from(mate, v);
            }
        }
    }
}

/// Maximum matching of the live subgraph starting from a greedy matching.
pub(crate) fn maximum_matching(adj: &[Vec<usize>], alive: &[bool]) -> Vec<usize> {
    let n = adj.len();
    let mut mate = vec![NONE; n];
    for v in 0..n {
        if !alive[v] || mate[v] != NONE {
            continue;
        }
        if let Some(&w) = adj[v].iter().find(|&&w| alive[w] && w != v && mate[w] == NONE) {
            mate[v] = w;
            mate[w] = v;
        }
    }
    Blossom::new(adj, alive).maximize(&mut mate);
    mate
}

pub(crate) fn is_perfect(mate: &[usize], alive: &[bool]) -> bool {
    mate.iter().zip(alive).all(|(&m, &a)| !a || m != NONE)
}
