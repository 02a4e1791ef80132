use super::blossom::{self, Blossom, NONE};
use super::{allowed_adjacency, Matching};
use crate::graph::{EdgeId, Multigraph, VertexId};
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

/// How parallel copies are treated while branching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CopyMode {
    /// Every copy is a separate branch; matchings differing only in which
    /// copy they use are reported separately.
    #[default]
    Distinct,
    /// One branch per neighbour, using the lowest allowed copy.
    Canonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumOutcome {
    Completed,
    /// The visitor asked to stop.
    Stopped,
    /// A node or time limit was hit before the tree was exhausted.
    BudgetExhausted,
}

/// Node and wall-clock limits shared by every enumerator of one search,
/// possibly across threads.
#[derive(Debug)]
pub(crate) struct Budget {
    pub(crate) nodes: AtomicU64,
    pub(crate) max_nodes: Option<u64>,
    pub(crate) deadline: Option<Instant>,
    pub(crate) tripped: AtomicBool,
    pub(crate) cancelled: AtomicBool,
}

impl Budget {
    pub(crate) fn new(max_nodes: Option<u64>, deadline: Option<Instant>) -> Self {
        Budget {
            nodes: AtomicU64::new(0),
            max_nodes,
            deadline,
            tripped: AtomicBool::new(false),
            cancelled: AtomicBool::new(false),
        }
    }

    /// Counts one node; false once any limit has been reached.
    pub(crate) fn tick(&self) -> bool {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.tripped.load(Ordering::Relaxed) {
            return false;
        }
        let over_nodes = self.max_nodes.is_some_and(|max| count > max);
        let over_time = count.is_multiple_of(256) && self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.tripped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn is_tripped(&self) -> bool {
        self.tripped.load(Ordering::Relaxed)
    }
}

/// Backtracking enumeration of perfect matchings.
///
/// Branches on the lowest uncovered vertex, over its incident allowed edges in
/// id order. A witness perfect matching of the uncovered part is carried down
/// the tree: a branch that agrees with the witness needs no check, any other
/// branch repairs the witness with one augmenting-path search, and branches
/// that cannot be completed are cut immediately.
pub struct PmEnumerator<'g> {
    g: &'g Multigraph,
    blocked: Vec<bool>,
    mode: CopyMode,
    budget: Option<&'g Budget>,
    own_budget: Option<Budget>,
    nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmEnumeration {
    pub matchings: Vec<Matching>,
    pub truncated: bool,
}

/// All perfect matchings with parallel copies distinguished, in the
/// enumerator's deterministic order, stopping after `cap`.
pub fn enumerate_perfect_matchings(g: &Multigraph, cap: usize) -> PmEnumeration {
    let mut matchings = Vec::new();
    let mut truncated = false;
    PmEnumerator::new(g).for_each(|m| {
        if matchings.len() == cap {
            truncated = true;
            return ControlFlow::Break(());
        }
        matchings.push(m);
        ControlFlow::Continue(())
    });
    PmEnumeration { matchings, truncated }
}

impl<'g> PmEnumerator<'g> {
    pub fn new(g: &'g Multigraph) -> Self {
        PmEnumerator {
            g,
            blocked: vec![false; g.edge_count()],
            mode: CopyMode::Distinct,
            budget: None,
            own_budget: None,
            nodes: 0,
        }
    }

    pub fn forbid(mut self, edges: &[EdgeId]) -> Self {
        for &e in edges {
            if e.0 < self.blocked.len() {
                self.blocked[e.0] = true;
            }
        }
        self
    }

    pub(crate) fn blocked_mask(mut self, mask: &[bool]) -> Self {
        self.blocked.copy_from_slice(mask);
        self
    }

    pub fn mode(mut self, mode: CopyMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn limits(mut self, max_nodes: Option<u64>, deadline: Option<Instant>) -> Self {
        self.own_budget = Some(Budget::new(max_nodes, deadline));
        self
    }

    pub(crate) fn shared_budget(mut self, budget: &'g Budget) -> Self {
        self.budget = Some(budget);
        self
    }

    /// Search-tree nodes visited by the last [`for_each`](Self::for_each).
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn for_each<F>(&mut self, mut visit: F) -> EnumOutcome
    where
        F: FnMut(Matching) -> ControlFlow<()>,
    {
        self.nodes = 0;
        let n = self.g.vertex_count();
        if n % 2 == 1 {
            return EnumOutcome::Completed;
        }
        let adj = allowed_adjacency(self.g, &self.blocked);
        let mut alive = vec![true; n];
        let witness = blossom::maximum_matching(&adj, &alive);
        if !blossom::is_perfect(&witness, &alive) {
            return EnumOutcome::Completed;
        }
        let own = self.own_budget.take();
        let budget = self.budget.or(own.as_ref());
        let mut state = State {
            g: self.g,
            blocked: &self.blocked,
            adj: &adj,
            mode: self.mode,
            budget,
            nodes: 0,
            exhausted: false,
            chosen: Vec::with_capacity(n / 2),
        };
        let flow = state.recurse(0, &mut alive, &witness, &mut visit);
        self.nodes = state.nodes;
        let exhausted = state.exhausted;
        self.own_budget = own;
        match flow {
            ControlFlow::Continue(()) => EnumOutcome::Completed,
            ControlFlow::Break(()) if exhausted => EnumOutcome::BudgetExhausted,
            ControlFlow::Break(()) => EnumOutcome::Stopped,
        }
    }
}

struct State<'a> {
    g: &'a Multigraph,
    blocked: &'a [bool],
    adj: &'a [Vec<usize>],
    mode: CopyMode,
    budget: Option<&'a Budget>,
    nodes: u64,
    exhausted: bool,
    chosen: Vec<EdgeId>,
}

impl State<'_> {
    fn recurse<F>(&mut self, from: usize, alive: &mut [bool], witness: &[usize], visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(Matching) -> ControlFlow<()>,
    {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if !b.tick() || b.cancelled.load(Ordering::Relaxed) {
                self.exhausted = b.is_tripped();
                return ControlFlow::Break(());
            }
        }
        let Some(v) = (from..alive.len()).find(|&v| alive[v]) else {
            return visit(Matching::new(self.chosen.clone()));
        };
        for &e in self.g.incident(VertexId(v)) {
            if self.blocked[e.0] {
                continue;
            }
            let w = self.g.other_end(e, VertexId(v)).0;
            if !alive[w] {
                continue;
            }
            if self.mode == CopyMode::Canonical {
                // incidence lists are in id order, so the first copy seen is the lowest
                if self.seen_neighbour(v, w, e) {
                    continue;
                }
            }
            alive[v] = false;
            alive[w] = false;
            self.chosen.push(e);
            let flow = if witness[v] == w {
                self.recurse(v + 1, alive, witness, visit)
            } else {
                let mut repaired = witness.to_vec();
                let (a, b) = (repaired[v], repaired[w]);
                repaired[a] = NONE;
                repaired[b] = NONE;
                repaired[v] = NONE;
                repaired[w] = NONE;
                if Blossom::new(self.adj, alive).augment_from(&mut repaired, a) {
                    self.recurse(v + 1, alive, &repaired, visit)
                } else {
                    ControlFlow::Continue(())
                }
            };
            self.chosen.pop();
            alive[v] = true;
            alive[w] = true;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn seen_neighbour(&self, v: usize, w: usize, e: EdgeId) -> bool {
        self.g
            .incident(VertexId(v))
            .iter()
            .take_while(|&&f| f != e)
            .any(|&f| !self.blocked[f.0] && self.g.other_end(f, VertexId(v)).0 == w)
    }
}
