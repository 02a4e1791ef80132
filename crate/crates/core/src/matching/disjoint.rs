use super::enumerate::{Budget, CopyMode, EnumOutcome, PmEnumerator};
use super::{find_perfect_matching_masked, Matching, MatchingError};
use crate::graph::Multigraph;
use serde::{Deserialize, Serialize};
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Limits and execution settings for [`has_disjoint_pms`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    pub workers: usize,
    /// `Canonical` branches once per neighbour. The verdict is the same as
    /// with `Distinct`: what remains after removing a family depends only on
    /// how many copies of each pair it used, not on which ones.
    pub copy_mode: CopyMode,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: None, max_time: None, workers: 1, copy_mode: CopyMode::Canonical }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "family", rename_all = "lowercase")]
pub enum Verdict {
    Yes(Vec<Matching>),
    No,
    Unknown,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub pms_enumerated: u64,
    pub leaf_checks: u64,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointFamilyDecision {
    pub verdict: Verdict,
    pub stats: SearchStats,
}

/// Checks that every member is a perfect matching and that members are
/// pairwise edge-disjoint.
pub fn validate_family(g: &Multigraph, family: &[Matching]) -> Result<(), MatchingError> {
    for m in family {
        if !m.is_perfect_in(g) {
            return Err(MatchingError::NotPerfect);
        }
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !family[i].is_disjoint(&family[j]) {
                return Err(MatchingError::Overlap(i, j));
            }
        }
    }
    Ok(())
}

/// Decides whether `g` has `m` pairwise disjoint perfect matchings.
///
/// Depth-first over levels: each level enumerates the perfect matchings of
/// `g` minus every edge used by the levels above; the last level only asks
/// for existence. `No` is returned only after the whole tree is exhausted,
/// `Unknown` whenever a limit stops the search first.
pub fn has_disjoint_pms(g: &Multigraph, m: usize, budget: &SearchBudget) -> DisjointFamilyDecision {
    let start = Instant::now();
    let shared = Budget::new(budget.max_nodes, budget.max_time.map(|d| start + d));
    let ctx = Ctx {
        g,
        m,
        mode: budget.copy_mode,
        budget: &shared,
        pms: AtomicU64::new(0),
        leaves: AtomicU64::new(0),
        found: AtomicBool::new(false),
        certificate: Mutex::new(None),
    };

    let outcome = if m == 0 {
        *ctx.certificate.lock().unwrap() = Some(Vec::new());
        Outcome::Found
    } else if budget.workers <= 1 || m == 1 {
        let mut used = vec![false; g.edge_count()];
        let mut family = Vec::with_capacity(m);
        ctx.level(0, &mut used, &mut family, None)
    } else {
        let workers = budget.workers;
        let results: Vec<Outcome> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|id| {
                    let ctx = &ctx;
                    scope.spawn(move || {
                        let mut used = vec![false; g.edge_count()];
                        let mut family = Vec::with_capacity(m);
                        ctx.level(0, &mut used, &mut family, Some((id, workers)))
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        });
        if results.contains(&Outcome::Found) {
            Outcome::Found
        } else if results.contains(&Outcome::Budget) {
            Outcome::Budget
        } else {
            Outcome::Exhausted
        }
    };

    let verdict = match outcome {
        Outcome::Found => {
            let family = ctx.certificate.lock().unwrap().take().expect("certificate recorded");
            validate_family(g, &family).expect("certificate revalidates");
            Verdict::Yes(family)
        }
        Outcome::Exhausted => Verdict::No,
        Outcome::Budget => Verdict::Unknown,
    };
    DisjointFamilyDecision {
        verdict,
        stats: SearchStats {
            nodes: shared.nodes.load(Ordering::Relaxed),
            pms_enumerated: ctx.pms.load(Ordering::Relaxed),
            leaf_checks: ctx.leaves.load(Ordering::Relaxed),
            elapsed_ms: start.elapsed().as_millis(),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Found,
    Exhausted,
    Budget,
}

struct Ctx<'g> {
    g: &'g Multigraph,
    m: usize,
    mode: CopyMode,
    budget: &'g Budget,
    pms: AtomicU64,
    leaves: AtomicU64,
    found: AtomicBool,
    certificate: Mutex<Option<Vec<Matching>>>,
}

impl Ctx<'_> {
    fn level(
        &self,
        depth: usize,
        used: &mut [bool],
        family: &mut Vec<Matching>,
        partition: Option<(usize, usize)>,
    ) -> Outcome {
        if depth + 1 == self.m {
            self.leaves.fetch_add(1, Ordering::Relaxed);
            if !self.budget.tick() {
                return Outcome::Budget;
            }
            return match find_perfect_matching_masked(self.g, used) {
                Some(last) => {
                    family.push(last);
                    self.record(family);
                    family.pop();
                    Outcome::Found
                }
                None => Outcome::Exhausted,
            };
        }

        let mut index = 0usize;
        let mut result = Outcome::Exhausted;
        let mut enumerator = PmEnumerator::new(self.g).blocked_mask(used).mode(self.mode).shared_budget(self.budget);
        let snapshot = used.to_vec();
        let outcome = enumerator.for_each(|pm| {
            if self.found.load(Ordering::Relaxed) {
                result = Outcome::Found;
                return ControlFlow::Break(());
            }
            let mine = partition.is_none_or(|(id, workers)| index % workers == id);
            index += 1;
            if !mine {
                return ControlFlow::Continue(());
            }
            self.pms.fetch_add(1, Ordering::Relaxed);
            let mut next = snapshot.clone();
            for &e in pm.edges() {
                next[e.0] = true;
            }
            family.push(pm);
            let below = self.level(depth + 1, &mut next, family, None);
            family.pop();
            match below {
                Outcome::Exhausted => ControlFlow::Continue(()),
                other => {
                    result = other;
                    ControlFlow::Break(())
                }
            }
        });
        if outcome == EnumOutcome::BudgetExhausted && result == Outcome::Exhausted {
            result = Outcome::Budget;
        }
        result
    }

    fn record(&self, family: &[Matching]) {
        let mut slot = self.certificate.lock().unwrap();
        if slot.is_none() {
            *slot = Some(family.to_vec());
        }
        self.found.store(true, Ordering::Relaxed);
        self.budget.cancelled.store(true, Ordering::Relaxed);
    }
}
