//! Brute-force checks of the structural facts about Petersen-derived
//! multigraphs, run as test oracles.

use super::classify::{classify_type, phi_omega, PmType};
use super::{enumerate_perfect_matchings, Collection, Matching, MatchingError};
use crate::constructions::{build_q, petersen_plus, BlockRole, Construction};
use crate::graph::GraphBuilder;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Hosts here are small; enumeration past this is treated as a bug.
const PM_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    /// Families examined.
    pub families: u64,
    pub violations: u64,
    /// Types of the first offending family, if any.
    pub counterexample: Option<Vec<u8>>,
}

impl OracleCheck {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }

    fn record(&mut self, ok: bool, types: impl FnOnce() -> Vec<u8>) {
        self.families += 1;
        if !ok {
            self.violations += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(types());
            }
        }
    }
}

/// Hosts handled here have at most 128 edges, so a family's edge set fits
/// in one word.
fn edge_mask(m: &Matching) -> u128 {
    m.edges().iter().fold(0, |acc, e| acc | 1 << e.0)
}

fn masks(host: &Construction, pms: &[Matching]) -> Result<Vec<u128>, MatchingError> {
    if host.graph.edge_count() > 128 {
        return Err(MatchingError::Internal(format!("{} edges; at most 128 supported", host.graph.edge_count())));
    }
    Ok(pms.iter().map(edge_mask).collect())
}

/// Calls `visit` on every set of `size` pairwise disjoint members of `sets`
/// (as increasing index lists). Each level only scans the members disjoint
/// from everything picked so far.
fn for_each_disjoint_family(sets: &[u128], size: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(sets: &[u128], size: usize, cands: &[usize], picked: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if picked.len() == size {
            visit(picked);
            return;
        }
        for (pos, &i) in cands.iter().enumerate() {
            if cands.len() - pos < size - picked.len() {
                break;
            }
            let rest: Vec<usize> = cands[pos + 1..].iter().copied().filter(|&j| sets[j] & sets[i] == 0).collect();
            picked.push(i);
            go(sets, size, &rest, picked, visit);
            picked.pop();
        }
    }
    let all: Vec<usize> = (0..sets.len()).collect();
    go(sets, size, &all, &mut Vec::with_capacity(size), visit);
}

fn typed_pms(host: &Construction) -> Result<(Vec<Matching>, Vec<u8>), MatchingError> {
    let all = enumerate_perfect_matchings(&host.graph, PM_CAP);
    if all.truncated {
        return Err(MatchingError::Internal("perfect-matching enumeration truncated".into()));
    }
    let types = all
        .matchings
        .iter()
        .map(|m| match classify_type(host, m)? {
            PmType::Type(t) => Ok(t),
            PmType::Unclassified => Err(MatchingError::Internal("unclassified perfect matching".into())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((all.matchings, types))
}

/// In `P + M_j`, every two disjoint perfect matchings include one of type `j`.
pub fn verify_forced_type(j: u8) -> Result<OracleCheck, MatchingError> {
    if j > 5 {
        return Err(MatchingError::BadType(j));
    }
    let host = petersen_plus(&[j]).map_err(|e| MatchingError::Internal(e.to_string()))?;
    let (pms, types) = typed_pms(&host)?;
    let sets = masks(&host, &pms)?;
    let mut check = OracleCheck::default();
    for_each_disjoint_family(&sets, 2, &mut |f| {
        let (a, b) = (types[f[0]], types[f[1]]);
        check.record(a == j || b == j, || vec![a, b]);
    });
    Ok(check)
}

/// In `P^M` for a multiset `M` of `k <= 3` types, every family of `k + 1`
/// pairwise disjoint perfect matchings contains `M` by type.
pub fn verify_subcollection(multiset: &[u8]) -> Result<OracleCheck, MatchingError> {
    if multiset.len() > 3 {
        return Err(MatchingError::TooLarge(multiset.len()));
    }
    let host = petersen_plus(multiset).map_err(|e| MatchingError::Internal(e.to_string()))?;
    let (pms, types) = typed_pms(&host)?;
    let sets = masks(&host, &pms)?;
    let wanted: Collection<u8> = multiset.iter().copied().collect();
    let need: [usize; 6] = std::array::from_fn(|t| wanted.multiplicity(&(t as u8)));
    let mut check = OracleCheck::default();
    for_each_disjoint_family(&sets, multiset.len() + 1, &mut |f| {
        // type counts of the family; a subcollection test on abstract types
        let mut got = [0usize; 6];
        for &i in f {
            got[types[i] as usize] += 1;
        }
        check.record(need.iter().zip(&got).all(|(n, g)| g >= n), || f.iter().map(|&i| types[i]).collect());
    });
    Ok(check)
}

/// Every multiset over `{0..5}` with `1..=max` elements, each sorted.
pub fn type_multisets(max: usize) -> Vec<Vec<u8>> {
    fn go(from: u8, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for t in from..6 {
            cur.push(t);
            go(t, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, max, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// `Q_k` completed to a `4k`-regular graph by one apex vertex joined to
/// `z_1` and to `z_2` by `2k` edges each.
pub fn apex_host(k: usize) -> Result<Construction, MatchingError> {
    let q = build_q(k).map_err(|e| MatchingError::Internal(e.to_string()))?;
    let mut builder = GraphBuilder::from_graph(&q.graph);
    let apex = builder.add_vertex();
    let block = &q.blocks[0];
    for &z in &block.z {
        for _ in 0..2 * k {
            builder.push(apex.0, z.0);
        }
    }
    let mut host = Construction {
        name: format!("Q_{k}+apex"),
        graph: builder.build(),
        blocks: q.blocks.clone(),
        layers: Vec::new(),
        marked_edges: BTreeMap::new(),
    };
    host.refresh_sides();
    Ok(host)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiDiagnostic {
    pub families: u64,
    /// Families where some `ω(φ(V^i))` differs from `2k - 1`.
    pub violations: u64,
    /// How often each `ω` value was seen, over all families and both sides.
    pub omega_counts: BTreeMap<usize, u64>,
}

/// Over every family of `4k - 2` pairwise disjoint perfect matchings of
/// `host`, computes `ω(φ(V^1))` and `ω(φ(V^2))` on every Q-block.
pub fn phi_diagnostic(host: &Construction, k: usize) -> Result<PhiDiagnostic, MatchingError> {
    let blocks: Vec<_> = host.blocks_with_role(BlockRole::QBlock).collect();
    if blocks.is_empty() {
        return Err(MatchingError::MissingProvenance("Q-block"));
    }
    if k == 0 {
        return Err(MatchingError::Internal("k must be at least 1".into()));
    }
    let size = 4 * k - 2;
    let all = enumerate_perfect_matchings(&host.graph, PM_CAP);
    if all.truncated {
        return Err(MatchingError::Internal("perfect-matching enumeration truncated".into()));
    }
    let sets = masks(host, &all.matchings)?;
    let mut out = PhiDiagnostic::default();
    let mut error = None;
    for_each_disjoint_family(&sets, size, &mut |f| {
        let family: Vec<Matching> = f.iter().map(|&i| all.matchings[i].clone()).collect();
        let mut ok = true;
        for block in &blocks {
            for side in &block.external {
                match phi_omega(&family, side) {
                    Ok((_, w)) => {
                        *out.omega_counts.entry(w).or_default() += 1;
                        ok &= w == 2 * k - 1;
                    }
                    Err(e) => error = Some(e),
                }
            }
        }
        out.families += 1;
        if !ok {
            out.violations += 1;
        }
    });
    match error {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_regular;

    #[test]
    fn multiset_count() {
        let all = type_multisets(3);
        assert_eq!(all.len(), 6 + 21 + 56);
        assert_eq!(all[0], vec![0]);
    }

    #[test]
    fn forced_type_small() {
        for j in [0, 1] {
            let c = verify_forced_type(j).unwrap();
            assert!(c.holds(), "j={j}: {c:?}");
            assert!(c.families > 0);
        }
    }

    #[test]
    fn subcollection_small() {
        for m in [vec![0], vec![0, 0], vec![0, 1, 3]] {
            assert!(verify_subcollection(&m).unwrap().holds(), "{m:?}");
        }
        assert_eq!(verify_subcollection(&[0, 0, 0, 0]).unwrap_err(), MatchingError::TooLarge(4));
    }

    #[test]
    fn host_is_regular() {
        let h = apex_host(1).unwrap();
        assert_eq!(h.graph.vertex_count(), 20);
        assert_eq!(is_regular(&h.graph), Some(4));
        assert_eq!(h.q_blocks()[0].external.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 2]);
    }
}
