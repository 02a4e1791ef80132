//! Verification reports: one value rendered as JSON or as a text table.

use crate::matching::SearchStats;
use serde::{Deserialize, Serialize};
use std::fmt::Write;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckVerdict {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub claim: String,
    /// Stable identifier of the property checked.
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub verdict: CheckVerdict,
}

impl Check {
    /// Passes iff `expected == computed`.
    pub fn compare(claim: impl Into<String>, anchor: &str, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let verdict = if expected == computed { CheckVerdict::Pass } else { CheckVerdict::Fail };
        Check { claim: claim.into(), anchor: anchor.into(), expected, computed, verdict }
    }

    pub fn unknown(claim: impl Into<String>, anchor: &str, expected: impl ToString, computed: impl ToString) -> Self {
        Check {
            claim: claim.into(),
            anchor: anchor.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            verdict: CheckVerdict::Unknown,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphIdentity {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub n: usize,
    pub m: usize,
}

/// Search counters. `elapsed_ms` is only filled in when timing is requested,
/// so that reports from single-worker runs are byte-identical.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub anchor: String,
    pub nodes: u64,
    pub pms_enumerated: u64,
    pub leaf_checks: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl SearchSummary {
    pub fn new(anchor: &str, stats: &SearchStats, timing: bool) -> Self {
        SearchSummary {
            anchor: anchor.into(),
            nodes: stats.nodes,
            pms_enumerated: stats.pms_enumerated,
            leaf_checks: stats.leaf_checks,
            elapsed_ms: timing.then_some(stats.elapsed_ms),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphIdentity>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub searches: Vec<SearchSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>) -> Self {
        VerificationReport { schema_version: REPORT_SCHEMA_VERSION, command: command.into(), ..Default::default() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn verdict(&self) -> CheckVerdict {
        let has = |v| self.checks.iter().any(|c| c.verdict == v);
        if has(CheckVerdict::Fail) {
            CheckVerdict::Fail
        } else if has(CheckVerdict::Unknown) {
            CheckVerdict::Unknown
        } else {
            CheckVerdict::Pass
        }
    }

    /// 0 all pass, 1 any fail, 2 any unknown (and no fail).
    pub fn exit_code(&self) -> i32 {
        match self.verdict() {
            CheckVerdict::Pass => 0,
            CheckVerdict::Fail => 1,
            CheckVerdict::Unknown => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.command).unwrap();
        if let Some(g) = &self.graph {
            let mut id = g.family.clone();
            if let Some(k) = g.k {
                write!(id, " k={k}").unwrap();
            }
            if let Some(v) = &g.variant {
                write!(id, " variant={v}").unwrap();
            }
            writeln!(out, "graph: {id} (n={}, m={})", g.n, g.m).unwrap();
        }
        let rows: Vec<[&str; 5]> = self
            .checks
            .iter()
            .map(|c| {
                let v = match c.verdict {
                    CheckVerdict::Pass => "pass",
                    CheckVerdict::Fail => "FAIL",
                    CheckVerdict::Unknown => "unknown",
                };
                [v, c.anchor.as_str(), c.claim.as_str(), c.expected.as_str(), c.computed.as_str()]
            })
            .collect();
        let header = ["verdict", "anchor", "claim", "expected", "computed"];
        let width: Vec<usize> =
            (0..5).map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0)).collect();
        let line = |cells: [&str; 5]| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate() {
                if i == 4 {
                    s.push_str(c);
                } else {
                    write!(s, "{c:<w$}  ", w = width[i]).unwrap();
                }
            }
            s.trim_end().to_string()
        };
        if !rows.is_empty() {
            writeln!(out, "{}", line(header)).unwrap();
        }
        for r in rows {
            writeln!(out, "{}", line(r)).unwrap();
        }
        for s in &self.searches {
            write!(
                out,
                "search {}: {} nodes, {} matchings, {} leaf checks",
                s.anchor, s.nodes, s.pms_enumerated, s.leaf_checks
            )
            .unwrap();
            if let Some(ms) = s.elapsed_ms {
                write!(out, ", {ms} ms").unwrap();
            }
            out.push('\n');
        }
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        let overall = match self.verdict() {
            CheckVerdict::Pass => "pass",
            CheckVerdict::Fail => "fail",
            CheckVerdict::Unknown => "unknown",
        };
        writeln!(out, "overall: {overall}").unwrap();
        out
    }
}
