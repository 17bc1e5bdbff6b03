//! Suite reports: deterministic JSON plus a plain-text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::corpus::{CensusEntry, Corpus};
use super::spec::InstanceSpec;
use super::suite::{CheckResult, Verdict};
use crate::mutation::Mutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceCounts {
    pub law_lattices: usize,
    pub spaces: usize,
    pub sampled_spaces: usize,
    pub orders: usize,
    pub sampled_orders: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Everything a suite run produced. Contains no timings, so equal inputs give equal JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub spec: InstanceSpec,
    pub census: Vec<CensusEntry>,
    pub instances: InstanceCounts,
    pub generation_skips: Vec<String>,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    /// The mutation active during the run, if any.
    pub mutation: Option<Mutation>,
}

impl SuiteReport {
    pub fn new(spec: &InstanceSpec, corpus: &Corpus, checks: Vec<CheckResult>, mutation: Option<Mutation>) -> Self {
        let count = |v: Verdict| checks.iter().filter(|c| c.verdict == v).count();
        let summary = Summary {
            checks: checks.len(),
            passed: count(Verdict::Pass),
            failed: count(Verdict::Fail),
            skipped: count(Verdict::Skipped),
        };
        let sampled_spaces = corpus.spaces.iter().filter(|c| !c.exhaustive).count();
        let sampled_orders = corpus.orders.iter().filter(|c| !c.exhaustive).count();
        Self {
            spec: spec.clone(),
            census: corpus.census.clone(),
            instances: InstanceCounts {
                law_lattices: corpus.law_lattices.len(),
                spaces: corpus.spaces.len() - sampled_spaces,
                sampled_spaces,
                orders: corpus.orders.len() - sampled_orders,
                sampled_orders,
            },
            generation_skips: corpus.skipped.clone(),
            checks,
            summary,
            mutation,
        }
    }

    /// No check failed. Skipped checks do not count against a run.
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(m) = self.mutation {
            let _ = writeln!(out, "mutation active: {}", m.name());
        }
        let i = &self.instances;
        let _ = writeln!(
            out,
            "instances: {} law lattices, {} spaces (+{} sampled), {} orders (+{} sampled)",
            i.law_lattices, i.spaces, i.sampled_spaces, i.orders, i.sampled_orders
        );
        for s in &self.generation_skips {
            let _ = writeln!(out, "generation skipped: {s}");
        }
        for c in &self.checks {
            let tag = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "SKIP",
            };
            let _ = writeln!(
                out,
                "{tag:<4} {:<36} {} instances, {} passed, {} failed, {} skipped",
                c.id, c.instances, c.passed, c.failed, c.skipped
            );
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "     witness: {w}");
            }
            if c.verdict == Verdict::Skipped {
                if let Some(r) = &c.skip_reason {
                    let _ = writeln!(out, "     skipped: {r}");
                }
            }
            for n in &c.notes {
                let _ = writeln!(out, "     note: {n}");
            }
        }
        let s = &self.summary;
        let _ = writeln!(out, "{} checks: {} passed, {} failed, {} skipped", s.checks, s.passed, s.failed, s.skipped);
        out
    }
}
