//! The theorem-regression suite: one check per statement, run over the corpus.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks;
use super::corpus::Corpus;
use super::report::SuiteReport;
use super::spec::{InstanceSpec, LatticeCache};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::mutation;
use crate::sober::{sobrify, SobrificationResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub statement: String,
    /// Which instances the check runs on.
    pub envelope: String,
    pub verdict: Verdict,
    pub instances: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    /// First failure in corpus order, prefixed with the instance origin.
    pub witness: Option<String>,
    /// First budget refusal in corpus order.
    pub skip_reason: Option<String>,
    pub notes: Vec<String>,
}

/// Outcome of one instance.
pub(crate) enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

impl From<Result<Option<String>>> for Outcome {
    fn from(r: Result<Option<String>>) -> Self {
        match r {
            Ok(None) => Outcome::Pass,
            Ok(Some(w)) => Outcome::Fail(w),
            Err(e @ Error::BudgetExceeded { .. }) => Outcome::Skip(e.to_string()),
            Err(e) => Outcome::Fail(format!("error: {e}")),
        }
    }
}

/// Per-check accumulator; merging is order-dependent only through the
/// first witness, and instances are always merged in corpus order.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub instances: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub witness: Option<String>,
    pub skip_reason: Option<String>,
    pub notes: Vec<String>,
}

impl Tally {
    pub(crate) fn record(&mut self, origin: &str, outcome: Outcome) {
        self.instances += 1;
        match outcome {
            Outcome::Pass => self.passed += 1,
            Outcome::Fail(w) => {
                self.failed += 1;
                self.witness.get_or_insert_with(|| format!("{origin}: {w}"));
            }
            Outcome::Skip(r) => {
                self.skipped += 1;
                self.skip_reason.get_or_insert_with(|| format!("{origin}: {r}"));
            }
        }
    }

    /// Runs `f` on every item in parallel and records the outcomes in item order.
    pub(crate) fn over<T, O, F>(items: &[T], origin: O, f: F) -> Self
    where
        T: Sync,
        O: Fn(&T) -> String,
        F: Fn(&T) -> Result<Option<String>> + Sync + Send,
    {
        let outcomes: Vec<Outcome> = items.par_iter().map(|t| Outcome::from(f(t))).collect();
        let mut tally = Tally::default();
        for (t, o) in items.iter().zip(outcomes) {
            tally.record(&origin(t), o);
        }
        tally
    }

    pub(crate) fn merge(mut self, other: Tally) -> Self {
        self.instances += other.instances;
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        if self.skip_reason.is_none() {
            self.skip_reason = other.skip_reason;
        }
        self.notes.extend(other.notes);
        self
    }

    pub(crate) fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    fn verdict(&self) -> Verdict {
        if self.failed > 0 {
            Verdict::Fail
        } else if self.passed == 0 {
            Verdict::Skipped
        } else {
            Verdict::Pass
        }
    }
}

/// What a check sees.
pub struct Ctx<'a> {
    pub spec: &'a InstanceSpec,
    pub corpus: &'a Corpus,
    pub budget: &'a Budget,
    sobrified: OnceLock<Vec<Result<SobrificationResult>>>,
}

impl<'a> Ctx<'a> {
    pub fn new(spec: &'a InstanceSpec, corpus: &'a Corpus) -> Self {
        Self { spec, corpus, budget: &spec.budget, sobrified: OnceLock::new() }
    }

    /// Sobrifies every corpus space once. Call outside parallel sections,
    /// before [`Ctx::sobrification`].
    pub(crate) fn warm_sobrifications(&self) {
        self.sobrified.get_or_init(|| {
            self.corpus.spaces.par_iter().map(|c| sobrify(c.space.clone(), self.budget)).collect()
        });
    }

    /// The sobrification of the `i`-th corpus space.
    pub(crate) fn sobrification(&self, i: usize) -> Result<&SobrificationResult> {
        self.warm_sobrifications();
        self.sobrified.get().expect("initialised")[i].as_ref().map_err(Clone::clone)
    }
}

/// One registered statement.
pub struct TheoremCheck {
    pub id: &'static str,
    pub statement: &'static str,
    pub envelope: &'static str,
    pub run: fn(&Ctx) -> Tally,
}

impl TheoremCheck {
    pub fn evaluate(&self, ctx: &Ctx) -> CheckResult {
        let tally = (self.run)(ctx);
        let mut notes = tally.notes.clone();
        if tally.instances == 0 {
            notes.push("no instances: generation refused by the budget".to_string());
        }
        CheckResult {
            id: self.id.to_string(),
            statement: self.statement.to_string(),
            envelope: self.envelope.to_string(),
            verdict: tally.verdict(),
            instances: tally.instances,
            passed: tally.passed,
            failed: tally.failed,
            skipped: tally.skipped,
            witness: tally.witness,
            skip_reason: tally.skip_reason,
            notes,
        }
    }
}

/// Every check id, in report order. The registry must match it exactly.
pub const IN_SCOPE: &[&str] = &[
    "residuation-laws",
    "l-order-examples",
    "zadeh-adjunction",
    "lower-upper-sets",
    "suprema",
    "convex-structure-axioms",
    "hull-operator",
    "hull-laws",
    "map-classes",
    "hull-image-characterization",
    "finite-subsets",
    "polytope-compact-collapse",
    "sobriety-decision",
    "phi-lemma",
    "cp-space-sober",
    "f-closure-system",
    "convexity-preserving-consequences",
    "xf-sober",
    "xi-properties",
    "f-closed-transfer",
    "sobrification-universal",
    "discretized-interval-example",
    "specialization-hull",
    "specialization-sub",
    "scott-structure",
    "scott-cp-equivalence",
    "sober-join-semilattice",
    "sober-join-characterization",
    "xi-scott-cp",
    "completion-scott-structure",
    "completion-universal",
    "completion-characterization",
];

pub fn registry() -> Vec<TheoremCheck> {
    let mut all = checks::lattice::checks();
    all.extend(checks::convex::checks());
    all.extend(checks::sober::checks());
    all.extend(checks::scott::checks());
    all
}

/// Generates the corpus and runs every check; ids in `only` restrict the run.
pub fn run_suite(spec: &InstanceSpec) -> Result<SuiteReport> {
    run_selected(spec, None)
}

pub fn run_selected(spec: &InstanceSpec, only: Option<&[String]>) -> Result<SuiteReport> {
    let mut cache = LatticeCache::default();
    let corpus = Corpus::generate(spec, &mut cache)?;
    let ctx = Ctx::new(spec, &corpus);
    let checks: Vec<CheckResult> = registry()
        .iter()
        .filter(|c| only.is_none_or(|ids| ids.iter().any(|i| i == c.id)))
        .map(|c| c.evaluate(&ctx))
        .collect();
    Ok(SuiteReport::new(spec, &corpus, checks, mutation::current()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_matches_scope() {
        let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
        assert_eq!(ids, IN_SCOPE);
    }

    #[test]
    fn zero_budget_skips_everything() {
        let spec = InstanceSpec { budget: Budget::zero(), ..InstanceSpec::default() };
        let report = run_suite(&spec).unwrap();
        for c in &report.checks {
            assert_eq!(c.verdict, Verdict::Skipped, "{}", c.id);
        }
        assert!(report.passed());
    }
}
