//! Counterexample search over the generated corpus. Reports findings, never nonexistence.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::corpus::{Corpus, SpaceCase};
use super::spec::{InstanceSpec, LatticeCache};
use crate::error::{Error, Result};
use crate::scott::{scott_inclusion_gap, sober_join_characterization};
use crate::sober::{is_s0, is_sober, is_sober_by_definition, sobrify};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchTarget {
    /// A sober space whose specialization order has a Scott convex set outside the structure.
    ScottInclusion,
    /// Any registered equivalence (including one deliberately false hypothesis).
    AnyEquivalence,
}

impl SearchTarget {
    pub const ALL: [SearchTarget; 2] = [SearchTarget::ScottInclusion, SearchTarget::AnyEquivalence];

    pub fn name(self) -> &'static str {
        match self {
            SearchTarget::ScottInclusion => "scott-inclusion",
            SearchTarget::AnyEquivalence => "any-equivalence",
        }
    }
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchTarget {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown search target {s:?} (expected scott-inclusion or any-equivalence)"))
    }
}

/// A hypothesis `space -> holds?`, checked on every corpus space.
struct Hypothesis {
    name: &'static str,
    /// `Ok(Some(w))` is a violation with witness `w`.
    test: fn(&SpaceCase, &InstanceSpec) -> Result<Option<String>>,
}

/// The registered equivalences. `all-spaces-sober` is false on purpose, as a control.
fn hypotheses() -> Vec<Hypothesis> {
    vec![
        Hypothesis {
            name: "sober-fast-path-matches-definition",
            test: |c, spec| {
                let fast = is_sober(&c.space).sober;
                let slow = is_sober_by_definition(&c.space, &spec.budget)?.sober;
                Ok((fast != slow).then(|| format!("fast {fast}, definition {slow}")))
            },
        },
        Hypothesis {
            name: "sober-iff-xi-homeomorphism",
            test: |c, spec| {
                let sober = is_sober(&c.space).sober;
                let homeo = sobrify(c.space.clone(), &spec.budget)?.xi.is_convex_homeomorphism();
                Ok((sober != homeo).then(|| format!("sober {sober}, xi homeomorphism {homeo}")))
            },
        },
        Hypothesis {
            name: "sober-iff-join-semilattice-and-scott-convex",
            test: |c, spec| {
                if !is_s0(&c.space) {
                    return Ok(None);
                }
                match sober_join_characterization(&c.space, &spec.budget) {
                    Ok(_) => Ok(None),
                    Err(Error::EquivalenceViolation(w)) => Ok(Some(w)),
                    Err(e) => Err(e),
                }
            },
        },
        Hypothesis {
            name: "all-spaces-sober",
            test: |c, _| {
                let l = c.space.lattice();
                Ok(is_sober(&c.space).witness.map(|w| format!("hull of {} matches points {:?}", w.f.render(l), w.matches)))
            },
        },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    /// Hypothesis or target the instance violates.
    pub hypothesis: String,
    /// Corpus origin of the instance.
    pub origin: String,
    pub space: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub target: SearchTarget,
    pub searched: u64,
    pub findings: Vec<Finding>,
    /// Instances refused by the budget, with the refusal.
    pub skipped: Vec<String>,
}

impl SearchReport {
    pub fn render(&self) -> String {
        let mut out = format!("search {}: {} instances searched, {} findings\n", self.target, self.searched, self.findings.len());
        for f in &self.findings {
            out.push_str(&format!("finding [{}] {}: {}\n{}\n", f.hypothesis, f.origin, f.witness, f.space));
        }
        for s in &self.skipped {
            out.push_str(&format!("skipped: {s}\n"));
        }
        if self.findings.is_empty() {
            out.push_str("no findings in the searched corpus (this says nothing about larger instances)\n");
        }
        out
    }
}

/// Searches the corpus generated from `spec`. At most `max_findings` findings are kept per hypothesis.
pub fn search_counterexamples(target: SearchTarget, spec: &InstanceSpec, max_findings: usize) -> Result<SearchReport> {
    let mut cache = LatticeCache::default();
    let corpus = Corpus::generate(spec, &mut cache)?;
    let mut skipped = corpus.skipped.clone();
    let mut findings = Vec::new();
    let searched = corpus.spaces.len() as u64;
    let run = |name: &str, test: &(dyn Fn(&SpaceCase) -> Result<Option<String>> + Sync)| {
        let outcomes: Vec<Result<Option<String>>> = corpus.spaces.par_iter().map(test).collect();
        let mut found = Vec::new();
        let mut refused = Vec::new();
        for (c, o) in corpus.spaces.iter().zip(outcomes) {
            match o {
                Ok(Some(w)) if found.len() < max_findings => found.push(Finding {
                    hypothesis: name.to_string(),
                    origin: c.origin.clone(),
                    space: c.space.describe(),
                    witness: w,
                }),
                Ok(_) => {}
                Err(e @ Error::BudgetExceeded { .. }) => refused.push(format!("{name} on {}: {e}", c.origin)),
                Err(e) => return Err(e),
            }
        }
        Ok((found, refused))
    };
    match target {
        SearchTarget::ScottInclusion => {
            let (found, refused) = run(target.name(), &|c| {
                let l = c.space.lattice();
                Ok(scott_inclusion_gap(&c.space, &spec.budget)?
                    .map(|a| format!("{} is Scott convex in the specialization order but not a member", a.render(l))))
            })?;
            findings.extend(found);
            skipped.extend(refused);
        }
        SearchTarget::AnyEquivalence => {
            for h in hypotheses() {
                let (found, refused) = run(h.name, &|c| (h.test)(c, spec))?;
                findings.extend(found);
                skipped.extend(refused);
            }
        }
    }
    Ok(SearchReport { target, searched, findings, skipped })
}
