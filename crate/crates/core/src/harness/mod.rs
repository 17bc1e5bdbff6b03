//! Generators, the theorem suite and counterexample search.

/// Inside a check body: fail the instance with a formatted witness unless `cond` holds.
macro_rules! require {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Ok(Some(format!($($fmt)+)));
        }
    };
}

mod checks;
pub mod corpus;
pub mod generate;
pub mod report;
pub mod search;
pub mod spec;
pub mod suite;

pub use corpus::Corpus;
pub use report::SuiteReport;
pub use spec::{InstanceSpec, LatticeCache, SampleSpec};
pub use suite::{run_selected, run_suite, CheckResult, Verdict, IN_SCOPE};
