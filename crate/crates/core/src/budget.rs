use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Caps on every exhaustive search in the crate.
///
/// Searches that would exceed a cap fail with [`Error::BudgetExceeded`]
/// instead of silently sampling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    /// Largest convex family `build_space` may produce.
    pub max_family: u64,
    /// Largest `|L|^|X|` scan over L-subsets of one carrier.
    pub max_scan: u64,
    /// Largest `|L|^(2|P|)` scan used by the Scott structure.
    pub max_scott: u64,
    /// Largest number of carrier maps enumerated in uniqueness checks.
    pub max_maps: u64,
    /// Largest number of subfamilies visited by directed-family oracles.
    pub max_directed: u64,
    /// Largest `2^|X|` scan over crisp subsets, and largest number of
    /// F-closed sets enumerated.
    pub max_crisp: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_family: 5_000,
            max_scan: 1_000_000,
            max_scott: 10_000_000,
            max_maps: 1_000_000,
            max_directed: 1_000_000,
            max_crisp: 1 << 16,
        }
    }
}

impl Budget {
    /// A budget that refuses every search.
    pub fn zero() -> Self {
        Self {
            max_family: 0,
            max_scan: 0,
            max_scott: 0,
            max_maps: 0,
            max_directed: 0,
            max_crisp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

/// `base^exp`, saturating at `u64::MAX`.
pub fn power(base: usize, exp: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u64);
    }
    acc
}

pub(crate) fn ensure(what: &str, needed: u64, cap: u64) -> Result<()> {
    if needed > cap {
        Err(Error::BudgetExceeded { what: what.to_string(), needed, cap })
    } else {
        Ok(())
    }
}
