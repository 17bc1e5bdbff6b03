use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::Result;
use crate::lattice::ResiduatedLattice;

/// A batch of seeded samples: `count` instances on `points` points over `lattice`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub lattice: String,
    pub points: usize,
    pub count: usize,
}

/// What the theorem suite runs on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct InstanceSpec {
    /// Lattices checked exhaustively for the residuation laws.
    pub law_lattices: Vec<String>,
    /// Lattices whose convex structures are enumerated exhaustively.
    pub space_lattices: Vec<String>,
    /// Largest carrier in the exhaustive space envelope.
    pub space_points: usize,
    /// Largest carrier in the exhaustive order envelope.
    pub order_points: usize,
    /// Largest carrier for exhaustive map checks between spaces.
    pub map_points: usize,
    pub space_samples: Vec<SampleSpec>,
    pub order_samples: Vec<SampleSpec>,
    /// Seeded `(X, Z, f)` triples for the universal property beyond Boolean.
    pub universal_samples: usize,
    pub seed: u64,
    pub budget: Budget,
}

impl InstanceSpec {
    /// Parses a JSON spec; missing fields take their defaults.
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

impl Default for InstanceSpec {
    fn default() -> Self {
        let s = |l: &str| l.to_string();
        Self {
            law_lattices: ["boolean", "godel3", "godel4", "godel5", "lukasiewicz3", "lukasiewicz4", "lukasiewicz5"]
                .into_iter()
                .map(s)
                .chain([s("product(boolean,godel3)")])
                .collect(),
            space_lattices: vec![s("boolean"), s("godel3"), s("lukasiewicz3")],
            space_points: 3,
            order_points: 2,
            map_points: 2,
            space_samples: vec![
                SampleSpec { lattice: s("godel4"), points: 3, count: 25 },
                SampleSpec { lattice: s("diamond"), points: 3, count: 25 },
                SampleSpec { lattice: s("boolean"), points: 4, count: 25 },
                SampleSpec { lattice: s("lukasiewicz3"), points: 4, count: 25 },
            ],
            order_samples: vec![
                SampleSpec { lattice: s("boolean"), points: 3, count: 10 },
                SampleSpec { lattice: s("godel3"), points: 3, count: 10 },
                SampleSpec { lattice: s("lukasiewicz3"), points: 3, count: 10 },
            ],
            universal_samples: 60,
            seed: 0,
            budget: Budget::default(),
        }
    }
}

/// Builds each named lattice once, so instances over one name share an identity tag.
#[derive(Default)]
pub struct LatticeCache {
    built: Vec<Arc<ResiduatedLattice>>,
}

impl LatticeCache {
    pub fn get(&mut self, name: &str) -> Result<Arc<ResiduatedLattice>> {
        if let Some(l) = self.built.iter().find(|l| l.name() == name) {
            return Ok(l.clone());
        }
        let l = Arc::new(ResiduatedLattice::builtin(name)?);
        // builtins may normalise the name; cache under the requested one
        let l = if l.name() == name { l } else { Arc::new((*l).clone().renamed(name)) };
        self.built.push(l.clone());
        Ok(l)
    }
}
