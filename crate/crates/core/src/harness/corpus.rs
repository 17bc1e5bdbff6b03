//! The instances a suite run works on, generated once from an [`InstanceSpec`].

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::generate::{all_orders, all_spaces, sample_orders, sample_spaces, space_census};
use super::spec::{InstanceSpec, LatticeCache};
use crate::budget::Budget;
use crate::convex::LConvexSpace;
use crate::error::{Error, Result};
use crate::lattice::ResiduatedLattice;
use crate::order::LOrderedSet;

#[derive(Clone, Debug)]
pub struct SpaceCase {
    /// `lattice/npt#i`, prefixed with `sample:` outside the exhaustive envelope.
    pub origin: String,
    pub exhaustive: bool,
    pub space: Arc<LConvexSpace>,
}

#[derive(Clone, Debug)]
pub struct OrderCase {
    pub origin: String,
    pub exhaustive: bool,
    pub order: Arc<LOrderedSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub lattice: String,
    pub points: usize,
    pub spaces: u64,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub law_lattices: Vec<Arc<ResiduatedLattice>>,
    pub space_lattices: Vec<Arc<ResiduatedLattice>>,
    pub spaces: Vec<SpaceCase>,
    pub orders: Vec<OrderCase>,
    pub census: Vec<CensusEntry>,
    /// Generation steps refused by the budget.
    pub skipped: Vec<String>,
}

/// Per-batch seed, so batches do not share random streams.
pub fn batch_seed(seed: u64, batch: usize) -> u64 {
    seed ^ (batch as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn budget_skip<T>(r: Result<T>, what: String, skipped: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ Error::BudgetExceeded { .. }) => {
            skipped.push(format!("{what}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

impl Corpus {
    /// Generates every instance named by `spec`. Unknown lattice names are
    /// errors; budget refusals are recorded in `skipped`.
    pub fn generate(spec: &InstanceSpec, cache: &mut LatticeCache) -> Result<Self> {
        let budget: &Budget = &spec.budget;
        let law_lattices = spec.law_lattices.iter().map(|n| cache.get(n)).collect::<Result<Vec<_>>>()?;
        let space_lattices = spec.space_lattices.iter().map(|n| cache.get(n)).collect::<Result<Vec<_>>>()?;
        let mut skipped = Vec::new();
        let mut spaces = Vec::new();
        let mut census = Vec::new();
        for l in &space_lattices {
            for n in 1..=spec.space_points {
                let what = format!("spaces {}/{n}pt", l.name());
                if let Some(all) = budget_skip(all_spaces(l, n, budget), what, &mut skipped)? {
                    census.push(CensusEntry { lattice: l.name().to_string(), points: n, spaces: all.len() as u64 });
                    spaces.extend(all.into_iter().enumerate().map(|(i, s)| SpaceCase {
                        origin: format!("{}/{n}pt#{i}", l.name()),
                        exhaustive: true,
                        space: Arc::new(s),
                    }));
                }
            }
        }
        for (b, sample) in spec.space_samples.iter().enumerate() {
            let l = cache.get(&sample.lattice)?;
            let what = format!("space samples {}/{}pt", l.name(), sample.points);
            let drawn = sample_spaces(&l, sample.points, sample.count, batch_seed(spec.seed, b), budget);
            if let Some(drawn) = budget_skip(drawn, what, &mut skipped)? {
                spaces.extend(drawn.into_iter().enumerate().map(|(i, s)| SpaceCase {
                    origin: format!("sample:{}/{}pt#{i}", l.name(), sample.points),
                    exhaustive: false,
                    space: Arc::new(s),
                }));
            }
        }
        let mut orders = Vec::new();
        for l in &space_lattices {
            for n in 1..=spec.order_points {
                let what = format!("orders {}/{n}pt", l.name());
                if let Some(all) = budget_skip(all_orders(l, n, budget), what, &mut skipped)? {
                    orders.extend(all.into_iter().enumerate().map(|(i, o)| OrderCase {
                        origin: format!("{}/{n}pt#{i}", l.name()),
                        exhaustive: true,
                        order: Arc::new(o),
                    }));
                }
            }
        }
        for (b, sample) in spec.order_samples.iter().enumerate() {
            let l = cache.get(&sample.lattice)?;
            let what = format!("order samples {}/{}pt", l.name(), sample.points);
            let seed = batch_seed(spec.seed, spec.space_samples.len() + b);
            if let Some(drawn) = budget_skip(sample_orders(&l, sample.points, sample.count, seed, budget), what, &mut skipped)? {
                orders.extend(drawn.into_iter().enumerate().map(|(i, o)| OrderCase {
                    origin: format!("sample:{}/{}pt#{i}", l.name(), sample.points),
                    exhaustive: false,
                    order: Arc::new(o),
                }));
            }
        }
        Ok(Self { law_lattices, space_lattices, spaces, orders, census, skipped })
    }

    /// Exhaustively generated spaces on at most `n` points.
    pub fn small_spaces(&self, n: usize) -> impl Iterator<Item = &SpaceCase> {
        self.spaces.iter().filter(move |c| c.exhaustive && c.space.size() <= n)
    }
}

/// Census numbers without materialising the spaces.
pub fn census(lattice: &ResiduatedLattice, max_points: usize, cap: u64) -> Result<Vec<CensusEntry>> {
    (1..=max_points)
        .map(|n| {
            Ok(CensusEntry { lattice: lattice.name().to_string(), points: n, spaces: space_census(lattice, n, cap)? })
        })
        .collect()
}
