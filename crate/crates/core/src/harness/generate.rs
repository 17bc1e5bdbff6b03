//! Instance generators: exhaustive inside the envelope, seeded sampling outside.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::{ensure, Budget};
use crate::convex::LConvexSpace;
use crate::error::Result;
use crate::fuzzy::{all_lsubsets, lsubset_count, Carrier, LSubset};
use crate::lattice::{Degree, ResiduatedLattice};
use crate::order::LOrderedSet;

/// Closure tables for convex structures on `L^X`, with L-subsets addressed by index.
struct Universe {
    subsets: Vec<LSubset>,
    meet: Vec<u32>,
    scale: Vec<u32>,
    bottom: u32,
    top: u32,
}

impl Universe {
    fn new(l: &ResiduatedLattice, n: usize) -> Self {
        let subsets: Vec<LSubset> = all_lsubsets(l, n).collect();
        let m = subsets.len();
        let idx = |s: &LSubset| s.index(l.size()) as u32;
        let mut meet = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                meet[i * m + j] = idx(&l.meet_subsets(&subsets[i], &subsets[j]));
            }
        }
        let mut scale = vec![0; l.size() * m];
        for a in l.degrees() {
            for j in 0..m {
                scale[a.index() * m + j] = idx(&l.scale_residuum(a, &subsets[j]));
            }
        }
        let bottom = idx(&LSubset::constant(n, l.bottom()));
        let top = idx(&LSubset::constant(n, l.top()));
        Self { subsets, meet, scale, bottom, top }
    }

    fn len(&self) -> usize {
        self.subsets.len()
    }

    fn close(&self, mut set: u64) -> u64 {
        let m = self.len();
        let degrees = self.scale.len() / m;
        set |= 1 << self.bottom | 1 << self.top;
        let mut work: Vec<usize> = (0..m).filter(|i| set >> i & 1 == 1).collect();
        while let Some(i) = work.pop() {
            for j in 0..m {
                if set >> j & 1 == 1 {
                    let k = self.meet[i * m + j] as usize;
                    if set >> k & 1 == 0 {
                        set |= 1 << k;
                        work.push(k);
                    }
                }
            }
            for a in 0..degrees {
                let k = self.scale[a * m + i] as usize;
                if set >> k & 1 == 0 {
                    set |= 1 << k;
                    work.push(k);
                }
            }
        }
        set
    }

    fn family(&self, set: u64) -> Vec<LSubset> {
        (0..self.len()).filter(|i| set >> i & 1 == 1).map(|i| self.subsets[i].clone()).collect()
    }
}

/// Number of stratified L-convex structures on an `n`-point carrier, by
/// NextClosure over `L^X`. Fails when `L^X` has more than 64 elements or
/// the count passes `cap`.
pub fn space_census(l: &ResiduatedLattice, n: usize, cap: u64) -> Result<u64> {
    let mut count = 0;
    for_each_closed(l, n, cap, |_| count += 1)?;
    Ok(count)
}

fn for_each_closed(l: &ResiduatedLattice, n: usize, cap: u64, mut visit: impl FnMut(u64)) -> Result<()> {
    ensure("indexed L^X universe", lsubset_count(l, n), 64)?;
    let u = Universe::new(l, n);
    let m = u.len();
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut a = u.close(0);
    let mut count = 1u64;
    visit(a);
    while a != full {
        let mut next = None;
        for i in (0..m).rev() {
            let bit = 1u64 << i;
            if a & bit != 0 {
                a &= !bit;
                continue;
            }
            let b = u.close(a | bit);
            let lower = bit - 1;
            if b & lower == a & lower {
                next = Some(b);
                break;
            }
        }
        a = next.expect("NextClosure reaches the full set");
        count += 1;
        ensure("space enumeration", count, cap)?;
        visit(a);
    }
    Ok(())
}

/// Every stratified L-convex structure on `n` points, in lectic order.
pub fn all_spaces(lattice: &Arc<ResiduatedLattice>, n: usize, budget: &Budget) -> Result<Vec<LConvexSpace>> {
    let u_len = lsubset_count(lattice, n);
    ensure("indexed L^X universe", u_len, 64)?;
    let u = Universe::new(lattice, n);
    let mut out = Vec::new();
    for_each_closed(lattice, n, budget.max_scan, |set| {
        out.push(LConvexSpace::from_closed(lattice.clone(), Carrier::indexed(n), u.family(set)));
    })?;
    Ok(out)
}

/// `count` spaces generated by seeded random generator sets, deduplicated,
/// in generation order.
pub fn sample_spaces(
    lattice: &Arc<ResiduatedLattice>,
    n: usize,
    count: usize,
    seed: u64,
    budget: &Budget,
) -> Result<Vec<LConvexSpace>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 20 {
        attempts += 1;
        let k = rng.gen_range(0..=3);
        let gens: Vec<LSubset> = (0..k).map(|_| random_subset(lattice, n, &mut rng)).collect();
        let space = LConvexSpace::build(lattice.clone(), Carrier::indexed(n), &gens, budget)?;
        if seen.insert(space.members().to_vec()) {
            out.push(space);
        }
    }
    Ok(out)
}

fn random_subset(l: &ResiduatedLattice, n: usize, rng: &mut ChaCha8Rng) -> LSubset {
    LSubset::new((0..n).map(|_| Degree::new(rng.gen_range(0..l.size()))).collect())
}

/// Every L-order on `n` points, by filtering all matrices with top diagonal.
pub fn all_orders(lattice: &Arc<ResiduatedLattice>, n: usize, budget: &Budget) -> Result<Vec<LOrderedSet>> {
    let off = n * n - n;
    ensure("order matrix scan", crate::budget::power(lattice.size(), off), budget.max_scan)?;
    let mut out = Vec::new();
    for cells in all_lsubsets(lattice, off) {
        if let Ok(o) = LOrderedSet::new(lattice.clone(), Carrier::indexed(n), matrix(lattice, n, &cells)) {
            out.push(o);
        }
    }
    Ok(out)
}

fn matrix(l: &ResiduatedLattice, n: usize, cells: &LSubset) -> Vec<Vec<Degree>> {
    let mut it = cells.degrees().iter();
    (0..n).map(|i| (0..n).map(|j| if i == j { l.top() } else { *it.next().expect("n*n-n cells") }).collect()).collect()
}

/// Up to `count` distinct L-orders on `n` points: seeded random matrices
/// filtered by the axioms.
pub fn sample_orders(
    lattice: &Arc<ResiduatedLattice>,
    n: usize,
    count: usize,
    seed: u64,
    budget: &Budget,
) -> Result<Vec<LOrderedSet>> {
    ensure("order matrix scan", crate::budget::power(lattice.size(), n * n - n), budget.max_scan)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let degrees: Vec<Degree> = lattice.degrees().collect();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 2000 {
        attempts += 1;
        let cells = LSubset::new((0..n * n - n).map(|_| *degrees.choose(&mut rng).expect("nonempty lattice")).collect());
        if let Ok(o) = LOrderedSet::new(lattice.clone(), Carrier::indexed(n), matrix(lattice, n, &cells)) {
            if seen.insert(o.matrix()) {
                out.push(o);
            }
        }
    }
    Ok(out)
}
