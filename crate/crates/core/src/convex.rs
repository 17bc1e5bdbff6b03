//! Stratified L-convex spaces on finite carriers.
//!
//! A space stores its convex family extensionally, sorted and deduplicated,
//! so two spaces over the same lattice and carrier are equal iff their
//! member lists are equal.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::budget::{ensure, power, Budget};
use crate::error::{Error, Result};
use crate::fuzzy::{all_lsubsets, for_each_directed_subfamily, lsubset_count, Carrier, CarrierMap, LSubset};
use crate::lattice::{Degree, ResiduatedLattice};
use crate::mutation::{self, Mutation};

/// Order of the two closure steps inside one round of [`LConvexSpace::build`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureOrder {
    MeetsFirst,
    ScalingFirst,
}

#[derive(Clone, Debug)]
pub struct LConvexSpace {
    lattice: Arc<ResiduatedLattice>,
    carrier: Carrier,
    members: Vec<LSubset>,
}

impl PartialEq for LConvexSpace {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.id() == other.lattice.id() && self.carrier == other.carrier && self.members == other.members
    }
}

impl LConvexSpace {
    /// The smallest stratified L-convex structure containing `generators`.
    pub fn build(
        lattice: Arc<ResiduatedLattice>,
        carrier: Carrier,
        generators: &[LSubset],
        budget: &Budget,
    ) -> Result<Self> {
        Self::build_ordered(lattice, carrier, generators, budget, ClosureOrder::MeetsFirst)
    }

    pub fn build_ordered(
        lattice: Arc<ResiduatedLattice>,
        carrier: Carrier,
        generators: &[LSubset],
        budget: &Budget,
        order: ClosureOrder,
    ) -> Result<Self> {
        let n = carrier.size();
        if let Some(g) = generators.iter().find(|g| g.len() != n) {
            return Err(Error::CarrierMismatch { expected: n, found: g.len() });
        }
        let l = &*lattice;
        let mut set: BTreeSet<LSubset> = generators.iter().cloned().collect();
        set.insert(LSubset::constant(n, l.bottom()));
        set.insert(LSubset::constant(n, l.top()));
        let cap = budget.max_family;
        loop {
            let before = set.len();
            match order {
                ClosureOrder::MeetsFirst => {
                    close_under_meets(l, &mut set, cap)?;
                    close_under_scaling(l, &mut set, cap)?;
                }
                ClosureOrder::ScalingFirst => {
                    close_under_scaling(l, &mut set, cap)?;
                    close_under_meets(l, &mut set, cap)?;
                }
            }
            if set.len() == before {
                break;
            }
        }
        Ok(Self { lattice, carrier, members: set.into_iter().collect() })
    }

    /// Accepts `family` as it stands, failing with the axiom report if it is not closed.
    pub fn from_family(
        lattice: Arc<ResiduatedLattice>,
        carrier: Carrier,
        family: Vec<LSubset>,
        budget: &Budget,
    ) -> Result<Self> {
        let n = carrier.size();
        if let Some(g) = family.iter().find(|g| g.len() != n) {
            return Err(Error::CarrierMismatch { expected: n, found: g.len() });
        }
        let report = verify_family(&lattice, n, &family, budget);
        if !report.passed() {
            return Err(Error::AxiomViolation(report.failures().join("; ")));
        }
        Ok(Self::from_closed(lattice, carrier, family))
    }

    /// Wraps a family already known to be closed. Sorts and deduplicates.
    pub(crate) fn from_closed(lattice: Arc<ResiduatedLattice>, carrier: Carrier, mut family: Vec<LSubset>) -> Self {
        family.sort();
        family.dedup();
        Self { lattice, carrier, members: family }
    }

    /// All of `L^X`.
    pub fn discrete(lattice: Arc<ResiduatedLattice>, carrier: Carrier, budget: &Budget) -> Result<Self> {
        ensure("discrete family", lsubset_count(&lattice, carrier.size()), budget.max_family)?;
        let members = all_lsubsets(&lattice, carrier.size()).collect();
        Ok(Self { lattice, carrier, members })
    }

    /// `{0_X, 1_X}`.
    pub fn indiscrete(lattice: Arc<ResiduatedLattice>, carrier: Carrier) -> Self {
        let n = carrier.size();
        let members = vec![LSubset::constant(n, lattice.bottom()), LSubset::constant(n, lattice.top())];
        Self::from_closed(lattice, carrier, members)
    }

    pub fn lattice(&self) -> &Arc<ResiduatedLattice> {
        &self.lattice
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn members(&self) -> &[LSubset] {
        &self.members
    }

    pub fn contains(&self, a: &LSubset) -> bool {
        self.members.binary_search(a).is_ok()
    }

    pub fn member_index(&self, a: &LSubset) -> Option<usize> {
        self.members.binary_search(a).ok()
    }

    pub fn with_carrier(mut self, carrier: Carrier) -> Result<Self> {
        if carrier.size() != self.size() {
            return Err(Error::CarrierMismatch { expected: self.size(), found: carrier.size() });
        }
        self.carrier = carrier;
        Ok(self)
    }

    /// `co(A)`: the meet of all members above `A`.
    pub fn hull(&self, a: &LSubset) -> LSubset {
        let l = &*self.lattice;
        let skip_self = mutation::is_active(Mutation::Hull);
        let mut acc = LSubset::constant(self.size(), l.top());
        for b in &self.members {
            if a.leq(l, b) && !(skip_self && b == a) {
                acc = l.meet_subsets(&acc, b);
            }
        }
        acc
    }

    /// `co(1_x)`.
    pub fn point_hull(&self, x: usize) -> LSubset {
        self.hull(&LSubset::point(&self.lattice, self.size(), x))
    }

    pub fn point_hulls(&self) -> Vec<LSubset> {
        (0..self.size()).map(|x| self.point_hull(x)).collect()
    }

    /// Nonempty members, in canonical order.
    pub fn nonempty_members(&self) -> impl Iterator<Item = &LSubset> {
        self.members.iter().filter(|m| m.is_nonempty(&self.lattice))
    }

    pub fn verify_axioms(&self, budget: &Budget) -> SpaceReport {
        verify_family(&self.lattice, self.size(), &self.members, budget)
    }

    /// Compactness: nonemptiness plus commuting `sub(K, -)` with directed joins
    /// of members, which every finite directed family satisfies via its maximum.
    pub fn is_compact(&self, k: &LSubset) -> Result<bool> {
        if !self.contains(k) {
            return Err(Error::NotConvex);
        }
        Ok(k.is_nonempty(&self.lattice))
    }

    /// Compactness by definition: nonemptiness and the directed-join equation
    /// on every directed subfamily of at most `max_size` members.
    pub fn is_compact_by_definition(&self, k: &LSubset, max_size: usize, budget: &Budget) -> Result<bool> {
        if !self.contains(k) {
            return Err(Error::NotConvex);
        }
        if !k.is_nonempty(&self.lattice) {
            return Ok(false);
        }
        let l = &*self.lattice;
        let n = self.size();
        let mut holds = true;
        for_each_directed_subfamily(l, &self.members, max_size, budget, |family| {
            let join = l.join_family(n, family.iter().map(|&i| &self.members[i])).expect("same carrier");
            let lhs = l.incl(k, &join);
            let rhs = l.join_all(family.iter().map(|&i| l.incl(k, &self.members[i])));
            if lhs == rhs {
                ControlFlow::Continue(())
            } else {
                holds = false;
                ControlFlow::Break(())
            }
        })?;
        Ok(holds)
    }

    /// Definitional compactness of every member in one pass over the
    /// directed subfamilies of at most `max_size` members.
    pub fn compact_flags_by_definition(&self, max_size: usize, budget: &Budget) -> Result<Vec<bool>> {
        let l = &*self.lattice;
        let n = self.size();
        let m = self.members.len();
        let incl: Vec<Degree> = (0..m * m).map(|k| l.incl(&self.members[k / m], &self.members[k % m])).collect();
        let mut flags: Vec<bool> = self.members.iter().map(|k| k.is_nonempty(l)).collect();
        for_each_directed_subfamily(l, &self.members, max_size, budget, |family| {
            let join = l.join_family(n, family.iter().map(|&i| &self.members[i])).expect("same carrier");
            for (k, flag) in flags.iter_mut().enumerate() {
                if *flag {
                    let rhs = l.join_all(family.iter().map(|&i| incl[k * m + i]));
                    *flag = l.incl(&self.members[k], &join) == rhs;
                }
            }
            ControlFlow::Continue(())
        })?;
        Ok(flags)
    }

    /// A member is a polytope iff it is the hull of a nonempty L-subset; a
    /// nonempty member is its own witness.
    pub fn is_polytope(&self, c: &LSubset) -> Result<PolytopeVerdict> {
        if !self.contains(c) {
            return Err(Error::NotConvex);
        }
        let witness = c.is_nonempty(&self.lattice).then(|| c.clone());
        Ok(PolytopeVerdict { polytope: witness.is_some(), witness })
    }

    /// Searches all nonempty `F` for one with `co(F) = C`.
    pub fn polytope_search(&self, c: &LSubset, budget: &Budget) -> Result<PolytopeVerdict> {
        if !self.contains(c) {
            return Err(Error::NotConvex);
        }
        let l = &*self.lattice;
        ensure("L-subset scan", lsubset_count(l, self.size()), budget.max_scan)?;
        let witness = all_lsubsets(l, self.size()).filter(|f| f.is_nonempty(l)).find(|f| &self.hull(f) == c);
        Ok(PolytopeVerdict { polytope: witness.is_some(), witness })
    }

    /// The subspace on `points` (sorted, distinct): every member restricted.
    pub fn subspace(&self, points: &[usize]) -> Result<LConvexSpace> {
        if points.is_empty() {
            return Err(Error::InvalidSize { size: 0, reason: "a subspace needs at least one point".into() });
        }
        if points.windows(2).any(|w| w[0] >= w[1]) || points.iter().any(|&p| p >= self.size()) {
            return Err(Error::Shape("subspace points must be sorted, distinct carrier points".into()));
        }
        let members = self.members.iter().map(|m| m.restrict(points)).collect();
        Ok(Self::from_closed(self.lattice.clone(), self.carrier.restrict(points), members))
    }

    /// One line per member, with point labels.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for m in &self.members {
            out.push_str(&format!("  {}\n", m.render_named(&self.lattice, &self.carrier)));
        }
        out
    }
}

fn close_under_meets(l: &ResiduatedLattice, set: &mut BTreeSet<LSubset>, cap: u64) -> Result<()> {
    let mut frontier: Vec<LSubset> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let snapshot: Vec<LSubset> = set.iter().cloned().collect();
        let mut next = Vec::new();
        for a in &frontier {
            for b in &snapshot {
                let m = l.meet_subsets(a, b);
                if !set.contains(&m) {
                    set.insert(m.clone());
                    next.push(m);
                    ensure("convex family", set.len() as u64, cap)?;
                }
            }
        }
        frontier = next;
    }
    ensure("convex family", set.len() as u64, cap)
}

fn close_under_scaling(l: &ResiduatedLattice, set: &mut BTreeSet<LSubset>, cap: u64) -> Result<()> {
    if mutation::is_active(Mutation::SpaceClosure) {
        return Ok(());
    }
    let mut frontier: Vec<LSubset> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for a in l.degrees() {
                let s = l.scale_residuum(a, c);
                if !set.contains(&s) {
                    set.insert(s.clone());
                    next.push(s);
                    ensure("convex family", set.len() as u64, cap)?;
                }
            }
        }
        frontier = next;
    }
    ensure("convex family", set.len() as u64, cap)
}

/// One axiom's outcome in a [`SpaceReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub cases: u64,
    pub witness: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceReport {
    pub members: usize,
    pub checks: Vec<AxiomCheck>,
}

impl SpaceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} fails at {}", c.axiom, c.witness.as_deref().unwrap_or("?")))
            .collect()
    }
}

impl fmt::Display for SpaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} members", self.members)?;
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "  {:<3} {status}  [{} cases]", c.axiom, c.cases)?;
            if let Some(w) = &c.witness {
                write!(f, "  witness: {w}")?;
            }
            if let Some(n) = &c.note {
                write!(f, "  ({n})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Checks C1–C4 on an arbitrary family of L-subsets of an `n`-point carrier.
///
/// C2 is certified by the maximum argument (a finite directed family contains
/// its join) and re-checked on every directed subfamily of at most four
/// members when that scan fits `budget.max_directed`.
pub fn verify_family(l: &ResiduatedLattice, n: usize, family: &[LSubset], budget: &Budget) -> SpaceReport {
    let mut members: Vec<LSubset> = family.to_vec();
    members.sort();
    members.dedup();
    let has = |a: &LSubset| members.binary_search(a).is_ok();
    let render = |a: &LSubset| a.render(l);
    let zero = LSubset::constant(n, l.bottom());
    let one = LSubset::constant(n, l.top());

    let mut checks = Vec::with_capacity(4);

    let missing: Vec<String> = [&zero, &one].into_iter().filter(|c| !has(c)).map(&render).collect();
    checks.push(AxiomCheck {
        axiom: "C1".into(),
        passed: missing.is_empty(),
        cases: 2,
        witness: (!missing.is_empty()).then(|| format!("missing {}", missing.join(", "))),
        note: None,
    });

    let mut c2_witness = None;
    let c2 = for_each_directed_subfamily(l, &members, 4, budget, |fam| {
        let join = l.join_family(n, fam.iter().map(|&i| &members[i])).expect("same carrier");
        if has(&join) {
            ControlFlow::Continue(())
        } else {
            let names: Vec<String> = fam.iter().map(|&i| render(&members[i])).collect();
            c2_witness = Some(format!("join of {{{}}} = {} missing", names.join(", "), render(&join)));
            ControlFlow::Break(())
        }
    });
    let (cases, note) = match c2 {
        Ok(count) => (count, "maximum argument; directed subfamilies up to 4 checked".to_string()),
        Err(_) => (0, "maximum argument only; subfamily scan over budget".to_string()),
    };
    checks.push(AxiomCheck { axiom: "C2".into(), passed: c2_witness.is_none(), cases, witness: c2_witness, note: Some(note) });

    let mut c3_witness = if has(&one) { None } else { Some("empty meet 1_X missing".to_string()) };
    let mut c3_cases = 1u64;
    'outer: for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            c3_cases += 1;
            let m = l.meet_subsets(a, b);
            if !has(&m) {
                c3_witness.get_or_insert_with(|| format!("{} meet {} = {} missing", render(a), render(b), render(&m)));
                break 'outer;
            }
        }
    }
    checks.push(AxiomCheck { axiom: "C3".into(), passed: c3_witness.is_none(), cases: c3_cases, witness: c3_witness, note: None });

    let mut c4_witness = None;
    let mut c4_cases = 0u64;
    'c4: for c in &members {
        for a in l.degrees() {
            c4_cases += 1;
            let s = l.scale_residuum(a, c);
            if !has(&s) {
                c4_witness = Some(format!("{} -> {} = {} missing", l.label(a), render(c), render(&s)));
                break 'c4;
            }
        }
    }
    checks.push(AxiomCheck { axiom: "C4".into(), passed: c4_witness.is_none(), cases: c4_cases, witness: c4_witness, note: None });

    SpaceReport { members: members.len(), checks }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeVerdict {
    pub polytope: bool,
    /// A nonempty L-subset whose hull is the member.
    pub witness: Option<LSubset>,
}

/// A carrier map between two spaces with lazily cached verdicts.
#[derive(Clone, Debug)]
pub struct SpaceMap {
    map: CarrierMap,
    source: Arc<LConvexSpace>,
    target: Arc<LConvexSpace>,
    convexity_preserving: OnceLock<bool>,
    convex_to_convex: OnceLock<bool>,
}

impl SpaceMap {
    pub fn new(map: CarrierMap, source: Arc<LConvexSpace>, target: Arc<LConvexSpace>) -> Result<Self> {
        source.lattice.same_lattice(&target.lattice)?;
        if map.source_size() != source.size() {
            return Err(Error::CarrierMismatch { expected: source.size(), found: map.source_size() });
        }
        if map.target_size() != target.size() {
            return Err(Error::CarrierMismatch { expected: target.size(), found: map.target_size() });
        }
        Ok(Self { map, source, target, convexity_preserving: OnceLock::new(), convex_to_convex: OnceLock::new() })
    }

    pub fn map(&self) -> &CarrierMap {
        &self.map
    }

    pub fn source(&self) -> &Arc<LConvexSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<LConvexSpace> {
        &self.target
    }

    /// A target member whose preimage is not convex, if any.
    pub fn preimage_witness(&self) -> Option<LSubset> {
        let l = &*self.source.lattice;
        self.target.members.iter().find(|b| !self.source.contains(&l.backward(&self.map, b))).cloned()
    }

    /// A source member whose image is not convex, if any.
    pub fn image_witness(&self) -> Option<LSubset> {
        let l = &*self.source.lattice;
        self.source.members.iter().find(|a| !self.target.contains(&l.forward(&self.map, a))).cloned()
    }

    pub fn is_convexity_preserving(&self) -> bool {
        *self.convexity_preserving.get_or_init(|| self.preimage_witness().is_none())
    }

    pub fn is_convex_to_convex(&self) -> bool {
        *self.convex_to_convex.get_or_init(|| self.image_witness().is_none())
    }

    pub fn is_convex_homeomorphism(&self) -> bool {
        self.map.is_bijective() && self.is_convexity_preserving() && self.is_convex_to_convex()
    }

    /// Whether `f->(co_X(A)) <= co_Y(f->(A))` for every `A` in `L^X`.
    pub fn hull_image_characterization(&self, budget: &Budget) -> Result<HullImageVerdict> {
        let l = &*self.source.lattice;
        ensure("L-subset scan", power(l.size(), self.source.size()), budget.max_scan)?;
        let witness = all_lsubsets(l, self.source.size()).find(|a| {
            let lhs = l.forward(&self.map, &self.source.hull(a));
            let rhs = self.target.hull(&l.forward(&self.map, a));
            !lhs.leq(l, &rhs)
        });
        Ok(HullImageVerdict { holds: witness.is_none(), witness })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullImageVerdict {
    pub holds: bool,
    pub witness: Option<LSubset>,
}
