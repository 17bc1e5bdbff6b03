//! Sobriety, the compact-family space, F-closure and the sobrification.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::{ensure, power, Budget};
use crate::convex::{LConvexSpace, SpaceMap};
use crate::error::{Error, Result};
use crate::fuzzy::{all_lsubsets, lsubset_count, Carrier, CarrierMap, LSubset};
use crate::lattice::ResiduatedLattice;

/// A crisp subset of a carrier as a sorted list of points.
pub type PointSet = Vec<usize>;

fn mask(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &x in set {
        m[x] = true;
    }
    m
}

fn points_of(mask: &[bool]) -> PointSet {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// The compact convex sets of a space, in the base family order.
#[derive(Clone, Debug)]
pub struct CompactFamily {
    base: Arc<LConvexSpace>,
    members: Vec<LSubset>,
}

impl CompactFamily {
    /// Nonempty members; the finite-instance reading of compactness.
    pub fn new(base: Arc<LConvexSpace>) -> Self {
        let members = base.nonempty_members().cloned().collect();
        Self { base, members }
    }

    /// Members passing the definitional compactness test on directed
    /// subfamilies of at most four members.
    pub fn by_definition(base: Arc<LConvexSpace>, budget: &Budget) -> Result<Self> {
        let mut members = Vec::new();
        for m in base.members() {
            if base.is_compact_by_definition(m, 4, budget)? {
                members.push(m.clone());
            }
        }
        Ok(Self { base, members })
    }

    pub fn base(&self) -> &Arc<LConvexSpace> {
        &self.base
    }

    pub fn members(&self) -> &[LSubset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, k: &LSubset) -> Option<usize> {
        self.members.iter().position(|m| m == k)
    }

    /// Carrier whose labels are the rendered degree vectors of the members.
    pub fn carrier(&self) -> Carrier {
        let l = &**self.base.lattice();
        Carrier::new(self.members.iter().map(|m| m.render(l)).collect()).expect("members are distinct")
    }

    /// `phi(A)(K) = sub(K, A)`.
    pub fn phi(&self, a: &LSubset) -> Result<LSubset> {
        if !self.base.contains(a) {
            return Err(Error::NotConvex);
        }
        Ok(self.phi_unchecked(a))
    }

    pub(crate) fn phi_unchecked(&self, a: &LSubset) -> LSubset {
        let l = &**self.base.lattice();
        LSubset::new(self.members.iter().map(|k| l.incl(k, a)).collect())
    }
}

/// The space `Cp(C(X))` together with the family it lives on.
#[derive(Clone, Debug)]
pub struct CpSpace {
    pub family: CompactFamily,
    pub space: Arc<LConvexSpace>,
}

impl CpSpace {
    pub fn new(base: Arc<LConvexSpace>) -> Self {
        let family = CompactFamily::new(base.clone());
        let members = base.members().iter().map(|a| family.phi_unchecked(a)).collect();
        let space = LConvexSpace::from_closed(base.lattice().clone(), family.carrier(), members);
        Self { family, space: Arc::new(space) }
    }
}

/// Why a space is not sober: a nonempty `f` whose hull is the hull of
/// `matches.len() != 1` points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SobrietyWitness {
    pub f: LSubset,
    pub matches: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SobrietyVerdict {
    pub sober: bool,
    pub witness: Option<SobrietyWitness>,
}

/// Points whose hull equals `hull`.
pub fn hull_witnesses(point_hulls: &[LSubset], hull: &LSubset) -> Vec<usize> {
    point_hulls.iter().enumerate().filter(|(_, h)| *h == hull).map(|(x, _)| x).collect()
}

/// Sobriety by the point-hull bijection onto nonempty members.
pub fn is_sober(x: &LConvexSpace) -> SobrietyVerdict {
    let l = &**x.lattice();
    let hulls = x.point_hulls();
    for (i, h) in hulls.iter().enumerate() {
        let matches = hull_witnesses(&hulls, h);
        if matches.len() > 1 {
            return SobrietyVerdict {
                sober: false,
                witness: Some(SobrietyWitness { f: LSubset::point(l, x.size(), i), matches }),
            };
        }
    }
    for c in x.nonempty_members() {
        if !hulls.contains(c) {
            return SobrietyVerdict {
                sober: false,
                witness: Some(SobrietyWitness { f: c.clone(), matches: Vec::new() }),
            };
        }
    }
    SobrietyVerdict { sober: true, witness: None }
}

/// Sobriety by definition: every nonempty `F` in `L^X` has exactly one point
/// with the same hull. The witness is the first failing `F` in index order.
pub fn is_sober_by_definition(x: &LConvexSpace, budget: &Budget) -> Result<SobrietyVerdict> {
    let l = &**x.lattice();
    ensure("L-subset scan", lsubset_count(l, x.size()), budget.max_scan)?;
    let hulls = x.point_hulls();
    let mut index: HashMap<&LSubset, Vec<usize>> = HashMap::new();
    for (i, h) in hulls.iter().enumerate() {
        index.entry(h).or_default().push(i);
    }
    for f in all_lsubsets(l, x.size()) {
        if !f.is_nonempty(l) {
            continue;
        }
        let h = x.hull(&f);
        let matches = index.get(&h).cloned().unwrap_or_default();
        if matches.len() != 1 {
            return Ok(SobrietyVerdict { sober: false, witness: Some(SobrietyWitness { f, matches }) });
        }
    }
    Ok(SobrietyVerdict { sober: true, witness: None })
}

/// Injectivity of `x -> co(1_x)`.
pub fn is_s0(x: &LConvexSpace) -> bool {
    s0_witness(x).is_none()
}

/// Two distinct points with the same hull, if any.
pub fn s0_witness(x: &LConvexSpace) -> Option<(usize, usize)> {
    let hulls = x.point_hulls();
    for i in 0..hulls.len() {
        for j in i + 1..hulls.len() {
            if hulls[i] == hulls[j] {
                return Some((i, j));
            }
        }
    }
    None
}

/// F-closedness by definition: enumerates every nonempty `F <= chi_A`.
pub fn is_f_closed(x: &LConvexSpace, a: &[usize], budget: &Budget) -> Result<bool> {
    let l = &**x.lattice();
    ensure("L-subset scan", power(l.size(), a.len()), budget.max_scan)?;
    let inside = mask(x.size(), a);
    let hulls = x.point_hulls();
    for g in all_lsubsets(l, a.len()) {
        let f = g.extend(l, x.size(), a);
        if !f.is_nonempty(l) {
            continue;
        }
        let h = x.hull(&f);
        if hull_witnesses(&hulls, &h).into_iter().any(|p| !inside[p]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// F-closure by scanning members: the hulls of nonempty `F <= chi_S` are
/// exactly the members `C` with `C ∧ chi_S` nonempty and of hull `C`.
pub fn f_closure(x: &LConvexSpace, b: &[usize]) -> PointSet {
    if x.size() <= 64 {
        let table = FClosureTable::new(x);
        let bits = table.close(b.iter().fold(0, |acc, &i| acc | 1 << i));
        return (0..x.size()).filter(|i| bits >> i & 1 == 1).collect();
    }
    let l = &**x.lattice();
    let n = x.size();
    let hulls = x.point_hulls();
    let mut inside = mask(n, b);
    loop {
        let chi = LSubset::characteristic(l, n, points_of(&inside));
        let mut changed = false;
        for c in x.nonempty_members() {
            let f = l.meet_subsets(c, &chi);
            if f.is_nonempty(l) && &x.hull(&f) == c {
                for p in hull_witnesses(&hulls, c) {
                    if !inside[p] {
                        inside[p] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return points_of(&inside);
        }
    }
}

/// The member scan of [`f_closure`] on bitmasks, for carriers of at most 64 points.
///
/// `C ∧ chi_S <= D` iff `S` misses `{p : C(p) > D(p)}`, so `co(C ∧ chi_S) = C`
/// iff `S` meets that mask for every member `D` not above `C`.
struct FClosureTable {
    lattice: Arc<ResiduatedLattice>,
    rows: Vec<FClosureRow>,
}

struct FClosureRow {
    member: LSubset,
    /// Minimal masks `S` has to meet.
    blockers: Vec<u64>,
    witnesses: u64,
}

impl FClosureTable {
    fn new(x: &LConvexSpace) -> Self {
        let l = x.lattice();
        let n = x.size();
        let hulls = x.point_hulls();
        let members: Vec<&LSubset> = x.members().iter().collect();
        let rows = x
            .nonempty_members()
            .map(|c| {
                let mut masks: Vec<u64> = members
                    .iter()
                    .filter(|d| !c.leq(l, d))
                    .map(|d| (0..n).filter(|&p| !l.leq(c.get(p), d.get(p))).fold(0, |acc, p| acc | 1 << p))
                    .collect();
                masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
                masks.dedup();
                let mut blockers: Vec<u64> = Vec::new();
                for m in masks {
                    if !blockers.iter().any(|&b| b & !m == 0) {
                        blockers.push(m);
                    }
                }
                let witnesses = hull_witnesses(&hulls, c).into_iter().fold(0, |acc, p| acc | 1 << p);
                FClosureRow { member: c.clone(), blockers, witnesses }
            })
            .collect();
        Self { lattice: l.clone(), rows }
    }

    fn close(&self, mut bits: u64) -> u64 {
        let l = &*self.lattice;
        loop {
            let before = bits;
            for r in &self.rows {
                if r.witnesses & !bits == 0 || !r.blockers.iter().all(|&m| m & bits != 0) {
                    continue;
                }
                let height = l.join_all(r.member.degrees().iter().enumerate().filter(|(p, _)| bits >> p & 1 == 1).map(|(_, &d)| d));
                if height == l.top() {
                    bits |= r.witnesses;
                }
            }
            if bits == before {
                return bits;
            }
        }
    }
}

/// F-closure by the definitional iteration over all nonempty `F <= chi_S`.
pub fn f_closure_by_enumeration(x: &LConvexSpace, b: &[usize], budget: &Budget) -> Result<PointSet> {
    let l = &**x.lattice();
    let n = x.size();
    let hulls = x.point_hulls();
    let mut inside = mask(n, b);
    loop {
        let current = points_of(&inside);
        if current.len() == n {
            return Ok(current);
        }
        ensure("L-subset scan", power(l.size(), current.len()), budget.max_scan)?;
        let mut changed = false;
        for g in all_lsubsets(l, current.len()) {
            let f = g.extend(l, n, &current);
            if !f.is_nonempty(l) {
                continue;
            }
            for p in hull_witnesses(&hulls, &x.hull(&f)) {
                if !inside[p] {
                    inside[p] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(points_of(&inside));
        }
    }
}

/// F-closure as the intersection of all F-closed supersets.
pub fn f_closure_by_intersection(x: &LConvexSpace, b: &[usize], budget: &Budget) -> Result<PointSet> {
    let n = x.size();
    let l = &**x.lattice();
    ensure("crisp subset scan", power(2, n), budget.max_crisp)?;
    ensure(
        "F-closed scan",
        power(2, n).saturating_mul(lsubset_count(l, n)),
        budget.max_scan.saturating_mul(16),
    )?;
    let want = mask(n, b);
    let mut acc = vec![true; n];
    for bits in 0u64..(1 << n) {
        let m: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        if want.iter().zip(&m).any(|(&w, &h)| w && !h) {
            continue;
        }
        if is_f_closed(x, &points_of(&m), budget)? {
            for i in 0..n {
                acc[i] &= m[i];
            }
        }
    }
    Ok(points_of(&acc))
}

/// All F-closed subsets, enumerated in lectic order by NextClosure over the
/// member-scan closure, then sorted by their bit encoding. `max_crisp` caps
/// the number of closed sets.
pub fn f_closed_sets(x: &LConvexSpace, budget: &Budget) -> Result<Vec<PointSet>> {
    let n = x.size();
    if n > 64 {
        ensure("crisp subset scan", power(2, n), budget.max_crisp.min(u64::MAX - 1))?;
    }
    let table = FClosureTable::new(x);
    let close = |bits: u64| table.close(bits);
    ensure("F-closed set enumeration", 1, budget.max_crisp)?;
    let mut found = vec![close(0)];
    let mut current = found[0];
    'next: loop {
        for i in (0..n).rev() {
            let bit = 1u64 << i;
            if current & bit != 0 {
                continue;
            }
            let lower = bit - 1;
            let candidate = close((current & lower) | bit);
            if candidate & lower == current & lower {
                current = candidate;
                found.push(current);
                // the count so far is a lower bound on the enumeration
                ensure("F-closed set enumeration", found.len() as u64, budget.max_crisp)?;
                continue 'next;
            }
        }
        break;
    }
    found.sort_unstable();
    Ok(found.into_iter().map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect()).collect())
}

/// Whether preimages of F-closed sets are F-closed.
pub fn is_f_continuous(f: &SpaceMap, budget: &Budget) -> Result<bool> {
    for b in f_closed_sets(f.target(), budget)? {
        let pre = f.map().preimage(&b);
        if f_closure(f.source(), &pre) != pre {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sobrification `X^F` with `xi`, plus the compact-family space it lives in.
#[derive(Clone, Debug)]
pub struct SobrificationResult {
    pub base: Arc<LConvexSpace>,
    pub cp: CpSpace,
    /// Positions of the `X^F` points inside `cp`.
    pub points: Vec<usize>,
    pub xf_space: Arc<LConvexSpace>,
    pub xi: SpaceMap,
}

/// Builds `X^F` by the hull-of-weighted-join formula and restricts `Cp(C(X))` to it.
pub fn sobrify(x: Arc<LConvexSpace>, budget: &Budget) -> Result<SobrificationResult> {
    ensure("convex family", x.members().len() as u64, budget.max_family)?;
    let cp = CpSpace::new(x.clone());
    let theta = theta(&cp);
    let points = xf_points(&cp, &theta);
    let xf_space = Arc::new(cp.space.subspace(&points)?);
    let table = (0..x.size())
        .map(|p| {
            let h = x.point_hull(p);
            let k = cp.family.position(&h).expect("point hulls are nonempty members");
            points.binary_search(&k).expect("point hulls lie in X^F")
        })
        .collect();
    let xi = SpaceMap::new(CarrierMap::new(table, points.len())?, x.clone(), xf_space.clone())?;
    Ok(SobrificationResult { base: x, cp, points, xf_space, xi })
}

/// Positions in `cp` of the point hulls, sorted and deduplicated.
pub fn theta(cp: &CpSpace) -> PointSet {
    let base = &cp.family.base;
    let mut t: PointSet = (0..base.size())
        .map(|p| cp.family.position(&base.point_hull(p)).expect("point hulls are nonempty members"))
        .collect();
    t.sort_unstable();
    t.dedup();
    t
}

/// The hull in `Cp(C(X))` of a nonempty `K` equals `phi(S)` with
/// `S = co_X(join over A of K(A) ⊗ A)`.
pub fn cp_hull_by_formula(cp: &CpSpace, k: &LSubset) -> LSubset {
    cp.family.phi_unchecked(&cp_hull_source(cp, k))
}

fn cp_hull_source(cp: &CpSpace, k: &LSubset) -> LSubset {
    let base = &cp.family.base;
    let l = &**base.lattice();
    let weighted = cp.family.members.iter().enumerate().map(|(i, a)| l.scale_tensor(k.get(i), a)).collect::<Vec<_>>();
    base.hull(&l.join_family(base.size(), weighted.iter()).expect("same carrier"))
}

/// F-closure inside `Cp(C(X))` scanning the members of the base: the
/// candidate `K` for member `C` is `phi(C) ∧ chi_S`, whose sobriety witness
/// is read off the formula above.
pub fn xf_points(cp: &CpSpace, start: &[usize]) -> PointSet {
    let base = &cp.family.base;
    let l = &**base.lattice();
    let m = cp.family.len();
    let mut inside = mask(m, start);
    loop {
        let chi = LSubset::characteristic(l, m, points_of(&inside));
        let mut changed = false;
        for c in base.members() {
            let k = l.meet_subsets(&cp.family.phi_unchecked(c), &chi);
            if !k.is_nonempty(l) {
                continue;
            }
            let s = cp_hull_source(cp, &k);
            let pos = cp.family.position(&s).expect("the witness of a nonempty K is compact");
            if !inside[pos] {
                inside[pos] = true;
                changed = true;
            }
        }
        if !changed {
            return points_of(&inside);
        }
    }
}

/// `X^F` by the definitional F-closure iteration in the compact-family space.
pub fn xf_points_by_definition(cp: &CpSpace, budget: &Budget) -> Result<PointSet> {
    f_closure_by_enumeration(&cp.space, &theta(cp), budget)
}

impl SobrificationResult {
    pub fn lattice(&self) -> &Arc<ResiduatedLattice> {
        self.base.lattice()
    }

    /// The convex set of the base denoted by each `X^F` point.
    pub fn provenance(&self) -> Vec<&LSubset> {
        self.points.iter().map(|&k| &self.cp.family.members[k]).collect()
    }

    /// `varphi(A) = phi(A)` restricted to `X^F`.
    pub fn varphi(&self, a: &LSubset) -> Result<LSubset> {
        Ok(self.cp.family.phi(a)?.restrict(&self.points))
    }

    /// Whether `X^F` is all of `cp(C(X))`.
    pub fn is_full(&self) -> bool {
        self.points.len() == self.cp.family.len()
    }

    /// `xi^{<-}(varphi(A)) = A` for every member `A`; the first failing member otherwise.
    pub fn pullback_witness(&self) -> Option<LSubset> {
        let l = &**self.lattice();
        self.base
            .members()
            .iter()
            .find(|a| &l.backward(self.xi.map(), &self.varphi(a).expect("member")) != *a)
            .cloned()
    }

    /// Every F-closed subset of `X^F` is F-closed in `Cp(C(X))`.
    pub fn f_closed_transfer(&self, budget: &Budget) -> Result<Option<PointSet>> {
        let closed = f_closed_sets(&self.xf_space, budget)?;
        let table = (self.cp.space.size() <= 64).then(|| FClosureTable::new(&self.cp.space));
        for z in closed {
            let in_cp: PointSet = z.iter().map(|&i| self.points[i]).collect();
            let stable = match &table {
                Some(t) => {
                    let bits = in_cp.iter().fold(0, |acc, &i| acc | 1 << i);
                    t.close(bits) == bits
                }
                None => f_closure(&self.cp.space, &in_cp) == in_cp,
            };
            if !stable {
                return Ok(Some(z));
            }
        }
        Ok(None)
    }
}

/// How uniqueness of an extension was settled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Uniqueness {
    /// Exactly `commuting` of `candidates` maps commute with `xi`.
    Verified { candidates: u64, commuting: u64 },
    Skipped { needed: u64, cap: u64 },
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub map: SpaceMap,
    pub commutes: bool,
    pub convexity_preserving: bool,
    pub uniqueness: Uniqueness,
}

impl Extension {
    pub fn holds(&self) -> bool {
        self.commutes
            && self.convexity_preserving
            && !matches!(self.uniqueness, Uniqueness::Verified { commuting, .. } if commuting != 1)
    }
}

/// The unique convexity-preserving `g: X^F -> Z` with `g ∘ xi = f`:
/// `g(K)` is the point of `Z` whose hull is `co_Z(f->(K))`.
pub fn extend_to_sobrification(
    sob: &SobrificationResult,
    z: Arc<LConvexSpace>,
    f: &CarrierMap,
    budget: &Budget,
) -> Result<Extension> {
    let f_map = SpaceMap::new(f.clone(), sob.base.clone(), z.clone())?;
    if !is_sober(&z).sober {
        return Err(Error::NotSober);
    }
    if !f_map.is_convexity_preserving() {
        return Err(Error::NotConvexityPreserving);
    }
    let l = &**sob.lattice();
    let z_hulls = z.point_hulls();
    let mut table = Vec::with_capacity(sob.points.len());
    for k in sob.provenance() {
        let h = z.hull(&l.forward(f, k));
        match hull_witnesses(&z_hulls, &h).as_slice() {
            [p] => table.push(*p),
            _ => return Err(Error::NotSober),
        }
    }
    let g = SpaceMap::new(CarrierMap::new(table, z.size())?, sob.xf_space.clone(), z.clone())?;
    let commutes = sob.xi.map().then(g.map())?.table() == f.table();
    let convexity_preserving = g.is_convexity_preserving();

    // a commuting map is pinned on the image of xi, free elsewhere
    let m = sob.points.len();
    let mut pinned: Vec<Option<usize>> = vec![None; m];
    let mut consistent = true;
    for (x, &k) in sob.xi.map().table().iter().enumerate() {
        match pinned[k] {
            Some(p) if p != f.apply(x) => consistent = false,
            _ => pinned[k] = Some(f.apply(x)),
        }
    }
    let free: Vec<usize> = (0..m).filter(|&k| pinned[k].is_none()).collect();
    let needed = power(z.size(), free.len());
    let uniqueness = if !consistent {
        Uniqueness::Verified { candidates: 0, commuting: 0 }
    } else if needed <= budget.max_maps {
        let mut commuting = 0;
        for choice in CarrierMap::all(free.len(), z.size()) {
            let mut table: Vec<usize> = pinned.iter().map(|p| p.unwrap_or(0)).collect();
            for (i, &k) in free.iter().enumerate() {
                table[k] = choice.apply(i);
            }
            let hm = SpaceMap::new(CarrierMap::new(table, z.size())?, sob.xf_space.clone(), z.clone())?;
            debug_assert_eq!(sob.xi.map().then(hm.map())?.table(), f.table());
            if hm.is_convexity_preserving() {
                commuting += 1;
            }
        }
        Uniqueness::Verified { candidates: needed, commuting }
    } else {
        Uniqueness::Skipped { needed, cap: budget.max_maps }
    };
    Ok(Extension { map: g, commutes, convexity_preserving, uniqueness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ChainKind;

    fn lattice() -> Arc<ResiduatedLattice> {
        Arc::new(ResiduatedLattice::boolean())
    }

    fn sierpinski(l: &Arc<ResiduatedLattice>) -> Arc<LConvexSpace> {
        Arc::new(
            LConvexSpace::build(l.clone(), Carrier::indexed(2), &[LSubset::from_indices(&[1, 0])], &Budget::default())
                .unwrap(),
        )
    }

    fn indiscrete(l: &Arc<ResiduatedLattice>) -> Arc<LConvexSpace> {
        Arc::new(LConvexSpace::indiscrete(l.clone(), Carrier::indexed(2)))
    }

    #[test]
    fn compact_families() {
        let l = lattice();
        let s = sierpinski(&l);
        let cp = CompactFamily::new(s.clone());
        assert_eq!(cp.members(), &[LSubset::from_indices(&[1, 0]), LSubset::from_indices(&[1, 1])]);
        assert_eq!(CompactFamily::by_definition(s.clone(), &Budget::default()).unwrap().members(), cp.members());
        assert_eq!(CompactFamily::new(indiscrete(&l)).members(), &[LSubset::from_indices(&[1, 1])]);
        assert_eq!(cp.phi(&LSubset::from_indices(&[1, 0])).unwrap(), LSubset::from_indices(&[1, 0]));
        assert_eq!(cp.phi(&LSubset::from_indices(&[1, 1])).unwrap(), LSubset::from_indices(&[1, 1]));
        assert_eq!(cp.phi(&LSubset::from_indices(&[0, 0])).unwrap(), LSubset::from_indices(&[0, 0]));
        assert_eq!(cp.phi(&LSubset::from_indices(&[0, 1])), Err(Error::NotConvex));
    }

    #[test]
    fn sobriety_examples() {
        let l = lattice();
        let s = sierpinski(&l);
        assert!(is_sober(&s).sober);
        assert!(is_s0(&s));
        let ind = indiscrete(&l);
        let v = is_sober(&ind);
        assert!(!v.sober);
        assert_eq!(v.witness.unwrap(), SobrietyWitness { f: LSubset::from_indices(&[1, 0]), matches: vec![0, 1] });
        assert!(!is_s0(&ind));
        let one = LConvexSpace::discrete(l.clone(), Carrier::indexed(1), &Budget::default()).unwrap();
        assert!(is_sober(&one).sober && is_s0(&one));
        for sp in [&*s, &*ind, &one] {
            assert_eq!(is_sober(sp).sober, is_sober_by_definition(sp, &Budget::default()).unwrap().sober);
        }
    }

    #[test]
    fn f_closures() {
        let l = lattice();
        let s = sierpinski(&l);
        assert_eq!(f_closure(&s, &[0]), vec![0]);
        assert!(is_f_closed(&s, &[], &Budget::default()).unwrap());
        assert!(is_f_closed(&s, &[0, 1], &Budget::default()).unwrap());
        // hull(1_b) = 1_X = hull(1_b) and only b matches; {b} is closed too
        assert_eq!(f_closure(&s, &[1]), vec![1]);
        let ind = indiscrete(&l);
        assert_eq!(f_closure(&ind, &[0]), vec![0, 1]);
        for sp in [&s, &ind] {
            for b in [vec![], vec![0], vec![1], vec![0, 1]] {
                let fast = f_closure(sp, &b);
                assert_eq!(fast, f_closure_by_enumeration(sp, &b, &Budget::default()).unwrap());
                assert_eq!(fast, f_closure_by_intersection(sp, &b, &Budget::default()).unwrap());
            }
        }
        let g = Arc::new(ResiduatedLattice::chain(3, ChainKind::Godel).unwrap());
        let gens = [LSubset::from_indices(&[2, 1, 0]), LSubset::from_indices(&[0, 1, 2])];
        let x = LConvexSpace::build(g, Carrier::indexed(3), &gens, &Budget::default()).unwrap();
        for sp in [&*s, &*ind, &x] {
            let n = sp.size();
            let brute: Vec<PointSet> = (0u64..1 << n)
                .map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect::<PointSet>())
                .filter(|z| &f_closure(sp, z) == z)
                .collect();
            assert_eq!(f_closed_sets(sp, &Budget::default()).unwrap(), brute);
        }
    }

    #[test]
    fn cp_space_is_sober() {
        let l = Arc::new(ResiduatedLattice::chain(3, ChainKind::Lukasiewicz).unwrap());
        let gens = vec![LSubset::from_indices(&[2, 1]), LSubset::from_indices(&[0, 2])];
        let x = Arc::new(LConvexSpace::build(l, Carrier::indexed(2), &gens, &Budget::default()).unwrap());
        let cp = CpSpace::new(x.clone());
        assert!(cp.space.verify_axioms(&Budget::default()).passed());
        assert!(is_sober(&cp.space).sober);
        let lat = x.lattice().clone();
        for k in all_lsubsets(&lat, cp.family.len()).filter(|k| k.is_nonempty(&lat)) {
            assert_eq!(cp_hull_by_formula(&cp, &k), cp.space.hull(&k));
        }
    }

    #[test]
    fn sobrify_examples() {
        let l = lattice();
        let ind = sobrify(indiscrete(&l), &Budget::default()).unwrap();
        assert_eq!(ind.points.len(), 1);
        assert_eq!(ind.xi.map().table(), &[0, 0]);
        assert!(!ind.xi.is_convex_homeomorphism());

        let s = sobrify(sierpinski(&l), &Budget::default()).unwrap();
        assert!(s.xi.is_convex_homeomorphism());
        assert!(is_sober(&s.xf_space).sober);
        assert!(s.is_full());
        assert_eq!(s.pullback_witness(), None);
        assert_eq!(s.f_closed_transfer(&Budget::default()).unwrap(), None);
        assert_eq!(xf_points_by_definition(&s.cp, &Budget::default()).unwrap(), s.points);
    }

    #[test]
    fn extensions() {
        let l = lattice();
        let s = sierpinski(&l);
        let sob = sobrify(s.clone(), &Budget::default()).unwrap();
        let e = extend_to_sobrification(&sob, sob.xf_space.clone(), sob.xi.map(), &Budget::default()).unwrap();
        assert_eq!(e.map.map(), &CarrierMap::identity(2));
        assert!(e.holds());
        assert_eq!(e.uniqueness, Uniqueness::Verified { candidates: 1, commuting: 1 });

        let ind = sobrify(indiscrete(&l), &Budget::default()).unwrap();
        let point = Arc::new(LConvexSpace::discrete(l.clone(), Carrier::indexed(1), &Budget::default()).unwrap());
        let e = extend_to_sobrification(&ind, point, &CarrierMap::constant(2, 1, 0).unwrap(), &Budget::default()).unwrap();
        assert_eq!(e.map.map().table(), &[0]);
        assert!(e.holds());

        assert!(matches!(
            extend_to_sobrification(&sob, indiscrete(&l), &CarrierMap::identity(2), &Budget::default()),
            Err(Error::NotSober)
        ));
        let swap = CarrierMap::new(vec![1, 0], 2).unwrap();
        assert!(matches!(
            extend_to_sobrification(&sob, s.clone(), &swap, &Budget::default()),
            Err(Error::NotConvexityPreserving)
        ));
    }
}
