//! L-subsets of finite carriers and their pointwise algebra.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::budget::{ensure, power, Budget};
use crate::error::{Error, Result};
use crate::lattice::{Degree, ResiduatedLattice};
use crate::mutation::{self, Mutation};

/// A finite background set, identified by its point labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Carrier {
    labels: Vec<String>,
}

impl Carrier {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Shape(format!("duplicate carrier label {l}")));
            }
        }
        Ok(Self { labels })
    }

    /// Points labelled `a`, `b`, `c`, ... (then `x26`, `x27`, ...).
    pub fn indexed(n: usize) -> Self {
        let labels = (0..n)
            .map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{i}") })
            .collect();
        Self { labels }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The sub-carrier on the given points, in the given order.
    pub fn restrict(&self, points: &[usize]) -> Self {
        Self { labels: points.iter().map(|&x| self.labels[x].clone()).collect() }
    }
}

/// A degree-valued map from a finite carrier into a lattice.
///
/// The derived ordering is lexicographic on degree indices, which is also
/// the order of [`LSubset::index`]; convex families are kept sorted by it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LSubset(Vec<Degree>);

impl fmt::Debug for LSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.iter().map(|d| d.index()).collect::<Vec<_>>())
    }
}

impl LSubset {
    pub fn new(degrees: Vec<Degree>) -> Self {
        Self(degrees)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Self(indices.iter().map(|&i| Degree::new(i)).collect())
    }

    /// `a_X`.
    pub fn constant(n: usize, a: Degree) -> Self {
        Self(vec![a; n])
    }

    /// `1_x`.
    pub fn point(l: &ResiduatedLattice, n: usize, x: usize) -> Self {
        let mut d = vec![l.bottom(); n];
        d[x] = l.top();
        Self(d)
    }

    /// `chi_Z`.
    pub fn characteristic(l: &ResiduatedLattice, n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut d = vec![l.bottom(); n];
        for x in members {
            d[x] = l.top();
        }
        Self(d)
    }

    /// The L-subset with mixed-radix `index` (first point most significant).
    pub fn from_index(lattice_size: usize, n: usize, mut index: u64) -> Self {
        let mut d = vec![Degree::new(0); n];
        for slot in d.iter_mut().rev() {
            *slot = Degree::new((index % lattice_size as u64) as usize);
            index /= lattice_size as u64;
        }
        Self(d)
    }

    pub fn index(&self, lattice_size: usize) -> u64 {
        self.0.iter().fold(0u64, |acc, d| acc * lattice_size as u64 + d.index() as u64)
    }

    // `is_empty` would read as "the empty L-subset", which is a different test
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty_carrier(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.0
    }

    #[inline]
    pub fn get(&self, x: usize) -> Degree {
        self.0[x]
    }

    pub fn set(&mut self, x: usize, d: Degree) {
        self.0[x] = d;
    }

    /// Pointwise order.
    pub fn leq(&self, l: &ResiduatedLattice, other: &LSubset) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(&a, &b)| l.leq(a, b))
    }

    /// Nonempty in the fuzzy sense: the degrees join to top.
    pub fn is_nonempty(&self, l: &ResiduatedLattice) -> bool {
        l.join_all(self.0.iter().copied()) == l.top()
    }

    pub fn height(&self, l: &ResiduatedLattice) -> Degree {
        l.join_all(self.0.iter().copied())
    }

    /// Points with a nonzero degree.
    pub fn support(&self, l: &ResiduatedLattice) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.0[x] != l.bottom()).collect()
    }

    /// Whether the degrees are all top or bottom.
    pub fn is_crisp(&self, l: &ResiduatedLattice) -> bool {
        self.0.iter().all(|&d| d == l.top() || d == l.bottom())
    }

    /// `A|_Y` for the listed points of `Y`, in order.
    pub fn restrict(&self, points: &[usize]) -> Self {
        Self(points.iter().map(|&x| self.0[x]).collect())
    }

    /// Extends an L-subset of `points` to a carrier of size `n`, with bottom elsewhere.
    pub fn extend(&self, l: &ResiduatedLattice, n: usize, points: &[usize]) -> Self {
        let mut d = vec![l.bottom(); n];
        for (i, &x) in points.iter().enumerate() {
            d[x] = self.0[i];
        }
        Self(d)
    }

    /// Compact rendering with lattice labels, e.g. `(1,1/2,0)`.
    pub fn render(&self, l: &ResiduatedLattice) -> String {
        let parts: Vec<&str> = self.0.iter().map(|&d| l.label(d)).collect();
        format!("({})", parts.join(","))
    }

    /// Rendering with point labels, e.g. `a=1 b=1/2`, skipping bottom entries.
    pub fn render_named(&self, l: &ResiduatedLattice, carrier: &Carrier) -> String {
        let parts: Vec<String> = (0..self.len())
            .filter(|&x| self.0[x] != l.bottom())
            .map(|x| format!("{}={}", carrier.label(x), l.label(self.0[x])))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        }
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::CarrierMismatch { expected, found })
    }
}

/// Pointwise algebra of L-subsets over a fixed lattice.
impl ResiduatedLattice {
    /// The inclusion degree `sub(A, B) = meet_x A(x) -> B(x)`.
    pub fn sub(&self, a: &LSubset, b: &LSubset) -> Result<Degree> {
        check_len(a.len(), b.len())?;
        Ok(self.incl(a, b))
    }

    #[inline]
    pub(crate) fn incl(&self, a: &LSubset, b: &LSubset) -> Degree {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = self.top();
        for (&x, &y) in a.0.iter().zip(&b.0) {
            acc = self.meet(acc, self.residuum(x, y));
            if acc == self.bottom() {
                break;
            }
        }
        acc
    }

    pub fn meet_subsets(&self, a: &LSubset, b: &LSubset) -> LSubset {
        debug_assert_eq!(a.len(), b.len());
        LSubset(a.0.iter().zip(&b.0).map(|(&x, &y)| self.meet(x, y)).collect())
    }

    pub fn join_subsets(&self, a: &LSubset, b: &LSubset) -> LSubset {
        debug_assert_eq!(a.len(), b.len());
        LSubset(a.0.iter().zip(&b.0).map(|(&x, &y)| self.join(x, y)).collect())
    }

    /// Pointwise meet; the empty family gives the top constant on `n` points.
    pub fn meet_family<'a>(&self, n: usize, family: impl IntoIterator<Item = &'a LSubset>) -> Result<LSubset> {
        let mut acc = LSubset::constant(n, self.top());
        for a in family {
            check_len(n, a.len())?;
            acc = self.meet_subsets(&acc, a);
        }
        Ok(acc)
    }

    /// Pointwise join; the empty family gives the bottom constant on `n` points.
    pub fn join_family<'a>(&self, n: usize, family: impl IntoIterator<Item = &'a LSubset>) -> Result<LSubset> {
        let mut acc = LSubset::constant(n, self.bottom());
        for a in family {
            check_len(n, a.len())?;
            acc = self.join_subsets(&acc, a);
        }
        Ok(acc)
    }

    /// `a (x) A`.
    pub fn scale_tensor(&self, a: Degree, set: &LSubset) -> LSubset {
        LSubset(set.0.iter().map(|&x| self.tensor(a, x)).collect())
    }

    /// `a -> A`.
    pub fn scale_residuum(&self, a: Degree, set: &LSubset) -> LSubset {
        LSubset(set.0.iter().map(|&x| self.residuum(a, x)).collect())
    }
}

/// A total function between finite carriers, `table[x] = f(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CarrierMap {
    table: Vec<usize>,
    target_size: usize,
}

impl CarrierMap {
    pub fn new(table: Vec<usize>, target_size: usize) -> Result<Self> {
        if let Some(&bad) = table.iter().find(|&&y| y >= target_size) {
            return Err(Error::InvalidMap(format!("image {bad} outside a target of size {target_size}")));
        }
        Ok(Self { table, target_size })
    }

    pub fn identity(n: usize) -> Self {
        Self { table: (0..n).collect(), target_size: n }
    }

    pub fn constant(source_size: usize, target_size: usize, y: usize) -> Result<Self> {
        Self::new(vec![y; source_size], target_size)
    }

    pub fn source_size(&self) -> usize {
        self.table.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        self.table.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.table.len() == self.target_size && self.is_injective()
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &CarrierMap) -> Result<CarrierMap> {
        check_len(then.source_size(), self.target_size)?;
        Ok(CarrierMap { table: self.table.iter().map(|&y| then.apply(y)).collect(), target_size: then.target_size })
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<CarrierMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.target_size];
        for (x, &y) in self.table.iter().enumerate() {
            table[y] = x;
        }
        Some(CarrierMap { table, target_size: self.table.len() })
    }

    /// Crisp preimage of a set of target points, sorted.
    pub fn preimage(&self, set: &[usize]) -> Vec<usize> {
        (0..self.table.len()).filter(|&x| set.contains(&self.table[x])).collect()
    }

    /// Every map from a `source`-point carrier into a `target`-point carrier,
    /// in lexicographic order of tables.
    pub fn all(source: usize, target: usize) -> impl Iterator<Item = CarrierMap> {
        let count = if target == 0 && source > 0 { 0 } else { power(target, source) };
        (0..count).map(move |mut k| {
            let mut table = vec![0; source];
            for slot in table.iter_mut().rev() {
                *slot = (k % target as u64) as usize;
                k /= target as u64;
            }
            CarrierMap { table, target_size: target }
        })
    }
}

/// Zadeh extensions of carrier maps.
impl ResiduatedLattice {
    /// `f->(A)(y) = join { A(x) | f(x) = y }`; empty fibres get bottom.
    pub fn zadeh_forward(&self, f: &CarrierMap, a: &LSubset) -> Result<LSubset> {
        check_len(f.source_size(), a.len())?;
        Ok(self.forward(f, a))
    }

    pub(crate) fn forward(&self, f: &CarrierMap, a: &LSubset) -> LSubset {
        if mutation::is_active(Mutation::ZadehForward) {
            let mut out = vec![self.top(); f.target_size()];
            for (x, &d) in a.0.iter().enumerate() {
                let y = f.apply(x);
                out[y] = self.meet(out[y], d);
            }
            return LSubset(out);
        }
        let mut out = vec![self.bottom(); f.target_size()];
        for (x, &d) in a.0.iter().enumerate() {
            let y = f.apply(x);
            out[y] = self.join(out[y], d);
        }
        LSubset(out)
    }

    /// `f<-(B) = B ∘ f`.
    pub fn zadeh_backward(&self, f: &CarrierMap, b: &LSubset) -> Result<LSubset> {
        check_len(f.target_size(), b.len())?;
        Ok(self.backward(f, b))
    }

    pub(crate) fn backward(&self, f: &CarrierMap, b: &LSubset) -> LSubset {
        LSubset(f.table().iter().map(|&y| b.0[y]).collect())
    }
}

/// Number of L-subsets of an `n`-point carrier, saturating.
pub fn lsubset_count(l: &ResiduatedLattice, n: usize) -> u64 {
    power(l.size(), n)
}

/// All L-subsets of an `n`-point carrier in canonical order.
pub fn all_lsubsets(l: &ResiduatedLattice, n: usize) -> impl Iterator<Item = LSubset> {
    let size = l.size();
    (0..power(size, n)).map(move |i| LSubset::from_index(size, n, i))
}

/// All L-subsets of an `n`-point carrier, refusing scans above `budget.max_scan`.
pub fn all_lsubsets_within(l: &ResiduatedLattice, n: usize, budget: &Budget) -> Result<Vec<LSubset>> {
    ensure("L-subset scan", lsubset_count(l, n), budget.max_scan)?;
    Ok(all_lsubsets(l, n).collect())
}

/// All nonempty L-subsets of an `n`-point carrier within budget.
pub fn nonempty_lsubsets_within(l: &ResiduatedLattice, n: usize, budget: &Budget) -> Result<Vec<LSubset>> {
    ensure("L-subset scan", lsubset_count(l, n), budget.max_scan)?;
    Ok(all_lsubsets(l, n).filter(|a| a.is_nonempty(l)).collect())
}

/// Number of subfamilies of size `1..=max_size` of an `m`-element universe, saturating.
pub fn subfamily_count(m: usize, max_size: usize) -> u64 {
    let mut total: u64 = 0;
    let mut binom: u64 = 1;
    for k in 1..=max_size.min(m) {
        binom = binom.saturating_mul((m - k + 1) as u64) / k as u64;
        total = total.saturating_add(binom);
    }
    total
}

/// Whether every pair in `family` has an upper bound inside `family`.
pub fn is_directed(l: &ResiduatedLattice, family: &[&LSubset]) -> bool {
    !family.is_empty()
        && family.iter().all(|a| {
            family.iter().all(|b| family.iter().any(|c| a.leq(l, c) && b.leq(l, c)))
        })
}

/// Visits every directed subfamily of `universe` with at most `max_size`
/// members, as a list of indices. Returns the number of subfamilies visited.
///
/// The visit may stop early by returning `ControlFlow::Break`.
pub fn for_each_directed_subfamily(
    l: &ResiduatedLattice,
    universe: &[LSubset],
    max_size: usize,
    budget: &Budget,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<u64> {
    ensure("directed subfamily scan", subfamily_count(universe.len(), max_size), budget.max_directed)?;
    let m = universe.len();
    let below: Vec<bool> = (0..m * m).map(|k| universe[k / m].leq(l, &universe[k % m])).collect();
    let mut visited = 0u64;
    let mut stack: Vec<usize> = Vec::with_capacity(max_size);
    struct Scan<'a> {
        m: usize,
        below: &'a [bool],
        max_size: usize,
        visited: u64,
    }
    impl Scan<'_> {
        fn directed(&self, family: &[usize]) -> bool {
            family.iter().all(|&a| {
                family.iter().all(|&b| family.iter().any(|&c| self.below[a * self.m + c] && self.below[b * self.m + c]))
            })
        }

        fn rec(
            &mut self,
            start: usize,
            stack: &mut Vec<usize>,
            visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
        ) -> ControlFlow<()> {
            for i in start..self.m {
                stack.push(i);
                if self.directed(stack) {
                    self.visited += 1;
                    visit(stack)?;
                }
                if stack.len() < self.max_size {
                    self.rec(i + 1, stack, visit)?;
                }
                stack.pop();
            }
            ControlFlow::Continue(())
        }
    }
    let mut scan = Scan { m, below: &below, max_size, visited: 0 };
    let _ = scan.rec(0, &mut stack, &mut visit);
    visited += scan.visited;
    Ok(visited)
}

/// Outcome of the finiteness test for an L-subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitenessVerdict {
    pub finite: bool,
    pub justification: String,
    /// Directed families (or chains) the bounded oracle evaluated.
    pub families_checked: u64,
    /// Whether the oracle covered every directed family up to the probe bound.
    pub exhaustive: bool,
    /// Families on which the defining equation failed; any entry is a library bug.
    pub violations: Vec<String>,
}

/// Decides whether `a` is a finite L-subset.
///
/// Over a finite lattice and carrier every directed family of L-subsets
/// contains its own join, so the defining equation holds for every `a`.
/// The verdict is therefore always `finite`; a bounded oracle re-checks the
/// equation on all directed families of at most `probe_bound` L-subsets
/// (falling back to chains when that is over budget).
pub fn is_finite_subset(
    l: &ResiduatedLattice,
    a: &LSubset,
    probe_bound: usize,
    budget: &Budget,
) -> Result<FinitenessVerdict> {
    let universe = all_lsubsets_within(l, a.len(), budget)?;
    let n = a.len();
    let mut violations = Vec::new();
    let mut check = |family: &[usize]| {
        let join = l.join_family(n, family.iter().map(|&i| &universe[i])).expect("same carrier");
        let lhs = l.incl(a, &join);
        let rhs = l.join_all(family.iter().map(|&i| l.incl(a, &universe[i])));
        if lhs != rhs {
            let names: Vec<String> = family.iter().map(|&i| universe[i].render(l)).collect();
            violations.push(format!("{{{}}}", names.join(", ")));
        }
    };
    let (families_checked, exhaustive) =
        match for_each_directed_subfamily(l, &universe, probe_bound, budget, |f| {
            check(f);
            ControlFlow::Continue(())
        }) {
            Ok(count) => (count, true),
            Err(Error::BudgetExceeded { .. }) => {
                let count = for_each_chain(l, &universe, probe_bound, budget.max_directed, &mut check);
                (count, false)
            }
            Err(e) => return Err(e),
        };
    Ok(FinitenessVerdict {
        finite: true,
        justification: "finite-instance theorem: every directed family over a finite lattice and carrier contains its join"
            .to_string(),
        families_checked,
        exhaustive,
        violations,
    })
}

/// Visits strictly increasing chains of length `1..=max_len`, at most `cap` of them.
fn for_each_chain(
    l: &ResiduatedLattice,
    universe: &[LSubset],
    max_len: usize,
    cap: u64,
    visit: &mut dyn FnMut(&[usize]),
) -> u64 {
    fn rec(
        l: &ResiduatedLattice,
        universe: &[LSubset],
        max_len: usize,
        cap: u64,
        stack: &mut Vec<usize>,
        count: &mut u64,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        for i in 0..universe.len() {
            if *count >= cap {
                return;
            }
            if let Some(&last) = stack.last() {
                if i == last || !universe[last].leq(l, &universe[i]) {
                    continue;
                }
            }
            stack.push(i);
            *count += 1;
            visit(stack);
            if stack.len() < max_len {
                rec(l, universe, max_len, cap, stack, count, visit);
            }
            stack.pop();
        }
    }
    let mut count = 0;
    rec(l, universe, max_len, cap, &mut Vec::new(), &mut count, visit);
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ChainKind;

    fn luk3() -> ResiduatedLattice {
        ResiduatedLattice::chain(3, ChainKind::Lukasiewicz).unwrap()
    }

    #[test]
    fn sub_values() {
        let l = luk3();
        let a = LSubset::from_indices(&[2, 1]);
        let b = LSubset::from_indices(&[1, 2]);
        assert_eq!(l.sub(&a, &a).unwrap(), l.top());
        assert_eq!(l.sub(&a, &b).unwrap(), Degree::new(1));
        let zero = LSubset::constant(2, l.bottom());
        for b in all_lsubsets(&l, 2) {
            assert_eq!(l.sub(&zero, &b).unwrap(), l.top());
        }
        assert!(matches!(
            l.sub(&a, &LSubset::from_indices(&[0])),
            Err(Error::CarrierMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn zadeh_images() {
        let l = luk3();
        let a = LSubset::from_indices(&[1, 0, 2]);
        let id = CarrierMap::identity(3);
        assert_eq!(l.zadeh_forward(&id, &a).unwrap(), a);
        assert_eq!(l.zadeh_backward(&id, &a).unwrap(), a);

        let c = CarrierMap::constant(3, 2, 1).unwrap();
        let image = l.zadeh_forward(&c, &LSubset::from_indices(&[1, 0, 1])).unwrap();
        assert_eq!(image, LSubset::from_indices(&[0, 1]));

        let b = ResiduatedLattice::boolean();
        let f = CarrierMap::constant(2, 1, 0).unwrap();
        let chi_a = LSubset::point(&b, 2, 0);
        let empty = LSubset::constant(1, b.bottom());
        let lhs = b.sub(&b.zadeh_forward(&f, &chi_a).unwrap(), &empty).unwrap();
        let rhs = b.sub(&chi_a, &b.zadeh_backward(&f, &empty).unwrap()).unwrap();
        assert_eq!((lhs, rhs), (b.bottom(), b.bottom()));
    }

    #[test]
    fn nonemptiness() {
        let g = ResiduatedLattice::chain(3, ChainKind::Godel).unwrap();
        assert!(LSubset::point(&g, 3, 1).is_nonempty(&g));
        assert!(!LSubset::constant(3, Degree::new(1)).is_nonempty(&g));
        let bb = ResiduatedLattice::boolean();
        let d = ResiduatedLattice::product(&bb, &bb);
        let a = LSubset::new(vec![d.parse_degree("(1,0)").unwrap(), d.parse_degree("(0,1)").unwrap()]);
        assert!(a.is_nonempty(&d));
    }

    #[test]
    fn pointwise_algebra() {
        let l = luk3();
        let a = LSubset::from_indices(&[0, 1, 2]);
        assert_eq!(l.scale_tensor(l.top(), &a), a);
        assert_eq!(l.scale_residuum(l.bottom(), &a), LSubset::constant(3, l.top()));
        let half = Degree::new(1);
        assert_eq!(l.scale_tensor(half, &LSubset::constant(3, half)), LSubset::constant(3, l.bottom()));
        assert_eq!(l.meet_family(3, []).unwrap(), LSubset::constant(3, l.top()));
        assert_eq!(l.join_family(3, []).unwrap(), LSubset::constant(3, l.bottom()));
        let b = LSubset::from_indices(&[2, 1, 0]);
        assert_eq!(l.join_family(3, [&a, &b]).unwrap(), LSubset::from_indices(&[2, 1, 2]));
        assert_eq!(l.meet_family(3, [&a, &b]).unwrap(), LSubset::from_indices(&[0, 1, 0]));
    }

    #[test]
    fn restrict_then_extend_round_trip() {
        let l = luk3();
        let a = LSubset::from_indices(&[2, 1, 0, 1]);
        let points = [1, 3];
        let r = a.restrict(&points);
        assert_eq!(r, LSubset::from_indices(&[1, 1]));
        assert_eq!(r.extend(&l, 4, &points).restrict(&points), r);
    }

    #[test]
    fn index_order_matches_canonical_order() {
        let l = luk3();
        let all: Vec<LSubset> = all_lsubsets(&l, 3).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for (i, a) in all.iter().enumerate() {
            assert_eq!(a.index(3), i as u64);
        }
    }

    #[test]
    fn finiteness_on_boolean_two_points() {
        let b = ResiduatedLattice::boolean();
        for a in all_lsubsets(&b, 2) {
            let v = is_finite_subset(&b, &a, 3, &Budget::default()).unwrap();
            assert!(v.finite && v.exhaustive);
            assert!(v.violations.is_empty());
            // 4 singletons, pairs with a common upper bound, triples containing their max
            assert!(v.families_checked > 0);
        }
    }

    #[test]
    fn directed_family_count_on_boolean_two_points() {
        // brute force: a finite family is directed iff it has a maximum
        let b = ResiduatedLattice::boolean();
        let universe: Vec<LSubset> = all_lsubsets(&b, 2).collect();
        let count = for_each_directed_subfamily(&b, &universe, 3, &Budget::default(), |_| ControlFlow::Continue(()))
            .unwrap();
        let mut brute = 0;
        for mask in 1u32..16 {
            let fam: Vec<&LSubset> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| &universe[i]).collect();
            if fam.len() <= 3 && fam.iter().any(|m| fam.iter().all(|a| a.leq(&b, m))) {
                brute += 1;
            }
        }
        assert_eq!(count, brute);
    }

    #[test]
    fn carrier_maps() {
        let maps: Vec<CarrierMap> = CarrierMap::all(2, 3).collect();
        assert_eq!(maps.len(), 9);
        assert_eq!(maps[5].table(), &[1, 2]);
        assert!(CarrierMap::identity(3).is_bijective());
        assert!(!CarrierMap::constant(2, 2, 0).unwrap().is_injective());
        assert!(CarrierMap::new(vec![3], 2).is_err());
        let swap = CarrierMap::new(vec![1, 0], 2).unwrap();
        assert_eq!(swap.then(&swap).unwrap(), CarrierMap::identity(2));
        assert_eq!(swap.preimage(&[0]), vec![1]);
    }
}
