//! Finite L-ordered sets.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::{ensure, Budget};
use crate::error::{Error, Result};
use crate::fuzzy::{all_lsubsets, lsubset_count, Carrier, CarrierMap, LSubset};
use crate::lattice::{Degree, ResiduatedLattice};

/// A finite carrier with an L-valued order `e` satisfying E1–E3.
#[derive(Clone, Debug)]
pub struct LOrderedSet {
    lattice: Arc<ResiduatedLattice>,
    carrier: Carrier,
    e: Vec<Degree>,
}

impl PartialEq for LOrderedSet {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.id() == other.lattice.id() && self.carrier == other.carrier && self.e == other.e
    }
}

impl LOrderedSet {
    /// Validates E1–E3 for the row-major matrix `e[x][y]`.
    pub fn new(lattice: Arc<ResiduatedLattice>, carrier: Carrier, e: Vec<Vec<Degree>>) -> Result<Self> {
        let n = carrier.size();
        if e.len() != n || e.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("order matrix must be {n}x{n}")));
        }
        if e.iter().flatten().any(|d| d.index() >= lattice.size()) {
            return Err(Error::Shape("order matrix entry outside the lattice".into()));
        }
        let order = Self { lattice, carrier, e: e.into_iter().flatten().collect() };
        order.validate()?;
        Ok(order)
    }

    fn validate(&self) -> Result<()> {
        let l = &self.lattice;
        let n = self.size();
        for x in 0..n {
            if self.e(x, x) != l.top() {
                return Err(Error::E1Violation { x });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !l.leq(l.tensor(self.e(x, y), self.e(y, z)), self.e(x, z)) {
                        return Err(Error::E2Violation { x, y, z });
                    }
                }
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if l.meet(self.e(x, y), self.e(y, x)) == l.top() {
                    return Err(Error::E3Violation { x, y });
                }
            }
        }
        Ok(())
    }

    /// `(L, e_L)` with `e_L(x, y) = x -> y`.
    pub fn of_lattice(lattice: Arc<ResiduatedLattice>) -> Self {
        let carrier = Carrier::new(lattice.labels().to_vec()).expect("lattice labels are distinct");
        let e = lattice
            .degrees()
            .flat_map(|x| lattice.degrees().map(move |y| (x, y)))
            .map(|(x, y)| lattice.residuum(x, y))
            .collect();
        let order = Self { lattice, carrier, e };
        debug_assert!(order.validate().is_ok());
        order
    }

    /// Embeds a crisp order `leq[x][y]` as `e = top` / `bottom`.
    pub fn crisp(lattice: Arc<ResiduatedLattice>, carrier: Carrier, leq: &[Vec<bool>]) -> Result<Self> {
        let (top, bottom) = (lattice.top(), lattice.bottom());
        let e = leq.iter().map(|row| row.iter().map(|&b| if b { top } else { bottom }).collect()).collect();
        Self::new(lattice, carrier, e)
    }

    /// All of `L^X` under the inclusion order `sub`.
    pub fn inclusion_order(lattice: Arc<ResiduatedLattice>, points: usize, budget: &Budget) -> Result<Self> {
        let count = lsubset_count(&lattice, points);
        ensure("inclusion order carrier", count, budget.max_scan)?;
        ensure("inclusion order matrix", count.saturating_mul(count), budget.max_scan)?;
        let subsets: Vec<LSubset> = all_lsubsets(&lattice, points).collect();
        Ok(Self::on_subsets(lattice, &subsets))
    }

    /// The given L-subsets (assumed distinct) ordered by `sub`.
    pub fn on_subsets(lattice: Arc<ResiduatedLattice>, subsets: &[LSubset]) -> Self {
        let carrier = Carrier::new(subsets.iter().map(|a| a.render(&lattice)).collect()).expect("distinct L-subsets");
        let e = subsets.iter().flat_map(|a| subsets.iter().map(|b| lattice.incl(a, b))).collect::<Vec<_>>();
        let order = Self { lattice, carrier, e };
        debug_assert!(order.validate().is_ok());
        order
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

    #[inline]
    pub fn e(&self, x: usize, y: usize) -> Degree {
        self.e[x * self.size() + y]
    }

    pub fn matrix(&self) -> Vec<Vec<Degree>> {
        let n = self.size();
        (0..n).map(|x| (0..n).map(|y| self.e(x, y)).collect()).collect()
    }

    /// `↓x(y) = e(y, x)`.
    pub fn down(&self, x: usize) -> LSubset {
        LSubset::new((0..self.size()).map(|y| self.e(y, x)).collect())
    }

    /// `↑x(y) = e(x, y)`.
    pub fn up(&self, x: usize) -> LSubset {
        LSubset::new((0..self.size()).map(|y| self.e(x, y)).collect())
    }

    /// `S(x) (x) e(y, x) <= S(y)` for all `x, y`.
    pub fn is_lower_set(&self, s: &LSubset) -> bool {
        let l = &self.lattice;
        let n = self.size();
        (0..n).all(|x| (0..n).all(|y| l.leq(l.tensor(s.get(x), self.e(y, x)), s.get(y))))
    }

    /// `S(x) (x) e(x, y) <= S(y)` for all `x, y`.
    pub fn is_upper_set(&self, s: &LSubset) -> bool {
        let l = &self.lattice;
        let n = self.size();
        (0..n).all(|x| (0..n).all(|y| l.leq(l.tensor(s.get(x), self.e(x, y)), s.get(y))))
    }

    /// The unique `x` with `e(x, y) = sub(A, ↓y)` for every `y`, if any.
    pub fn supremum(&self, a: &LSubset) -> Option<usize> {
        let target: Vec<Degree> = (0..self.size()).map(|y| self.lattice.incl(a, &self.down(y))).collect();
        self.unique_row(&target, |x, y| self.e(x, y))
    }

    /// The unique `x` with `e(y, x) = sub(A, ↑y)` for every `y`, if any.
    pub fn infimum(&self, a: &LSubset) -> Option<usize> {
        let target: Vec<Degree> = (0..self.size()).map(|y| self.lattice.incl(a, &self.up(y))).collect();
        self.unique_row(&target, |x, y| self.e(y, x))
    }

    fn unique_row(&self, target: &[Degree], entry: impl Fn(usize, usize) -> Degree) -> Option<usize> {
        let n = self.size();
        let mut found = None;
        for x in 0..n {
            if (0..n).all(|y| entry(x, y) == target[y]) {
                assert!(found.is_none(), "two suprema/infima in a validated L-ordered set contradict E3");
                found = Some(x);
            }
        }
        found
    }

    pub fn is_order_preserving(&self, f: &CarrierMap, target: &LOrderedSet) -> bool {
        let l = &self.lattice;
        let n = self.size();
        f.source_size() == n
            && f.target_size() == target.size()
            && (0..n).all(|x| (0..n).all(|y| l.leq(self.e(x, y), target.e(f.apply(x), f.apply(y)))))
    }

    pub fn is_order_isomorphism(&self, f: &CarrierMap, target: &LOrderedSet) -> bool {
        let n = self.size();
        f.source_size() == n
            && f.is_bijective()
            && (0..n).all(|x| (0..n).all(|y| self.e(x, y) == target.e(f.apply(x), f.apply(y))))
    }

    /// Every nonempty L-subset paired with its supremum (`None` if absent), in canonical order.
    pub fn supremum_table(&self, budget: &Budget) -> Result<Vec<(LSubset, Option<usize>)>> {
        let l = &self.lattice;
        ensure("L-subset scan", lsubset_count(l, self.size()), budget.max_scan)?;
        let rows = self.row_index();
        let downs: Vec<LSubset> = (0..self.size()).map(|y| self.down(y)).collect();
        Ok(all_lsubsets(l, self.size())
            .filter(|a| a.is_nonempty(l))
            .map(|a| {
                let target: Vec<Degree> = downs.iter().map(|d| l.incl(&a, d)).collect();
                let sup = rows.get(&target).copied();
                (a, sup)
            })
            .collect())
    }

    fn row_index(&self) -> HashMap<Vec<Degree>, usize> {
        let n = self.size();
        (0..n).map(|x| ((0..n).map(|y| self.e(x, y)).collect(), x)).collect()
    }

    /// Whether every nonempty L-subset has a supremum; on failure returns a witness.
    pub fn join_semilattice_verdict(&self, budget: &Budget) -> Result<JoinSemilatticeVerdict> {
        let l = &self.lattice;
        ensure("L-subset scan", lsubset_count(l, self.size()), budget.max_scan)?;
        let rows = self.row_index();
        let downs: Vec<LSubset> = (0..self.size()).map(|y| self.down(y)).collect();
        let witness = all_lsubsets(l, self.size()).filter(|a| a.is_nonempty(l)).find(|a| {
            let target: Vec<Degree> = downs.iter().map(|d| l.incl(a, d)).collect();
            !rows.contains_key(&target)
        });
        Ok(JoinSemilatticeVerdict { join_semilattice: witness.is_none(), witness })
    }

    pub fn is_join_semilattice(&self, budget: &Budget) -> Result<bool> {
        Ok(self.join_semilattice_verdict(budget)?.join_semilattice)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinSemilatticeVerdict {
    pub join_semilattice: bool,
    /// A nonempty L-subset without a supremum.
    pub witness: Option<LSubset>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ChainKind;

    fn godel3() -> Arc<ResiduatedLattice> {
        Arc::new(ResiduatedLattice::chain(3, ChainKind::Godel).unwrap())
    }

    fn boolean() -> Arc<ResiduatedLattice> {
        Arc::new(ResiduatedLattice::boolean())
    }

    fn crisp_chain() -> LOrderedSet {
        LOrderedSet::crisp(boolean(), Carrier::indexed(2), &[vec![true, true], vec![false, true]]).unwrap()
    }

    fn antichain() -> LOrderedSet {
        LOrderedSet::crisp(boolean(), Carrier::indexed(2), &[vec![true, false], vec![false, true]]).unwrap()
    }

    /// `⋁_x A(x) (x) x` in `(L, e_L)`.
    fn lattice_sup_closed_form(l: &ResiduatedLattice, a: &LSubset) -> usize {
        l.join_all(l.degrees().map(|x| l.tensor(a.get(x.index()), x))).index()
    }

    #[test]
    fn axioms() {
        let g = godel3();
        assert!(LOrderedSet::of_lattice(g.clone()).validate().is_ok());
        let top = g.top();
        let err = LOrderedSet::new(g.clone(), Carrier::indexed(2), vec![vec![top, top], vec![top, top]]).unwrap_err();
        assert_eq!(err, Error::E3Violation { x: 0, y: 1 });
        let half = Degree::new(1);
        let err = LOrderedSet::new(g.clone(), Carrier::indexed(2), vec![vec![half, top], vec![g.bottom(), top]]);
        assert_eq!(err.unwrap_err(), Error::E1Violation { x: 0 });
    }

    #[test]
    fn down_sets_in_godel_chain() {
        let p = LOrderedSet::of_lattice(godel3());
        assert_eq!(p.down(1), LSubset::from_indices(&[2, 2, 1]));
        for x in 0..3 {
            assert_eq!(p.down(x).get(x), p.lattice().top());
            assert!(p.is_lower_set(&p.down(x)));
            assert!(p.is_upper_set(&p.up(x)));
        }
        let c = crisp_chain();
        assert_eq!(c.up(0), LSubset::from_indices(&[1, 1]));
        assert!(!c.is_lower_set(&LSubset::from_indices(&[0, 1])));
        let half_const = LSubset::constant(3, Degree::new(1));
        assert!(p.is_lower_set(&half_const) && p.is_upper_set(&half_const));
    }

    #[test]
    fn suprema() {
        let c = crisp_chain();
        let l = c.lattice().clone();
        for x in 0..2 {
            assert_eq!(c.supremum(&LSubset::point(&l, 2, x)), Some(x));
            assert_eq!(c.infimum(&LSubset::point(&l, 2, x)), Some(x));
        }
        let a = antichain();
        assert_eq!(a.supremum(&LSubset::from_indices(&[1, 1])), None);

        for lat in [godel3(), Arc::new(ResiduatedLattice::chain(4, ChainKind::Lukasiewicz).unwrap())] {
            let p = LOrderedSet::of_lattice(lat.clone());
            for a in all_lsubsets(&lat, lat.size()) {
                assert_eq!(p.supremum(&a), Some(lattice_sup_closed_form(&lat, &a)));
            }
            assert!(p.is_join_semilattice(&Budget::default()).unwrap());
        }
    }

    #[test]
    fn join_semilattices() {
        let v = antichain().join_semilattice_verdict(&Budget::default()).unwrap();
        assert!(!v.join_semilattice);
        assert_eq!(v.witness, Some(LSubset::from_indices(&[1, 1])));
        let one = LOrderedSet::crisp(boolean(), Carrier::indexed(1), &[vec![true]]).unwrap();
        assert!(one.is_join_semilattice(&Budget::default()).unwrap());
        assert!(matches!(
            LOrderedSet::of_lattice(godel3()).is_join_semilattice(&Budget::zero()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn order_maps() {
        let c = crisp_chain();
        assert!(c.is_order_isomorphism(&CarrierMap::identity(2), &c));
        assert!(c.is_order_preserving(&CarrierMap::constant(2, 2, 1).unwrap(), &c));
        assert!(!c.is_order_preserving(&CarrierMap::new(vec![1, 0], 2).unwrap(), &c));
    }

    #[test]
    fn inclusion_orders() {
        let b = boolean();
        let one = LOrderedSet::inclusion_order(b.clone(), 1, &Budget::default()).unwrap();
        assert_eq!(one.size(), 2);
        assert_eq!(one.e(0, 1), b.top());
        assert_eq!(one.e(1, 0), b.bottom());
        let two = LOrderedSet::inclusion_order(b.clone(), 2, &Budget::default()).unwrap();
        assert_eq!(two.size(), 4);
        // (0,1) and (1,0) are incomparable in the powerset diamond
        assert_eq!(two.e(1, 2), b.bottom());
        assert_eq!(two.e(2, 1), b.bottom());
        let g = godel3();
        let g1 = LOrderedSet::inclusion_order(g.clone(), 1, &Budget::default()).unwrap();
        assert_eq!(g1.matrix(), LOrderedSet::of_lattice(g).matrix());
    }
}
