//! Specialization orders, Scott L-convex structures and join-semilattice completion.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::{ensure, power, Budget};
use crate::convex::{LConvexSpace, SpaceMap};
use crate::error::{Error, Result};
use crate::fuzzy::{all_lsubsets, lsubset_count, CarrierMap, LSubset};
use crate::order::LOrderedSet;
use crate::sober::{extend_to_sobrification, f_closure, is_s0, is_sober, s0_witness, sobrify, Extension, SobrificationResult};

/// `e(x, y) = co(1_y)(x)`.
pub fn specialization(x: &LConvexSpace) -> Result<LOrderedSet> {
    if let Some((a, b)) = s0_witness(x) {
        return Err(Error::NotS0 { x: a, y: b });
    }
    let hulls = x.point_hulls();
    let n = x.size();
    let e = (0..n).map(|p| (0..n).map(|q| hulls[q].get(p)).collect()).collect();
    LOrderedSet::new(x.lattice().clone(), x.carrier().clone(), e)
}

/// `e(x, y) = meet over members A of A(y) -> A(x)`, without validation.
pub fn specialization_by_meets(x: &LConvexSpace) -> Vec<Vec<crate::lattice::Degree>> {
    let l = &**x.lattice();
    let n = x.size();
    (0..n)
        .map(|p| (0..n).map(|q| l.meet_all(x.members().iter().map(|a| l.residuum(a.get(q), a.get(p))))).collect())
        .collect()
}

/// The nonempty L-subsets of an L-ordered set that have a supremum.
#[derive(Clone, Debug)]
pub struct ScottContext<'a> {
    order: &'a LOrderedSet,
    sups: Vec<(LSubset, usize)>,
}

impl<'a> ScottContext<'a> {
    pub fn new(order: &'a LOrderedSet, budget: &Budget) -> Result<Self> {
        let sups = order.supremum_table(budget)?.into_iter().filter_map(|(f, s)| s.map(|s| (f, s))).collect();
        Ok(Self { order, sups })
    }

    pub fn suprema(&self) -> &[(LSubset, usize)] {
        &self.sups
    }

    pub fn is_scott_convex(&self, a: &LSubset) -> bool {
        self.scott_witness(a).is_none()
    }

    /// A nonempty `F` with `sub(F, A) > A(⊔F)`, or `A` itself when it is not a lower set.
    pub fn scott_witness(&self, a: &LSubset) -> Option<LSubset> {
        let l = &**self.order.lattice();
        if !self.order.is_lower_set(a) {
            return Some(a.clone());
        }
        self.sups.iter().find(|(f, s)| !l.leq(l.incl(f, a), a.get(*s))).map(|(f, _)| f.clone())
    }
}

pub fn is_scott_convex(p: &LOrderedSet, a: &LSubset, budget: &Budget) -> Result<bool> {
    if a.len() != p.size() {
        return Err(Error::CarrierMismatch { expected: p.size(), found: a.len() });
    }
    Ok(ScottContext::new(p, budget)?.is_scott_convex(a))
}

/// `σ*(P)`: every Scott convex L-subset, as a space on the carrier of `P`.
pub fn scott_structure(p: &LOrderedSet, budget: &Budget) -> Result<LConvexSpace> {
    let l = p.lattice();
    ensure("Scott scan", power(l.size(), 2 * p.size()), budget.max_scott)?;
    let ctx = ScottContext::new(p, budget)?;
    let members: Vec<LSubset> = all_lsubsets(l, p.size()).filter(|a| ctx.is_scott_convex(a)).collect();
    ensure("convex family", members.len() as u64, budget.max_family)?;
    Ok(LConvexSpace::from_closed(l.clone(), p.carrier().clone(), members))
}

/// Order-preserving, and suprema of nonempty L-subsets are carried to suprema.
pub fn is_scott_cp(f: &CarrierMap, p: &LOrderedSet, q: &LOrderedSet, budget: &Budget) -> Result<bool> {
    p.lattice().same_lattice(q.lattice())?;
    if !p.is_order_preserving(f, q) {
        return Ok(false);
    }
    let l = &**p.lattice();
    let ctx = ScottContext::new(p, budget)?;
    Ok(ctx.sups.iter().all(|(g, s)| q.supremum(&l.forward(f, g)) == Some(f.apply(*s))))
}

/// Both readings of a Scott convexity-preserving map; they must agree.
pub fn scott_cp_equivalence(f: &CarrierMap, p: &LOrderedSet, q: &LOrderedSet, budget: &Budget) -> Result<bool> {
    let by_order = is_scott_cp(f, p, q, budget)?;
    let sp = Arc::new(scott_structure(p, budget)?);
    let sq = Arc::new(scott_structure(q, budget)?);
    let by_space = SpaceMap::new(f.clone(), sp, sq)?.is_convexity_preserving();
    if by_order != by_space {
        return Err(Error::EquivalenceViolation(format!(
            "map {:?}: Scott convexity-preserving {by_order}, convexity-preserving between Scott spaces {by_space}",
            f.table()
        )));
    }
    Ok(by_order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoberJoinVerdict {
    pub sober: bool,
    pub join_semilattice: bool,
    pub members_scott_convex: bool,
    /// A nonempty L-subset without a supremum, or a member that is not Scott convex.
    pub witness: Option<LSubset>,
}

impl SoberJoinVerdict {
    pub fn right_side(&self) -> bool {
        self.join_semilattice && self.members_scott_convex
    }
}

/// Sobriety against "specialization is a join-semilattice and every member is Scott convex".
pub fn sober_join_characterization(x: &LConvexSpace, budget: &Budget) -> Result<SoberJoinVerdict> {
    let omega = specialization(x)?;
    let sober = is_sober(x).sober;
    let js = omega.join_semilattice_verdict(budget)?;
    let ctx = ScottContext::new(&omega, budget)?;
    let outside = x.members().iter().find(|a| !ctx.is_scott_convex(a)).cloned();
    let verdict = SoberJoinVerdict {
        sober,
        join_semilattice: js.join_semilattice,
        members_scott_convex: outside.is_none(),
        witness: js.witness.or(outside),
    };
    if verdict.sober != verdict.right_side() {
        return Err(Error::EquivalenceViolation(format!(
            "sober {} but join-semilattice {} and members Scott convex {}",
            verdict.sober, verdict.join_semilattice, verdict.members_scott_convex
        )));
    }
    Ok(verdict)
}

/// `P^F` with `e = sub`, built as the sobrification of `(P, σ*(P))`.
#[derive(Clone, Debug)]
pub struct CompletionResult {
    pub order: LOrderedSet,
    pub xi: CarrierMap,
    pub scott_space: Arc<LConvexSpace>,
    pub sobrification: SobrificationResult,
}

pub fn completion(p: &LOrderedSet, budget: &Budget) -> Result<CompletionResult> {
    let scott_space = Arc::new(scott_structure(p, budget)?);
    let sobrification = sobrify(scott_space.clone(), budget)?;
    let points: Vec<LSubset> = sobrification.provenance().into_iter().cloned().collect();
    let order = LOrderedSet::on_subsets(p.lattice().clone(), &points);
    let xi = sobrification.xi.map().clone();
    Ok(CompletionResult { order, xi, scott_space, sobrification })
}

impl CompletionResult {
    pub fn is_join_semilattice(&self, budget: &Budget) -> Result<bool> {
        self.order.is_join_semilattice(budget)
    }

    pub fn xi_is_scott_cp(&self, p: &LOrderedSet, budget: &Budget) -> Result<bool> {
        is_scott_cp(&self.xi, p, &self.order, budget)
    }

    /// `⊔ξ→(K) = ξ(⊔K)` for every nonempty `K` of `P` with a supremum.
    pub fn supremum_transport(&self, p: &LOrderedSet, budget: &Budget) -> Result<bool> {
        let l = &**p.lattice();
        let ctx = ScottContext::new(p, budget)?;
        Ok(ctx.sups.iter().all(|(k, s)| self.order.supremum(&l.forward(&self.xi, k)) == Some(self.xi.apply(*s))))
    }

    /// Whether `C(P^F)` equals `σ*(P^F)` as families.
    pub fn structures_agree(&self, budget: &Budget) -> Result<bool> {
        let sigma = scott_structure(&self.order, budget)?;
        Ok(sigma.members() == self.sobrification.xf_space.members())
    }

    /// `e_P(x, y) = sub(ξx, ξy)` for all `x, y`.
    pub fn xi_is_order_embedding(&self, p: &LOrderedSet) -> bool {
        let n = p.size();
        (0..n).all(|x| (0..n).all(|y| p.e(x, y) == self.order.e(self.xi.apply(x), self.xi.apply(y))))
    }

    /// The F-closure of the image of `ξ` is all of `P^F`.
    pub fn xi_image_is_dense(&self) -> bool {
        let mut image: Vec<usize> = self.xi.table().to_vec();
        image.sort_unstable();
        image.dedup();
        f_closure(&self.sobrification.xf_space, &image).len() == self.order.size()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionVerdict {
    pub accepted: bool,
    pub join_semilattice: bool,
    pub scott_cp: bool,
    /// The comparison `P^F -> Q` is an order-isomorphism commuting with the embeddings.
    pub comparison_isomorphism: bool,
    pub uniqueness: Option<crate::sober::Uniqueness>,
}

/// Whether `(Q, j)` is a join-semilattice completion of `P`, by comparison
/// with the canonical completion.
pub fn verify_completion(p: &LOrderedSet, q: &LOrderedSet, j: &CarrierMap, budget: &Budget) -> Result<CompletionVerdict> {
    p.lattice().same_lattice(q.lattice())?;
    let join_semilattice = q.is_join_semilattice(budget)?;
    let scott_cp = is_scott_cp(j, p, q, budget)?;
    if !join_semilattice || !scott_cp {
        return Ok(CompletionVerdict {
            accepted: false,
            join_semilattice,
            scott_cp,
            comparison_isomorphism: false,
            uniqueness: None,
        });
    }
    let canonical = completion(p, budget)?;
    let target = Arc::new(scott_structure(q, budget)?);
    let Extension { map, commutes, convexity_preserving, uniqueness } =
        extend_to_sobrification(&canonical.sobrification, target, j, budget)?;
    let comparison_isomorphism = commutes
        && convexity_preserving
        && canonical.order.is_order_isomorphism(map.map(), q)
        && map.is_convex_homeomorphism();
    let unique = !matches!(uniqueness, crate::sober::Uniqueness::Verified { commuting, .. } if commuting != 1);
    Ok(CompletionVerdict {
        accepted: comparison_isomorphism && unique,
        join_semilattice,
        scott_cp,
        comparison_isomorphism,
        uniqueness: Some(uniqueness),
    })
}

/// A sober space whose Scott structure has a member outside its convex family.
pub fn scott_inclusion_gap(x: &LConvexSpace, budget: &Budget) -> Result<Option<LSubset>> {
    if !is_sober(x).sober || !is_s0(x) {
        return Ok(None);
    }
    let omega = specialization(x)?;
    ensure("L-subset scan", lsubset_count(x.lattice(), x.size()), budget.max_scan)?;
    let sigma = scott_structure(&omega, budget)?;
    Ok(sigma.members().iter().find(|a| !x.contains(a)).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::Carrier;
    use crate::lattice::{ChainKind, ResiduatedLattice};

    fn boolean() -> Arc<ResiduatedLattice> {
        Arc::new(ResiduatedLattice::boolean())
    }

    fn chain2(l: &Arc<ResiduatedLattice>) -> LOrderedSet {
        LOrderedSet::crisp(l.clone(), Carrier::indexed(2), &[vec![true, true], vec![false, true]]).unwrap()
    }

    fn antichain2(l: &Arc<ResiduatedLattice>) -> LOrderedSet {
        LOrderedSet::crisp(l.clone(), Carrier::indexed(2), &[vec![true, false], vec![false, true]]).unwrap()
    }

    #[test]
    fn specialization_examples() {
        let l = boolean();
        let s = LConvexSpace::build(l.clone(), Carrier::indexed(2), &[LSubset::from_indices(&[1, 0])], &Budget::default())
            .unwrap();
        let o = specialization(&s).unwrap();
        assert_eq!(o.e(0, 1), l.top());
        assert_eq!(o.e(1, 0), l.bottom());
        assert_eq!(o.matrix(), specialization_by_meets(&s));
        let d = LConvexSpace::discrete(l.clone(), Carrier::indexed(2), &Budget::default()).unwrap();
        assert_eq!(specialization(&d).unwrap().matrix(), vec![vec![l.top(), l.bottom()], vec![l.bottom(), l.top()]]);
        let ind = LConvexSpace::indiscrete(l, Carrier::indexed(2));
        assert_eq!(specialization(&ind), Err(Error::NotS0 { x: 0, y: 1 }));
    }

    #[test]
    fn scott_examples() {
        let l = boolean();
        let c = chain2(&l);
        let sigma = scott_structure(&c, &Budget::default()).unwrap();
        assert_eq!(sigma.members(), &[
            LSubset::from_indices(&[0, 0]),
            LSubset::from_indices(&[1, 0]),
            LSubset::from_indices(&[1, 1])
        ]);
        assert!(!is_scott_convex(&c, &LSubset::from_indices(&[0, 1]), &Budget::default()).unwrap());
        assert_eq!(scott_structure(&antichain2(&l), &Budget::default()).unwrap().members().len(), 4);
        assert_eq!(specialization(&sigma).unwrap(), c);

        let g = Arc::new(ResiduatedLattice::chain(3, ChainKind::Godel).unwrap());
        let el = LOrderedSet::of_lattice(g.clone());
        let sigma = scott_structure(&el, &Budget::default()).unwrap();
        for x in 0..3 {
            assert!(sigma.contains(&el.down(x)));
        }
        assert!(sigma.verify_axioms(&Budget::default()).passed());
        assert_eq!(specialization(&sigma).unwrap(), el);
    }

    #[test]
    fn scott_cp_examples() {
        let l = boolean();
        let c = chain2(&l);
        let b = Budget::default();
        assert!(scott_cp_equivalence(&CarrierMap::identity(2), &c, &c, &b).unwrap());
        assert!(scott_cp_equivalence(&CarrierMap::constant(2, 2, 1).unwrap(), &c, &c, &b).unwrap());
        assert!(!scott_cp_equivalence(&CarrierMap::new(vec![1, 0], 2).unwrap(), &c, &c, &b).unwrap());
    }

    #[test]
    fn sober_join_examples() {
        let l = boolean();
        let s = LConvexSpace::build(l.clone(), Carrier::indexed(2), &[LSubset::from_indices(&[1, 0])], &Budget::default())
            .unwrap();
        let v = sober_join_characterization(&s, &Budget::default()).unwrap();
        assert!(v.sober && v.right_side());
        // discrete Boolean on two points is S0 but not sober: chi_{a,b} has no supremum
        let d = LConvexSpace::discrete(l, Carrier::indexed(2), &Budget::default()).unwrap();
        let v = sober_join_characterization(&d, &Budget::default()).unwrap();
        assert!(!v.sober && !v.right_side());
    }

    #[test]
    fn completion_examples() {
        let l = boolean();
        let b = Budget::default();
        let a = antichain2(&l);
        let c = completion(&a, &b).unwrap();
        // the classical join-completion of a 2-antichain adds the top
        assert_eq!(c.order.size(), 3);
        assert!(c.is_join_semilattice(&b).unwrap());
        assert!(c.xi_is_scott_cp(&a, &b).unwrap());
        assert!(c.supremum_transport(&a, &b).unwrap());
        assert!(c.structures_agree(&b).unwrap());
        assert!(verify_completion(&a, &c.order, &c.xi, &b).unwrap().accepted);

        let ch = chain2(&l);
        let cc = completion(&ch, &b).unwrap();
        assert!(cc.xi_is_order_embedding(&ch) && cc.xi_image_is_dense());
        assert!(verify_completion(&ch, &ch, &CarrierMap::identity(2), &b).unwrap().accepted);
        let v = verify_completion(&ch, &ch, &CarrierMap::new(vec![1, 0], 2).unwrap(), &b).unwrap();
        assert!(!v.accepted && !v.scott_cp);

        let one = LOrderedSet::crisp(l, Carrier::indexed(1), &[vec![true]]).unwrap();
        assert_eq!(completion(&one, &b).unwrap().order.size(), 1);
    }

    #[test]
    fn lattice_order_completes_to_itself() {
        let g = Arc::new(ResiduatedLattice::chain(3, ChainKind::Lukasiewicz).unwrap());
        let el = LOrderedSet::of_lattice(g);
        let b = Budget::default();
        let c = completion(&el, &b).unwrap();
        assert_eq!(c.order.size(), 3);
        assert!(c.xi_is_order_embedding(&el));
        assert!(verify_completion(&el, &el, &CarrierMap::identity(3), &b).unwrap().accepted);
    }
}
