//! Randomized invariants over small lattices, spaces and orders.

use std::sync::Arc;

use lconvex::budget::Budget;
use lconvex::convex::ClosureOrder;
use lconvex::harness::generate::sample_orders;
use lconvex::io::{parse_order, parse_space, write_order, write_space, Fixed};
use lconvex::scott::{completion, scott_structure, sober_join_characterization, specialization};
use lconvex::sober::{
    f_closure, f_closure_by_enumeration, f_closure_by_intersection, is_s0, is_sober, is_sober_by_definition, sobrify,
};
use lconvex::{Carrier, CarrierMap, Degree, LConvexSpace, LSubset, ResiduatedLattice};
use proptest::prelude::*;

const LATTICES: [&str; 7] = ["boolean", "godel3", "godel4", "lukasiewicz3", "lukasiewicz4", "diamond", "product(boolean,godel3)"];
const SMALL: [&str; 4] = ["boolean", "godel3", "lukasiewicz3", "diamond"];

fn lattice(name: &str) -> Arc<ResiduatedLattice> {
    Arc::new(ResiduatedLattice::builtin(name).unwrap())
}

fn subset(l: &ResiduatedLattice, raw: &[usize]) -> LSubset {
    LSubset::new(raw.iter().map(|&d| Degree::new(d % l.size())).collect())
}

prop_compose! {
    fn lattice_and_degrees()(name in prop::sample::select(LATTICES.to_vec()), raw in prop::collection::vec(0usize..64, 3))
        -> (Arc<ResiduatedLattice>, [Degree; 3]) {
        let l = lattice(name);
        let d = |i: usize| Degree::new(raw[i] % l.size());
        let degrees = [d(0), d(1), d(2)];
        (l, degrees)
    }
}

// a lattice, a carrier size and raw material for up to four L-subsets
prop_compose! {
    fn space_parts()(name in prop::sample::select(SMALL.to_vec()), n in 1usize..=3, gens in 0usize..=3,
                     raw in prop::collection::vec(0usize..64, 12))
        -> (Arc<ResiduatedLattice>, usize, Vec<LSubset>, Vec<usize>) {
        let l = lattice(name);
        let subsets: Vec<LSubset> = (0..gens).map(|i| subset(&l, &raw[i * n..(i + 1) * n])).collect();
        (l, n, subsets, raw)
    }
}

fn build(l: &Arc<ResiduatedLattice>, n: usize, gens: &[LSubset]) -> Arc<LConvexSpace> {
    Arc::new(LConvexSpace::build(l.clone(), Carrier::indexed(n), gens, &Budget::default()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn residuum_is_the_right_adjoint((l, [a, b, c]) in lattice_and_degrees()) {
        prop_assert_eq!(l.leq(a, b), l.residuum(a, b) == l.top());
        prop_assert_eq!(l.leq(l.tensor(a, b), c), l.leq(a, l.residuum(b, c)));
        if l.leq(a, b) {
            prop_assert!(l.leq(l.residuum(b, c), l.residuum(a, c)));
            prop_assert!(l.leq(l.residuum(c, a), l.residuum(c, b)));
        }
        prop_assert_eq!(l.tensor(a, b), l.tensor(b, a));
        prop_assert_eq!(l.tensor(l.top(), a), a);
    }

    #[test]
    fn sub_is_an_l_order((l, n, _, raw) in space_parts()) {
        let a = subset(&l, &raw[0..n]);
        let b = subset(&l, &raw[n..2 * n]);
        let c = subset(&l, &raw[2 * n..3 * n]);
        prop_assert_eq!(l.sub(&a, &a).unwrap(), l.top());
        prop_assert!(l.leq(l.tensor(l.sub(&a, &b).unwrap(), l.sub(&b, &c).unwrap()), l.sub(&a, &c).unwrap()));
        if l.sub(&a, &b).unwrap() == l.top() && l.sub(&b, &a).unwrap() == l.top() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn zadeh_images_are_adjoint((l, n, _, raw) in space_parts(), m in 1usize..=3, table in prop::collection::vec(0usize..3, 3)) {
        let f = CarrierMap::new(table[..n].iter().map(|&y| y % m).collect(), m).unwrap();
        let a = subset(&l, &raw[0..n]);
        let a2 = l.join_subsets(&a, &subset(&l, &raw[n..2 * n]));
        let b = subset(&l, &raw[6..6 + m]);
        let fa = l.zadeh_forward(&f, &a).unwrap();
        prop_assert_eq!(l.sub(&fa, &b).unwrap(), l.sub(&a, &l.zadeh_backward(&f, &b).unwrap()).unwrap());
        prop_assert!(fa.leq(&l, &l.zadeh_forward(&f, &a2).unwrap()));
        let points: Vec<usize> = (0..n).step_by(2).collect();
        prop_assert_eq!(a.extend(&l, n, &points).restrict(&points).len(), points.len());
        prop_assert_eq!(a.restrict(&points).extend(&l, n, &points).restrict(&points), a.restrict(&points));
    }

    #[test]
    fn hull_is_a_closure_operator((l, n, gens, raw) in space_parts()) {
        let x = build(&l, n, &gens);
        let a = subset(&l, &raw[0..n]);
        let b = l.meet_subsets(&a, &subset(&l, &raw[n..2 * n]));
        let h = x.hull(&a);
        prop_assert!(x.contains(&h));
        prop_assert!(a.leq(&l, &h));
        prop_assert_eq!(x.hull(&h), h.clone());
        prop_assert!(x.hull(&b).leq(&l, &h));
        for d in l.degrees() {
            prop_assert!(l.scale_tensor(d, &h).leq(&l, &x.hull(&l.scale_tensor(d, &a))));
        }
        for m in x.members() {
            prop_assert_eq!(l.sub(&a, m).unwrap(), l.sub(&h, m).unwrap());
        }
        prop_assert!(x.verify_axioms(&Budget::default()).passed());
    }

    #[test]
    fn closure_order_does_not_matter((l, n, gens, _) in space_parts()) {
        let b = Budget::default();
        let meets = LConvexSpace::build_ordered(l.clone(), Carrier::indexed(n), &gens, &b, ClosureOrder::MeetsFirst).unwrap();
        let scaling = LConvexSpace::build_ordered(l.clone(), Carrier::indexed(n), &gens, &b, ClosureOrder::ScalingFirst).unwrap();
        prop_assert_eq!(meets, scaling);
    }

    #[test]
    fn sobriety_fast_path_and_f_closure_routes((l, n, gens, raw) in space_parts()) {
        let x = build(&l, n, &gens);
        let b = Budget::default();
        prop_assert_eq!(is_sober(&x).sober, is_sober_by_definition(&x, &b).unwrap().sober);
        let start: Vec<usize> = (0..n).filter(|&p| raw[p] % 2 == 0).collect();
        let fast = f_closure(&x, &start);
        prop_assert_eq!(&fast, &f_closure_by_enumeration(&x, &start, &b).unwrap());
        prop_assert_eq!(&fast, &f_closure_by_intersection(&x, &start, &b).unwrap());
    }

    #[test]
    fn sobrification_invariants((l, n, gens, _) in space_parts()) {
        let x = build(&l, n, &gens);
        let b = Budget::default();
        let s = sobrify(x.clone(), &b).unwrap();
        prop_assert!(is_sober(&s.xf_space).sober);
        prop_assert!(s.xi.is_convexity_preserving());
        prop_assert_eq!(is_sober(&x).sober, s.xi.is_convex_homeomorphism());
        prop_assert_eq!(s.pullback_witness(), None);
        prop_assert!(sobrify(s.xf_space.clone(), &b).unwrap().xi.is_convex_homeomorphism());
        if is_s0(&x) {
            let v = sober_join_characterization(&x, &b).unwrap();
            if v.sober {
                prop_assert!(v.members_scott_convex && v.join_semilattice);
            }
        }
    }

    #[test]
    fn space_files_round_trip((l, n, gens, _) in space_parts()) {
        let x = build(&l, n, &gens);
        let text = write_space("s", l.name(), &x);
        let back = parse_space(&text, &mut Fixed(l.clone()), true, &Budget::default()).unwrap();
        prop_assert_eq!(back.space.members(), x.members());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scott_structure_recovers_the_order(name in prop::sample::select(SMALL[..3].to_vec()), n in 1usize..=3, seed in any::<u64>()) {
        let l = lattice(name);
        let b = Budget::default();
        let p = sample_orders(&l, n, 1, seed, &b).unwrap().pop().unwrap();
        let sigma = scott_structure(&p, &b).unwrap();
        prop_assert!(sigma.verify_axioms(&b).passed());
        prop_assert_eq!(specialization(&sigma).unwrap(), p.clone());
        let text = write_order("p", l.name(), &p);
        prop_assert_eq!(parse_order(&text, &mut Fixed(l.clone())).unwrap().order, p);
    }

    #[test]
    fn completions_are_join_semilattices(name in prop::sample::select(SMALL[..3].to_vec()), n in 1usize..=2, seed in any::<u64>()) {
        let l = lattice(name);
        let b = Budget::default();
        let p = sample_orders(&l, n, 1, seed, &b).unwrap().pop().unwrap();
        let c = completion(&p, &b).unwrap();
        prop_assert!(c.is_join_semilattice(&b).unwrap());
        prop_assert!(c.structures_agree(&b).unwrap());
        prop_assert!(c.xi_is_order_embedding(&p));
        prop_assert!(c.xi_is_scott_cp(&p, &b).unwrap());
        let points = c.sobrification.provenance();
        for (i, a) in points.iter().enumerate() {
            for (j, bb) in points.iter().enumerate() {
                prop_assert_eq!(c.order.e(i, j), l.sub(a, bb).unwrap());
            }
        }
    }
}
