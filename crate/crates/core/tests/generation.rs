//! Generator contracts and the pinned census.

use std::sync::Arc;

use lconvex::budget::Budget;
use lconvex::harness::corpus::census;
use lconvex::harness::generate::{all_orders, all_spaces, sample_orders, sample_spaces};
use lconvex::harness::{run_suite, InstanceSpec};
use lconvex::{ChainKind, Error, ResiduatedLattice};

fn boolean() -> Arc<ResiduatedLattice> {
    Arc::new(ResiduatedLattice::boolean())
}

fn godel3() -> Arc<ResiduatedLattice> {
    Arc::new(ResiduatedLattice::chain(3, ChainKind::Godel).unwrap())
}

#[test]
fn pinned_census() {
    let b = Budget::default();
    let count = |l: &ResiduatedLattice| census(l, 3, b.max_scan).unwrap().iter().map(|e| e.spaces).collect::<Vec<_>>();
    assert_eq!(count(&boolean()), [1, 4, 45]);
    assert_eq!(count(&godel3()), [2, 37, 10016]);
    assert_eq!(count(&ResiduatedLattice::chain(3, ChainKind::Lukasiewicz).unwrap()), [1, 16, 7218]);
}

#[test]
fn census_matches_enumeration() {
    let b = Budget::default();
    for l in [boolean(), godel3()] {
        for n in 1..=2 {
            let spaces = all_spaces(&l, n, &b).unwrap();
            assert_eq!(spaces.len() as u64, census(&l, n, b.max_scan).unwrap()[n - 1].spaces);
            for s in &spaces {
                assert!(s.verify_axioms(&b).passed());
            }
        }
    }
}

#[test]
fn boolean_one_point_space_is_unique() {
    // on one point over {0,1} the constants already exhaust L^X
    let spaces = all_spaces(&boolean(), 1, &Budget::default()).unwrap();
    assert_eq!(spaces.len(), 1);
    assert_eq!(spaces[0].members().len(), 2);
}

#[test]
fn boolean_two_point_orders() {
    let l = boolean();
    let orders = all_orders(&l, 2, &Budget::default()).unwrap();
    let mut shapes: Vec<(bool, bool)> =
        orders.iter().map(|o| (o.e(0, 1) == l.top(), o.e(1, 0) == l.top())).collect();
    shapes.sort();
    assert_eq!(shapes, [(false, false), (false, true), (true, false)]);
    assert_eq!(all_orders(&godel3(), 1, &Budget::default()).unwrap().len(), 1);
}

#[test]
fn sampling_is_reproducible() {
    let b = Budget::default();
    let l = godel3();
    let a = sample_spaces(&l, 3, 10, 42, &b).unwrap();
    let c = sample_spaces(&l, 3, 10, 42, &b).unwrap();
    assert_eq!(a, c);
    let o1 = sample_orders(&l, 3, 5, 9, &b).unwrap();
    let o2 = sample_orders(&l, 3, 5, 9, &b).unwrap();
    assert_eq!(o1, o2);
}

#[test]
fn budgets_refuse_instead_of_sampling() {
    let tight = Budget { max_scan: 10, ..Budget::default() };
    assert!(matches!(all_spaces(&godel3(), 3, &tight), Err(Error::BudgetExceeded { .. })));
    let spec = InstanceSpec { budget: tight, space_points: 3, ..InstanceSpec::default() };
    let report = run_suite(&spec).unwrap();
    assert!(!report.generation_skips.is_empty());
}

#[test]
fn small_reports_are_byte_identical() {
    let spec = InstanceSpec { space_points: 2, seed: 3, ..InstanceSpec::default() };
    let a = run_suite(&spec).unwrap().to_json();
    let b = run_suite(&spec).unwrap().to_json();
    assert_eq!(a, b);
    assert!(lconvex::harness::SuiteReport::from_json(&a).is_ok());
}
