use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::super::corpus::{batch_seed, SpaceCase};
use super::super::suite::{Ctx, Tally, TheoremCheck};
use super::{all_spaces, indexed_origin, indexed_spaces, pair_origin, space_origin, space_pairs};
use crate::budget::{ensure, power};
use crate::convex::{verify_family, LConvexSpace, SpaceMap};
use crate::error::{Error, Result};
use crate::fuzzy::{all_lsubsets, all_lsubsets_within, for_each_directed_subfamily, Carrier, CarrierMap, LSubset};
use crate::lattice::{ChainKind, ResiduatedLattice};
use crate::sober::{
    cp_hull_by_formula, extend_to_sobrification, f_closed_sets, f_closure, f_closure_by_enumeration,
    f_closure_by_intersection, hull_witnesses, is_f_closed, is_f_continuous, is_s0, is_sober, is_sober_by_definition,
    sobrify, theta, xf_points, xf_points_by_definition, CompactFamily, CpSpace, Uniqueness,
};

pub(in crate::harness) fn checks() -> Vec<TheoremCheck> {
    vec![
        TheoremCheck {
            id: "sobriety-decision",
            statement: "sober iff every nonempty finite F has exactly one x with co(F) = co(1_x); the point-hull bijection decides it",
            envelope: "space corpus; the oracle enumerates every nonempty F",
            run: sobriety_decision,
        },
        TheoremCheck {
            id: "phi-lemma",
            statement: "phi keeps 0 and 1, directed joins, meets and a -> C, and sub_X(A, B) = sub(phi A, phi B)",
            envelope: "space corpus; directed families up to 3",
            run: phi_lemma,
        },
        TheoremCheck {
            id: "cp-space-sober",
            statement: "Cp(C(X)) is a sober L-convex space",
            envelope: "space corpus",
            run: cp_space_sober,
        },
        TheoremCheck {
            id: "f-closure-system",
            statement: "F-closure is the least F-closed superset, by three routes; F-closed sets are closed under meets; the sup formula matches the hull in Cp and X^F = cp(C(X))",
            envelope: "space corpus, every crisp B; Cp hulls of every nonempty K when |L|^|cp| <= 729, else of phi(C) and phi(C) restricted to Theta",
            run: f_closure_system,
        },
        TheoremCheck {
            id: "convexity-preserving-consequences",
            statement: "a convexity-preserving f sends sobriety witnesses to sobriety witnesses, is F-continuous, and two such maps into an S0 space agreeing on Z agree on cl_F(Z)",
            envelope: "ordered pairs of exhaustive spaces on at most map_points points, all convexity-preserving maps",
            run: convexity_preserving_consequences,
        },
        TheoremCheck {
            id: "xf-sober",
            statement: "X^F is sober; sobrifying X^F again gives a convex-homeomorphism",
            envelope: "space corpus",
            run: xf_sober,
        },
        TheoremCheck {
            id: "xi-properties",
            statement: "xi is convexity-preserving with xi<-(varphi(A)) = A; X is sober iff xi is a convex-homeomorphism",
            envelope: "space corpus",
            run: xi_properties,
        },
        TheoremCheck {
            id: "f-closed-transfer",
            statement: "an F-closed subset of X^F is F-closed in Cp(C(X))",
            envelope: "space corpus, every F-closed subset of X^F while there are at most max_crisp",
            run: f_closed_transfer,
        },
        TheoremCheck {
            id: "sobrification-universal",
            statement: "every convexity-preserving f: X -> Z into a sober Z factors uniquely through xi",
            envelope: "Boolean pairs on at most 2 points (exhaustive) plus seeded triples over 3-element lattices",
            run: sobrification_universal,
        },
        TheoremCheck {
            id: "discretized-interval-example",
            statement: "on a Godel chain, {a meet phi : phi increasing, phi >= id} is a stratified L-convex structure (sobriety computed, not asserted)",
            envelope: "Godel chains with 3, 4 and 5 elements as lattice and carrier",
            run: discretized_interval_example,
        },
    ]
}

fn sobriety_decision(ctx: &Ctx) -> Tally {
    Tally::over(&all_spaces(ctx), space_origin, |c| {
        let x = &c.space;
        let l = &**x.lattice();
        let fast = is_sober(x);
        let slow = is_sober_by_definition(x, ctx.budget)?;
        require!(fast.sober == slow.sober, "fast path says {}, definition says {}", fast.sober, slow.sober);
        let hulls = x.point_hulls();
        for v in [&fast, &slow] {
            if let Some(w) = &v.witness {
                let m = hull_witnesses(&hulls, &x.hull(&w.f));
                require!(w.f.is_nonempty(l) && m.len() != 1, "witness {} is not a counterexample", w.f.render(l));
            }
            require!(v.sober || v.witness.is_some(), "failure without witness");
        }
        let injective = (0..x.size()).all(|p| (0..p).all(|q| hulls[p] != hulls[q]));
        require!(is_s0(x) == injective, "S0 verdict disagrees with point hulls");
        require!(!fast.sober || injective, "sober but not S0");
        Ok(None)
    })
}

fn phi_lemma(ctx: &Ctx) -> Tally {
    Tally::over(&all_spaces(ctx), space_origin, |c| {
        let x = &c.space;
        let l = &**x.lattice();
        let cp = CompactFamily::new(x.clone());
        let k = cp.len();
        let ms = x.members();
        let phis: Vec<LSubset> = ms.iter().map(|m| cp.phi(m)).collect::<Result<_>>()?;
        let phi_of = |a: &LSubset| cp.phi(a);
        require!(phi_of(&LSubset::constant(x.size(), l.bottom()))? == LSubset::constant(k, l.bottom()), "phi(0) is not 0");
        require!(phi_of(&LSubset::constant(x.size(), l.top()))? == LSubset::constant(k, l.top()), "phi(1) is not 1");
        let mut directed: Result<Option<String>> = Ok(None);
        for_each_directed_subfamily(l, ms, 3, ctx.budget, |fam| {
            let join = l.join_family(x.size(), fam.iter().map(|&i| &ms[i])).expect("same carrier");
            let rhs = l.join_family(k, fam.iter().map(|&i| &phis[i])).expect("same carrier");
            match phi_of(&join) {
                Ok(lhs) if lhs == rhs => ControlFlow::Continue(()),
                Ok(_) => {
                    directed = Ok(Some(format!("item 2 fails at a directed family containing {}", ms[fam[0]].render(l))));
                    ControlFlow::Break(())
                }
                Err(e) => {
                    directed = Err(e);
                    ControlFlow::Break(())
                }
            }
        })?;
        if let Some(w) = directed? {
            return Ok(Some(w));
        }
        let all_meet = l.meet_family(x.size(), ms.iter())?;
        require!(phi_of(&all_meet)? == l.meet_family(k, phis.iter())?, "item 3 fails for the whole family");
        for (i, a) in ms.iter().enumerate() {
            for (j, b) in ms.iter().enumerate() {
                let meet = phi_of(&l.meet_subsets(a, b))?;
                require!(meet == l.meet_subsets(&phis[i], &phis[j]), "item 3 fails at {}, {}", a.render(l), b.render(l));
                require!(l.incl(a, b) == l.incl(&phis[i], &phis[j]), "item 5 fails at {}, {}", a.render(l), b.render(l));
            }
            for d in l.degrees() {
                let lhs = phi_of(&l.scale_residuum(d, a))?;
                require!(lhs == l.scale_residuum(d, &phis[i]), "item 4 fails at {} -> {}", l.label(d), a.render(l));
            }
            require!(a.is_nonempty(l) == phis[i].is_nonempty(l), "phi changes compactness of {}", a.render(l));
        }
        Ok(None)
    })
}

fn cp_space_sober(ctx: &Ctx) -> Tally {
    Tally::over(&all_spaces(ctx), space_origin, |c| {
        ensure("convex family", c.space.members().len() as u64, ctx.budget.max_family)?;
        let cp = CpSpace::new(c.space.clone());
        let report = cp.space.verify_axioms(ctx.budget);
        require!(report.passed(), "Cp is not a convex space: {}", report.failures().join("; "));
        let v = is_sober(&cp.space);
        require!(v.sober, "Cp is not sober; witness {:?}", v.witness.map(|w| w.f.render(cp.space.lattice())));
        Ok(None)
    })
}

fn crisp_subsets(n: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n).map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect()).collect()
}

fn f_closure_system(ctx: &Ctx) -> Tally {
    ctx.warm_sobrifications();
    Tally::over(&indexed_spaces(ctx), indexed_origin, |&(i, c)| {
        let x = &c.space;
        let l = &**x.lattice();
        ensure("crisp subset scan", power(2, x.size()), ctx.budget.max_crisp)?;
        let n = x.size();
        for b in crisp_subsets(n) {
            let fast = f_closure(x, &b);
            require!(fast == f_closure_by_enumeration(x, &b, ctx.budget)?, "routes disagree at {b:?}");
            require!(fast == f_closure_by_intersection(x, &b, ctx.budget)?, "intersection route disagrees at {b:?}");
            require!(b.iter().all(|p| fast.contains(p)), "closure of {b:?} misses it");
            require!(is_f_closed(x, &fast, ctx.budget)?, "closure of {b:?} is not F-closed");
        }
        require!(is_f_closed(x, &[], ctx.budget)?, "the empty set is not F-closed");
        let closed = f_closed_sets(x, ctx.budget)?;
        for a in &closed {
            for b in &closed {
                let meet: Vec<usize> = a.iter().copied().filter(|p| b.contains(p)).collect();
                require!(closed.contains(&meet), "{a:?} meet {b:?} is not F-closed");
            }
        }
        let sob = ctx.sobrification(i)?;
        let cp = &sob.cp;
        let start = theta(cp);
        require!(xf_points(cp, &start) == xf_points_by_definition(cp, ctx.budget)?, "X^F formula disagrees with the F-closure iteration");
        require!(sob.is_full(), "X^F is a proper part of cp(C(X))");
        let k = cp.family.len();
        let chi = LSubset::characteristic(l, k, start.iter().copied());
        let mut probes: Vec<LSubset> = Vec::new();
        if power(l.size(), k) <= 729 {
            probes.extend(all_lsubsets(l, k).filter(|p| p.is_nonempty(l)));
        } else {
            for m in x.members() {
                let p = cp.family.phi(m)?;
                probes.push(l.meet_subsets(&p, &chi));
                probes.push(p);
            }
            probes.retain(|p| p.is_nonempty(l));
        }
        for p in &probes {
            require!(cp_hull_by_formula(cp, p) == cp.space.hull(p), "Cp hull formula fails at {}", p.render(l));
        }
        Ok(None)
    })
}

fn convexity_preserving_consequences(ctx: &Ctx) -> Tally {
    let pairs = space_pairs(ctx, ctx.spec.map_points);
    Tally::over(&pairs, pair_origin, |(xc, yc)| {
        let (x, y) = (&xc.space, &yc.space);
        let l = &**x.lattice();
        ensure("map scan", power(y.size(), x.size()), ctx.budget.max_maps)?;
        let subsets = all_lsubsets_within(l, x.size(), ctx.budget)?;
        let x_hulls = x.point_hulls();
        let y_hulls = y.point_hulls();
        let maps: Vec<SpaceMap> = CarrierMap::all(x.size(), y.size())
            .map(|f| SpaceMap::new(f, x.clone(), y.clone()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(SpaceMap::is_convexity_preserving)
            .collect();
        for m in &maps {
            let f = m.map();
            for a in subsets.iter().filter(|a| a.is_nonempty(l)) {
                let h = x.hull(a);
                for p in hull_witnesses(&x_hulls, &h) {
                    require!(
                        y.hull(&l.forward(f, a)) == y_hulls[f.apply(p)],
                        "item 1 fails: f = {:?}, A = {}",
                        f.table(),
                        a.render(l)
                    );
                }
            }
            require!(is_f_continuous(m, ctx.budget)?, "f = {:?} is not F-continuous", f.table());
            if is_s0(y) {
                for g in &maps {
                    let z: Vec<usize> = (0..x.size()).filter(|&p| f.apply(p) == g.map().apply(p)).collect();
                    let cl = f_closure(x, &z);
                    require!(
                        cl.iter().all(|&p| f.apply(p) == g.map().apply(p)),
                        "item 3 fails: f = {:?}, g = {:?}",
                        f.table(),
                        g.map().table()
                    );
                }
            }
        }
        Ok(None)
    })
}

fn xf_sober(ctx: &Ctx) -> Tally {
    ctx.warm_sobrifications();
    Tally::over(&indexed_spaces(ctx), indexed_origin, |&(i, _)| {
        let sob = ctx.sobrification(i)?;
        let report = sob.xf_space.verify_axioms(ctx.budget);
        require!(report.passed(), "X^F is not a convex space: {}", report.failures().join("; "));
        require!(is_sober(&sob.xf_space).sober, "X^F is not sober");
        let again = sobrify(sob.xf_space.clone(), ctx.budget)?;
        require!(again.xi.is_convex_homeomorphism(), "xi of X^F is not a convex-homeomorphism");
        Ok(None)
    })
}

fn xi_properties(ctx: &Ctx) -> Tally {
    ctx.warm_sobrifications();
    Tally::over(&indexed_spaces(ctx), indexed_origin, |&(i, c)| {
        let x = &c.space;
        let l = &**x.lattice();
        let sob = ctx.sobrification(i)?;
        require!(sob.xi.is_convexity_preserving(), "xi is not convexity-preserving");
        let sober = is_sober(x).sober;
        let homeo = sob.xi.is_convex_homeomorphism();
        require!(sober == homeo, "sober {sober} but xi homeomorphism {homeo}");
        if let Some(a) = sob.pullback_witness() {
            return Ok(Some(format!("xi<-(varphi({})) differs from it", a.render(l))));
        }
        let prov = sob.provenance();
        for p in 0..x.size() {
            require!(prov[sob.xi.map().apply(p)] == &x.point_hull(p), "xi({p}) is not co(1_{p})");
        }
        Ok(None)
    })
}

fn f_closed_transfer(ctx: &Ctx) -> Tally {
    ctx.warm_sobrifications();
    Tally::over(&indexed_spaces(ctx), indexed_origin, |&(i, _)| {
        let sob = ctx.sobrification(i)?;
        Ok(sob.f_closed_transfer(ctx.budget)?.map(|z| format!("{z:?} is F-closed in X^F only")))
    })
}

/// What `extend_to_sobrification` must do on one triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Expect {
    Extends,
    NotSober,
    NotPreserving,
}

struct Triple<'a> {
    x: (usize, &'a SpaceCase),
    z: &'a SpaceCase,
    f: CarrierMap,
    expect: Expect,
}

fn sobrification_universal(ctx: &Ctx) -> Tally {
    ctx.warm_sobrifications();
    let indexed = indexed_spaces(ctx);
    let mut triples: Vec<Triple> = Vec::new();
    let boolean: Vec<(usize, &SpaceCase)> = indexed
        .iter()
        .copied()
        .filter(|(_, c)| c.exhaustive && c.space.lattice().size() == 2 && c.space.size() <= 2)
        .collect();
    for &(i, xc) in &boolean {
        for &(_, zc) in &boolean {
            if xc.space.lattice().id() != zc.space.lattice().id() {
                continue;
            }
            let sober = is_sober(&zc.space).sober;
            for f in CarrierMap::all(xc.space.size(), zc.space.size()) {
                let cp = SpaceMap::new(f.clone(), xc.space.clone(), zc.space.clone()).is_ok_and(|m| m.is_convexity_preserving());
                let expect = match (sober, cp) {
                    (false, _) => Expect::NotSober,
                    (true, false) => Expect::NotPreserving,
                    (true, true) => Expect::Extends,
                };
                triples.push(Triple { x: (i, xc), z: zc, f, expect });
            }
        }
    }
    let exhaustive_count = triples.len();
    triples.extend(sampled_triples(ctx, &indexed));
    let sampled = triples.len() - exhaustive_count;
    let skipped_uniqueness = AtomicU64::new(0);
    let tally = Tally::over(
        &triples,
        |t| format!("{} -> {} via {:?}", t.x.1.origin, t.z.origin, t.f.table()),
        |t| {
            let sob = ctx.sobrification(t.x.0)?;
            match (extend_to_sobrification(sob, t.z.space.clone(), &t.f, ctx.budget), t.expect) {
                (Ok(ext), Expect::Extends) => {
                    require!(ext.commutes, "extension does not commute");
                    require!(ext.convexity_preserving, "extension is not convexity-preserving");
                    match ext.uniqueness {
                        Uniqueness::Verified { commuting, candidates } => {
                            require!(commuting == 1, "{commuting} of {candidates} candidate maps commute")
                        }
                        Uniqueness::Skipped { .. } => {
                            skipped_uniqueness.fetch_add(1, Ordering::Relaxed);
                        }
                    }
                    Ok(None)
                }
                (Err(Error::NotSober), Expect::NotSober) => Ok(None),
                (Err(Error::NotConvexityPreserving), Expect::NotPreserving) => Ok(None),
                (Err(e @ Error::BudgetExceeded { .. }), _) => Err(e),
                (r, e) => Ok(Some(format!("expected {e:?}, got {:?}", r.map(|ext| ext.map.map().table().to_vec())))),
            }
        },
    );
    tally
        .note(format!("{exhaustive_count} exhaustive Boolean triples, {sampled} seeded triples"))
        .note(format!("uniqueness skipped for budget on {} triples", skipped_uniqueness.load(Ordering::Relaxed)))
}

/// Seeded `(X, sober Z, convexity-preserving f)` triples over 3-element lattices.
fn sampled_triples<'a>(ctx: &'a Ctx, indexed: &[(usize, &'a SpaceCase)]) -> Vec<Triple<'a>> {
    let pool: Vec<(usize, &SpaceCase)> =
        indexed.iter().copied().filter(|(_, c)| c.exhaustive && c.space.lattice().size() == 3).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(batch_seed(ctx.spec.seed, 1 << 20));
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < ctx.spec.universal_samples && attempts < 100 * ctx.spec.universal_samples.max(1) && !pool.is_empty() {
        attempts += 1;
        let &(i, xc) = pool.choose(&mut rng).expect("nonempty pool");
        let targets: Vec<&SpaceCase> = pool
            .iter()
            .map(|(_, c)| *c)
            .filter(|c| c.space.lattice().id() == xc.space.lattice().id() && is_sober(&c.space).sober)
            .collect();
        let Some(&zc) = targets.choose(&mut rng) else { continue };
        let maps: Vec<CarrierMap> = CarrierMap::all(xc.space.size(), zc.space.size())
            .filter(|f| SpaceMap::new(f.clone(), xc.space.clone(), zc.space.clone()).is_ok_and(|m| m.is_convexity_preserving()))
            .collect();
        if let Some(f) = maps.choose(&mut rng) {
            out.push(Triple { x: (i, xc), z: zc, f: f.clone(), expect: Expect::Extends });
        }
    }
    out
}

/// `{a meet phi}` on the `k`-element Godel chain, with the chain as carrier.
fn interval_family(l: &ResiduatedLattice) -> Vec<LSubset> {
    let k = l.size();
    let mut phis: Vec<Vec<usize>> = vec![vec![]];
    for x in 0..k {
        phis = phis
            .into_iter()
            .flat_map(|p| {
                let low = p.last().copied().unwrap_or(0).max(x);
                (low..k).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    let mut family: Vec<LSubset> = Vec::new();
    for a in l.degrees() {
        for p in &phis {
            let phi = LSubset::from_indices(p);
            family.push(l.meet_subsets(&LSubset::constant(k, a), &phi));
        }
    }
    family.sort();
    family.dedup();
    family
}

fn discretized_interval_example(ctx: &Ctx) -> Tally {
    let sizes = [3usize, 4, 5];
    let verdicts: Vec<std::sync::Mutex<Option<String>>> = sizes.iter().map(|_| std::sync::Mutex::new(None)).collect();
    let tally = Tally::over(&sizes, |k| format!("godel{k}"), |&k| {
        ensure("interval family", power(k, k), ctx.budget.max_scan)?;
        let l = Arc::new(ResiduatedLattice::chain(k, ChainKind::Godel)?);
        let carrier = Carrier::new(l.labels().to_vec())?;
        let family = interval_family(&l);
        ensure("convex family", family.len() as u64, ctx.budget.max_family)?;
        let report = verify_family(&l, k, &family, ctx.budget);
        require!(report.passed(), "{}", report.failures().join("; "));
        let x = LConvexSpace::from_family(l.clone(), carrier, family, ctx.budget)?;
        let sober = is_sober(&x);
        let polytopes = x.members().iter().filter(|m| m.is_nonempty(&l)).count();
        let idx = sizes.iter().position(|&s| s == k).expect("listed size");
        *verdicts[idx].lock().expect("no poisoning") = Some(format!(
            "godel{k}: {} members, {polytopes} polytopes, sober = {}",
            x.members().len(),
            sober.sober
        ));
        Ok(None)
    });
    verdicts.into_iter().filter_map(|m| m.into_inner().expect("no poisoning")).fold(tally, |t, n| t.note(n))
}
