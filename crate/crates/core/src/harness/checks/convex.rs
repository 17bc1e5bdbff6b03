use std::sync::Arc;

use super::super::corpus::SpaceCase;
use super::super::suite::{Ctx, Tally, TheoremCheck};
use super::{all_spaces, pair_origin, space_origin, space_pairs};
use crate::budget::{ensure, power};
use crate::convex::{ClosureOrder, LConvexSpace, SpaceMap};
use crate::error::Result;
use crate::fuzzy::{all_lsubsets_within, is_finite_subset, CarrierMap, LSubset};
use crate::lattice::ResiduatedLattice;

pub(in crate::harness) fn checks() -> Vec<TheoremCheck> {
    vec![
        TheoremCheck {
            id: "convex-structure-axioms",
            statement: "C1-C4 hold for every generated family; closure from generators is the least structure, in either step order",
            envelope: "space corpus; every single-generator closure inside the exhaustive envelope",
            run: convex_structure_axioms,
        },
        TheoremCheck {
            id: "hull-operator",
            statement: "co(A) is the least member above A; co is inflationary, idempotent and monotone",
            envelope: "space corpus, all A (and pairs A <= B) in L^X",
            run: hull_operator,
        },
        TheoremCheck {
            id: "hull-laws",
            statement: "a (x) co(A) <= co(a (x) A); sub(A, B) <= sub(co A, co B); sub(A, B) = sub(co A, B) for convex B",
            envelope: "space corpus, all A, B in L^X and a in L",
            run: hull_laws,
        },
        TheoremCheck {
            id: "map-classes",
            statement: "convexity-preserving, convex-to-convex and convex-homeomorphic maps match their definitions; identities are homeomorphisms",
            envelope: "ordered pairs of exhaustive spaces on at most map_points points, all maps",
            run: map_classes,
        },
        TheoremCheck {
            id: "hull-image-characterization",
            statement: "f is convexity-preserving iff f->(co_X(A)) <= co_Y(f->(A)) for every A",
            envelope: "ordered pairs of exhaustive spaces on at most map_points points, all maps",
            run: hull_image_characterization,
        },
        TheoremCheck {
            id: "finite-subsets",
            statement: "over a finite lattice and carrier every L-subset is finite (so chi_F is finite, in frames or not)",
            envelope: "space lattices up to the space envelope, law lattices on one point; directed families up to 3",
            run: finite_subsets,
        },
        TheoremCheck {
            id: "polytope-compact-collapse",
            statement: "polytopes = compact convex sets = nonempty members (finite collapse; open in the infinite case)",
            envelope: "space corpus, every member; directed families up to 4",
            run: polytope_compact_collapse,
        },
    ]
}

fn convex_structure_axioms(ctx: &Ctx) -> Tally {
    let spaces = Tally::over(&all_spaces(ctx), space_origin, |c| {
        let report = c.space.verify_axioms(ctx.budget);
        if report.checks.iter().any(|a| a.axiom == "C2" && a.cases == 0) {
            ensure("C2 directed scan", u64::MAX, ctx.budget.max_directed)?;
        }
        Ok((!report.passed()).then(|| report.failures().join("; ")))
    });
    let mut cases: Vec<(Arc<ResiduatedLattice>, usize)> = Vec::new();
    for l in &ctx.corpus.space_lattices {
        for n in 1..=ctx.spec.space_points {
            cases.push((l.clone(), n));
        }
    }
    let closures = Tally::over(&cases, |(l, n)| format!("{}/{n}pt closures", l.name()), |(l, n)| {
        let exhaustive: Vec<&SpaceCase> = ctx
            .corpus
            .spaces
            .iter()
            .filter(|c| c.exhaustive && c.space.lattice().id() == l.id() && c.space.size() == *n)
            .collect();
        let carrier = crate::fuzzy::Carrier::indexed(*n);
        for g in all_lsubsets_within(l, *n, ctx.budget)? {
            let gens = [g.clone()];
            let a = LConvexSpace::build_ordered(l.clone(), carrier.clone(), &gens, ctx.budget, ClosureOrder::MeetsFirst)?;
            let b = LConvexSpace::build_ordered(l.clone(), carrier.clone(), &gens, ctx.budget, ClosureOrder::ScalingFirst)?;
            require!(a == b, "closure of {} depends on step order", g.render(l));
            let report = a.verify_axioms(ctx.budget);
            require!(report.passed(), "closure of {}: {}", g.render(l), report.failures().join("; "));
            require!(a.contains(&g), "closure of {} misses it", g.render(l));
            for s in &exhaustive {
                if s.space.contains(&g) {
                    require!(
                        a.members().iter().all(|m| s.space.contains(m)),
                        "closure of {} is not below {}",
                        g.render(l),
                        s.origin
                    );
                }
            }
        }
        Ok(None)
    });
    spaces.merge(closures)
}

fn hull_table(space: &LConvexSpace, ctx: &Ctx) -> Result<(Vec<LSubset>, Vec<LSubset>)> {
    let subsets = all_lsubsets_within(space.lattice(), space.size(), ctx.budget)?;
    let hulls = subsets.iter().map(|a| space.hull(a)).collect();
    Ok((subsets, hulls))
}

fn hull_operator(ctx: &Ctx) -> Tally {
    Tally::over(&all_spaces(ctx), space_origin, |c| {
        let x = &c.space;
        let l = &**x.lattice();
        let (subsets, hulls) = hull_table(x, ctx)?;
        ensure("hull pair scan", power(subsets.len(), 2), ctx.budget.max_scan)?;
        for (a, h) in subsets.iter().zip(&hulls) {
            require!(x.contains(h), "co({}) = {} is not convex", a.render(l), h.render(l));
            require!(a.leq(l, h), "co({}) is not above it", a.render(l));
            require!(&x.hull(h) == h, "co is not idempotent at {}", a.render(l));
            for m in x.members() {
                if a.leq(l, m) {
                    require!(h.leq(l, m), "co({}) is not below the member {}", a.render(l), m.render(l));
                }
            }
        }
        for (a, ha) in subsets.iter().zip(&hulls) {
            for (b, hb) in subsets.iter().zip(&hulls) {
                if a.leq(l, b) {
                    require!(ha.leq(l, hb), "co not monotone at {} <= {}", a.render(l), b.render(l));
                }
            }
        }
        Ok(None)
    })
}

fn hull_laws(ctx: &Ctx) -> Tally {
    Tally::over(&all_spaces(ctx), space_origin, |c| {
        let x = &c.space;
        let l = &**x.lattice();
        let (subsets, hulls) = hull_table(x, ctx)?;
        ensure("hull pair scan", power(subsets.len(), 2), ctx.budget.max_scan)?;
        for (a, h) in subsets.iter().zip(&hulls) {
            for d in l.degrees() {
                let lhs = l.scale_tensor(d, h);
                let rhs = x.hull(&l.scale_tensor(d, a));
                require!(lhs.leq(l, &rhs), "item 1 fails at a = {}, A = {}", l.label(d), a.render(l));
            }
        }
        for (a, ha) in subsets.iter().zip(&hulls) {
            for (b, hb) in subsets.iter().zip(&hulls) {
                let s = l.incl(a, b);
                require!(l.leq(s, l.incl(ha, hb)), "item 2 fails at A = {}, B = {}", a.render(l), b.render(l));
            }
            for b in x.members() {
                require!(l.incl(a, b) == l.incl(ha, b), "item 3 fails at A = {}, B = {}", a.render(l), b.render(l));
            }
        }
        Ok(None)
    })
}

/// Whether every preimage of a target member is a source member, read off the definition.
fn preserves(f: &CarrierMap, x: &LConvexSpace, y: &LConvexSpace) -> bool {
    let l = &**x.lattice();
    y.members().iter().all(|b| x.contains(&l.backward(f, b)))
}

fn maps_to(f: &CarrierMap, x: &LConvexSpace, y: &LConvexSpace) -> bool {
    let l = &**x.lattice();
    x.members().iter().all(|a| y.contains(&l.forward(f, a)))
}

fn map_classes(ctx: &Ctx) -> Tally {
    let pairs = space_pairs(ctx, ctx.spec.map_points);
    Tally::over(&pairs, pair_origin, |(xc, yc)| {
        let (x, y) = (&xc.space, &yc.space);
        ensure("map scan", power(y.size(), x.size()), ctx.budget.max_maps)?;
        if xc.origin == yc.origin {
            let id = SpaceMap::new(CarrierMap::identity(x.size()), x.clone(), y.clone())?;
            require!(id.is_convex_homeomorphism(), "identity is not a homeomorphism");
        }
        for f in CarrierMap::all(x.size(), y.size()) {
            let m = SpaceMap::new(f.clone(), x.clone(), y.clone())?;
            let cp = preserves(&f, x, y);
            let cc = maps_to(&f, x, y);
            require!(m.is_convexity_preserving() == cp, "f = {:?}: convexity-preserving verdict", f.table());
            require!(m.is_convex_to_convex() == cc, "f = {:?}: convex-to-convex verdict", f.table());
            require!(m.is_convex_homeomorphism() == (f.is_bijective() && cp && cc), "f = {:?}: homeomorphism verdict", f.table());
            // cached verdicts must equal a fresh computation
            require!(m.is_convexity_preserving() == cp, "f = {:?}: cached verdict drifted", f.table());
            if !cp {
                let w = m.preimage_witness();
                let l = &**x.lattice();
                require!(
                    w.as_ref().is_some_and(|b| y.contains(b) && !x.contains(&l.backward(&f, b))),
                    "f = {:?}: bad preimage witness",
                    f.table()
                );
            }
            if m.is_convex_homeomorphism() {
                let inv = f.inverse().expect("bijective");
                let back = SpaceMap::new(inv, y.clone(), x.clone())?;
                require!(back.is_convex_homeomorphism(), "f = {:?}: inverse is not a homeomorphism", f.table());
            }
        }
        Ok(None)
    })
}

fn hull_image_characterization(ctx: &Ctx) -> Tally {
    let pairs = space_pairs(ctx, ctx.spec.map_points);
    Tally::over(&pairs, pair_origin, |(xc, yc)| {
        let (x, y) = (&xc.space, &yc.space);
        let l = &**x.lattice();
        ensure("map scan", power(y.size(), x.size()), ctx.budget.max_maps)?;
        for f in CarrierMap::all(x.size(), y.size()) {
            let m = SpaceMap::new(f.clone(), x.clone(), y.clone())?;
            let v = m.hull_image_characterization(ctx.budget)?;
            let cp = m.is_convexity_preserving();
            require!(v.holds == cp, "f = {:?}: hull inequality {} but convexity-preserving {cp}", f.table(), v.holds);
            if let Some(a) = &v.witness {
                let lhs = l.forward(&f, &x.hull(a));
                let rhs = y.hull(&l.forward(&f, a));
                require!(!lhs.leq(l, &rhs), "f = {:?}: witness {} does not violate", f.table(), a.render(l));
            }
            require!(v.holds || v.witness.is_some(), "f = {:?}: failure without witness", f.table());
        }
        Ok(None)
    })
}

fn finite_subsets(ctx: &Ctx) -> Tally {
    let mut cases: Vec<(Arc<ResiduatedLattice>, usize)> = Vec::new();
    for l in &ctx.corpus.space_lattices {
        for n in 1..=ctx.spec.space_points {
            cases.push((l.clone(), n));
        }
    }
    for l in &ctx.corpus.law_lattices {
        cases.push((l.clone(), 1));
    }
    let tally = Tally::over(&cases, |(l, n)| format!("{}/{n}pt", l.name()), |(l, n)| {
        for a in all_lsubsets_within(l, *n, ctx.budget)? {
            let v = is_finite_subset(l, &a, 3, ctx.budget)?;
            require!(v.finite && v.violations.is_empty(), "{}: {}", a.render(l), v.violations.join(", "));
            if !v.exhaustive {
                ensure("directed family oracle", u64::MAX, ctx.budget.max_directed)?;
            }
        }
        Ok(None)
    });
    let mut frames: Vec<&str> =
        ctx.corpus.space_lattices.iter().chain(&ctx.corpus.law_lattices).filter(|l| l.is_frame()).map(|l| l.name()).collect();
    frames.sort_unstable();
    frames.dedup();
    tally.note(format!("frames among the lattices: {}", frames.join(", ")))
}

fn polytope_compact_collapse(ctx: &Ctx) -> Tally {
    Tally::over(&all_spaces(ctx), space_origin, |c| {
        let x = &c.space;
        let l = &**x.lattice();
        let flags = x.compact_flags_by_definition(4, ctx.budget)?;
        for (m, by_def) in x.members().iter().zip(flags) {
            let nonempty = m.is_nonempty(l);
            let fast = x.is_polytope(m)?;
            let searched = x.polytope_search(m, ctx.budget)?;
            let compact = x.is_compact(m)?;
            require!(
                fast.polytope == nonempty && searched.polytope == nonempty && compact == nonempty && by_def == nonempty,
                "{}: nonempty {nonempty}, polytope {}/{}, compact {compact}/{by_def}",
                m.render(l),
                fast.polytope,
                searched.polytope
            );
            if let Some(f) = &searched.witness {
                require!(f.is_nonempty(l) && &x.hull(f) == m, "{}: bad polytope witness", m.render(l));
            }
        }
        Ok(None)
    })
    .note("the question whether every compact convex set is a polytope stays open in the infinite case")
}
