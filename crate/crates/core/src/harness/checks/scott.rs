use rayon::prelude::*;

use super::super::corpus::OrderCase;
use super::super::suite::{Ctx, Tally, TheoremCheck};
use super::{all_orders, all_spaces, indexed_origin, indexed_spaces, order_origin, pair_origin, space_origin};
use crate::budget::{ensure, power};
use crate::error::{Error, Result};
use crate::fuzzy::{lsubset_count, nonempty_lsubsets_within, CarrierMap, LSubset};
use crate::order::LOrderedSet;
use crate::scott::{
    completion, is_scott_cp, scott_cp_equivalence, scott_structure, sober_join_characterization, specialization,
    specialization_by_meets, verify_completion, CompletionResult,
};
use crate::sober::{hull_witnesses, is_s0, is_sober, Uniqueness};

pub(in crate::harness) fn checks() -> Vec<TheoremCheck> {
    vec![
        TheoremCheck {
            id: "specialization-hull",
            statement: "the meet of A(y) -> A(x) over members A equals co(1_y)(x); it is an L-order exactly on S0 spaces",
            envelope: "space corpus",
            run: specialization_hull,
        },
        TheoremCheck {
            id: "specialization-sub",
            statement: "the specialization order of Cp(C(X)) and of X^F is sub",
            envelope: "space corpus",
            run: specialization_sub,
        },
        TheoremCheck {
            id: "scott-structure",
            statement: "sigma*(P) is an S0 L-convex structure whose specialization order is P; down(x) and constants are Scott convex",
            envelope: "order corpus",
            run: scott_structure_check,
        },
        TheoremCheck {
            id: "scott-cp-equivalence",
            statement: "f is Scott convexity-preserving iff f: (P, sigma*(P)) -> (Q, sigma*(Q)) is convexity-preserving",
            envelope: "ordered pairs of exhaustive orders on at most map_points points, all maps",
            run: scott_cp_equivalence_check,
        },
        TheoremCheck {
            id: "sober-join-semilattice",
            statement: "the specialization order of a sober space is a join-semilattice and sup F is the point whose hull is co(F)",
            envelope: "sober spaces of the corpus, all nonempty F",
            run: sober_join_semilattice,
        },
        TheoremCheck {
            id: "sober-join-characterization",
            statement: "an S0 space is sober iff its specialization order is a join-semilattice and every member is Scott convex",
            envelope: "S0 spaces of the corpus",
            run: sober_join_characterization_check,
        },
        TheoremCheck {
            id: "xi-scott-cp",
            statement: "xi: P -> P^F is Scott convexity-preserving and carries suprema to suprema",
            envelope: "order corpus",
            run: xi_scott_cp,
        },
        TheoremCheck {
            id: "completion-scott-structure",
            statement: "P^F is a join-semilattice and its convex structure is sigma*(P^F)",
            envelope: "order corpus",
            run: completion_scott_structure,
        },
        TheoremCheck {
            id: "completion-universal",
            statement: "every Scott convexity-preserving j into a join-semilattice factors uniquely through xi; xi is an order-embedding with dense image",
            envelope: "order corpus; all maps into P^F; identity on join-semilattices; one-point orders",
            run: completion_universal,
        },
        TheoremCheck {
            id: "completion-characterization",
            statement: "(Q, j) has the universal property of the completion iff sigma*(Q) is sober and j extends to a convex-homeomorphism from the sobrification of sigma*(P)",
            envelope: "P exhaustive on at most map_points points; Q exhaustive on at most map_points points or P^F; all maps j",
            run: completion_characterization,
        },
    ]
}

fn specialization_hull(ctx: &Ctx) -> Tally {
    Tally::over(&all_spaces(ctx), space_origin, |c| {
        let x = &c.space;
        ensure("specialization scan", (x.members().len() * x.size() * x.size()) as u64, ctx.budget.max_scan)?;
        let hulls = x.point_hulls();
        let meets = specialization_by_meets(x);
        let n = x.size();
        for p in 0..n {
            for q in 0..n {
                require!(meets[p][q] == hulls[q].get(p), "meet formula differs from co(1_{q})({p})");
            }
        }
        match specialization(x) {
            Ok(o) => {
                require!(is_s0(x), "specialization accepted on a space that is not S0");
                require!(o.matrix() == meets, "specialization differs from the meet formula");
            }
            Err(Error::NotS0 { .. }) => require!(!is_s0(x), "specialization rejected an S0 space"),
            Err(e) => return Err(e),
        }
        Ok(None)
    })
}

fn sub_matrix_witness(ctx_sets: &[&LSubset], o: &LOrderedSet) -> Result<Option<String>> {
    let l = &**o.lattice();
    for (i, a) in ctx_sets.iter().enumerate() {
        for (j, b) in ctx_sets.iter().enumerate() {
            if o.e(i, j) != l.sub(a, b)? {
                return Ok(Some(format!("e({}, {}) is not sub", a.render(l), b.render(l))));
            }
        }
    }
    Ok(None)
}

fn specialization_sub(ctx: &Ctx) -> Tally {
    ctx.warm_sobrifications();
    Tally::over(&indexed_spaces(ctx), indexed_origin, |&(i, _)| {
        let sob = ctx.sobrification(i)?;
        let cp_points: Vec<&LSubset> = sob.cp.family.members().iter().collect();
        let cp_order = specialization(&sob.cp.space)?;
        if let Some(w) = sub_matrix_witness(&cp_points, &cp_order)? {
            return Ok(Some(format!("in Cp: {w}")));
        }
        let xf_order = specialization(&sob.xf_space)?;
        Ok(sub_matrix_witness(&sob.provenance(), &xf_order)?.map(|w| format!("in X^F: {w}")))
    })
}

fn scott_structure_check(ctx: &Ctx) -> Tally {
    Tally::over(&all_orders(ctx), order_origin, |c| {
        let p = &c.order;
        let l = &**p.lattice();
        let sigma = scott_structure(p, ctx.budget)?;
        let report = sigma.verify_axioms(ctx.budget);
        require!(report.passed(), "sigma* is not a convex structure: {}", report.failures().join("; "));
        require!(is_s0(&sigma), "sigma* is not S0");
        require!(specialization(&sigma)? == **p, "specialization of sigma* is not P");
        for x in 0..p.size() {
            require!(sigma.contains(&p.down(x)), "down({x}) is not Scott convex");
        }
        for a in l.degrees() {
            require!(sigma.contains(&LSubset::constant(p.size(), a)), "constant {} is not Scott convex", l.label(a));
        }
        Ok(None)
    })
}

fn order_pairs<'a>(ctx: &'a Ctx, n: usize) -> Vec<(&'a OrderCase, &'a OrderCase)> {
    let small: Vec<&OrderCase> = ctx.corpus.orders.iter().filter(|c| c.exhaustive && c.order.size() <= n).collect();
    let mut pairs = Vec::new();
    for p in &small {
        for q in &small {
            if p.order.lattice().id() == q.order.lattice().id() {
                pairs.push((*p, *q));
            }
        }
    }
    pairs
}

fn scott_cp_equivalence_check(ctx: &Ctx) -> Tally {
    let pairs = order_pairs(ctx, ctx.spec.map_points);
    Tally::over(&pairs, pair_origin, |(p, q)| {
        ensure("map scan", power(q.order.size(), p.order.size()), ctx.budget.max_maps)?;
        for f in CarrierMap::all(p.order.size(), q.order.size()) {
            scott_cp_equivalence(&f, &p.order, &q.order, ctx.budget)?;
        }
        Ok(None)
    })
}

fn sober_join_semilattice(ctx: &Ctx) -> Tally {
    let sober: Vec<_> = all_spaces(ctx).into_iter().filter(|c| is_sober(&c.space).sober).collect();
    Tally::over(&sober, space_origin, |c| {
        let x = &c.space;
        let l = &**x.lattice();
        let omega = specialization(x)?;
        let js = omega.join_semilattice_verdict(ctx.budget)?;
        if let Some(w) = js.witness {
            return Ok(Some(format!("{} has no supremum", w.render(l))));
        }
        let hulls = x.point_hulls();
        for f in nonempty_lsubsets_within(l, x.size(), ctx.budget)? {
            let witness = hull_witnesses(&hulls, &x.hull(&f));
            require!(
                omega.supremum(&f).is_some_and(|s| witness == [s]),
                "sup of {} is {:?}, hull points {:?}",
                f.render(l),
                omega.supremum(&f),
                witness
            );
        }
        Ok(None)
    })
}

fn sober_join_characterization_check(ctx: &Ctx) -> Tally {
    let s0: Vec<_> = all_spaces(ctx).into_iter().filter(|c| is_s0(&c.space)).collect();
    let counts = std::sync::atomic::AtomicU64::new(0);
    let tally = Tally::over(&s0, space_origin, |c| {
        let v = sober_join_characterization(&c.space, ctx.budget)?;
        if v.sober {
            counts.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        Ok(None)
    });
    let sober = counts.into_inner();
    tally.note(format!("{sober} sober of {} S0 spaces", s0.len()))
}

/// Completions of every corpus order, computed once per check.
fn completions(ctx: &Ctx) -> Vec<Result<CompletionResult>> {
    ctx.corpus.orders.par_iter().map(|c| completion(&c.order, ctx.budget)).collect()
}

fn indexed_orders<'a>(ctx: &'a Ctx) -> Vec<(usize, &'a OrderCase)> {
    ctx.corpus.orders.iter().enumerate().collect()
}

fn indexed_order_origin(c: &(usize, &OrderCase)) -> String {
    c.1.origin.clone()
}

fn completion_at(all: &[Result<CompletionResult>], i: usize) -> Result<&CompletionResult> {
    all[i].as_ref().map_err(Clone::clone)
}

fn xi_scott_cp(ctx: &Ctx) -> Tally {
    let all = completions(ctx);
    Tally::over(&indexed_orders(ctx), indexed_order_origin, |&(i, c)| {
        let comp = completion_at(&all, i)?;
        require!(comp.xi_is_scott_cp(&c.order, ctx.budget)?, "xi is not Scott convexity-preserving");
        require!(comp.supremum_transport(&c.order, ctx.budget)?, "xi does not carry suprema to suprema");
        Ok(None)
    })
}

fn completion_scott_structure(ctx: &Ctx) -> Tally {
    let all = completions(ctx);
    Tally::over(&indexed_orders(ctx), indexed_order_origin, |&(i, _)| {
        let comp = completion_at(&all, i)?;
        let js = comp.order.join_semilattice_verdict(ctx.budget)?;
        if let Some(w) = js.witness {
            return Ok(Some(format!("{} has no supremum in P^F", w.render(comp.order.lattice()))));
        }
        require!(comp.structures_agree(ctx.budget)?, "C(P^F) differs from sigma*(P^F)");
        Ok(None)
    })
}

fn completion_universal(ctx: &Ctx) -> Tally {
    let all = completions(ctx);
    Tally::over(&indexed_orders(ctx), indexed_order_origin, |&(i, c)| {
        let p = &*c.order;
        let comp = completion_at(&all, i)?;
        let q = &comp.order;
        require!(comp.xi_is_order_embedding(p), "xi is not an order-embedding");
        require!(comp.xi_image_is_dense(), "image of xi is not dense");
        if p.size() == 1 {
            require!(q.size() == 1, "one-point order completes to {} points", q.size());
        }
        let own = verify_completion(p, q, &comp.xi, ctx.budget)?;
        require!(own.accepted, "(P^F, xi) is rejected: {own:?}");
        require!(
            matches!(own.uniqueness, Some(Uniqueness::Verified { commuting: 1, .. })),
            "uniqueness not verified: {:?}",
            own.uniqueness
        );
        if p.is_join_semilattice(ctx.budget)? {
            let id = verify_completion(p, p, &CarrierMap::identity(p.size()), ctx.budget)?;
            require!(id.accepted, "identity on a join-semilattice is rejected");
        }
        ensure("map scan", power(q.size(), p.size()), ctx.budget.max_maps)?;
        for j in CarrierMap::all(p.size(), q.size()) {
            if !is_scott_cp(&j, p, q, ctx.budget)? {
                require!(
                    !verify_completion(p, q, &j, ctx.budget)?.accepted,
                    "non-Scott-cp j = {:?} accepted",
                    j.table()
                );
            }
        }
        Ok(None)
    })
}

/// Scott convexity-preserving maps `P -> M`.
fn scott_maps(p: &LOrderedSet, m: &LOrderedSet, ctx: &Ctx) -> Result<Vec<CarrierMap>> {
    ensure("map scan", power(m.size(), p.size()), ctx.budget.max_maps)?;
    let mut out = Vec::new();
    for f in CarrierMap::all(p.size(), m.size()) {
        if is_scott_cp(&f, p, m, ctx.budget)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Whether every Scott-cp `g: P -> M` has exactly one Scott-cp `h: Q -> M` with `h ∘ j = g`.
fn universal_against(p: &LOrderedSet, q: &LOrderedSet, j: &CarrierMap, m: &LOrderedSet, ctx: &Ctx) -> Result<bool> {
    let gs = scott_maps(p, m, ctx)?;
    let hs = scott_maps(q, m, ctx)?;
    for g in &gs {
        let mut count = 0;
        for h in &hs {
            if j.then(h)?.table() == g.table() {
                count += 1;
            }
        }
        if count != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn completion_characterization(ctx: &Ctx) -> Tally {
    let all = completions(ctx);
    let n = ctx.spec.map_points;
    let ps: Vec<(usize, &OrderCase)> =
        indexed_orders(ctx).into_iter().filter(|(_, c)| c.exhaustive && c.order.size() <= n).collect();
    let agreements = std::sync::atomic::AtomicU64::new(0);
    let tally = Tally::over(&ps, indexed_order_origin, |&(i, pc)| {
        let p = &*pc.order;
        let canonical = completion_at(&all, i)?;
        let mut targets: Vec<&LOrderedSet> = ctx
            .corpus
            .orders
            .iter()
            .filter(|c| c.exhaustive && c.order.size() <= n && c.order.lattice().id() == p.lattice().id())
            .map(|c| &*c.order)
            .collect();
        targets.push(&canonical.order);
        ensure("L-subset scan", lsubset_count(p.lattice(), canonical.order.size()), ctx.budget.max_scan)?;
        for q in targets {
            ensure("map scan", power(q.size(), p.size()), ctx.budget.max_maps)?;
            for j in CarrierMap::all(p.size(), q.size()) {
                let left = q.is_join_semilattice(ctx.budget)?
                    && is_scott_cp(&j, p, q, ctx.budget)?
                    && universal_against(p, q, &j, q, ctx)?
                    && universal_against(p, q, &j, &canonical.order, ctx)?;
                let right = verify_completion(p, q, &j, ctx.budget)?.accepted;
                require!(
                    left == right,
                    "Q with {} points, j = {:?}: universal property {left}, sobrification route {right}",
                    q.size(),
                    j.table()
                );
                if left {
                    agreements.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                }
            }
        }
        Ok(None)
    });
    let accepted = agreements.into_inner();
    tally.note(format!("{accepted} pairs (Q, j) accepted by both routes"))
}
