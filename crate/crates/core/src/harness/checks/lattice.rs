use std::sync::Arc;

use super::super::suite::{Ctx, Tally, TheoremCheck};
use super::{all_orders, order_origin};
use crate::budget::{ensure, power};
use crate::error::Result;
use crate::fuzzy::{all_lsubsets_within, CarrierMap, LSubset};
use crate::lattice::ResiduatedLattice;
use crate::order::LOrderedSet;

pub(in crate::harness) fn checks() -> Vec<TheoremCheck> {
    vec![
        TheoremCheck {
            id: "residuation-laws",
            statement: "the six residuation laws, with joins and meets over all subsets of L; residuum antitone/monotone",
            envelope: "law lattices, all element tuples",
            run: residuation_laws,
        },
        TheoremCheck {
            id: "l-order-examples",
            statement: "e_L(x, y) = x -> y is an L-order on L; sub is an L-order on L^X",
            envelope: "law lattices; inclusion orders over space lattices up to 2 points",
            run: l_order_examples,
        },
        TheoremCheck {
            id: "zadeh-adjunction",
            statement: "sub(f->(A), B) = sub(A, f<-(B)) for every map f",
            envelope: "space lattices, |X|, |Y| up to the space envelope, all maps, all A and B",
            run: zadeh_adjunction,
        },
        TheoremCheck {
            id: "lower-upper-sets",
            statement: "down(x) is a lower set, up(x) an upper set, constants are both",
            envelope: "order corpus",
            run: lower_upper_sets,
        },
        TheoremCheck {
            id: "suprema",
            statement: "suprema and infima are unique when they exist; sup(1_x) = inf(1_x) = x; in (L, e_L) the supremum of A is the join of A(x) (x) x",
            envelope: "order corpus, all A; law lattices, all A in L^L",
            run: suprema,
        },
    ]
}

fn lattice_origin(l: &Arc<ResiduatedLattice>) -> String {
    l.name().to_string()
}

fn residuation_laws(ctx: &Ctx) -> Tally {
    Tally::over(&ctx.corpus.law_lattices, lattice_origin, |l| {
        let size = l.size();
        ensure("residuation law scan", power(size, 3) + (1u64 << size.min(20)) * size as u64, ctx.budget.max_scan)?;
        let report = l.verify_laws();
        if let Some(law) = report.laws.iter().find(|law| !law.passed()) {
            return Ok(Some(format!("law ({}) {}: {}", law.item, law.statement, law.violation.as_deref().unwrap_or(""))));
        }
        for a in l.degrees() {
            for b in l.degrees() {
                for c in l.degrees() {
                    if l.leq(a, b) {
                        require!(l.leq(l.residuum(b, c), l.residuum(a, c)), "residuum not antitone at {a:?}, {b:?}, {c:?}");
                        require!(l.leq(l.residuum(c, a), l.residuum(c, b)), "residuum not monotone at {a:?}, {b:?}, {c:?}");
                    }
                    let adj = l.leq(l.tensor(a, b), c) == l.leq(a, l.residuum(b, c));
                    require!(adj, "adjunction fails at {a:?}, {b:?}, {c:?}");
                }
            }
        }
        Ok(None)
    })
}

fn l_order_examples(ctx: &Ctx) -> Tally {
    let el = Tally::over(&ctx.corpus.law_lattices, lattice_origin, |l| {
        ensure("order matrix", power(l.size(), 2), ctx.budget.max_scan)?;
        let o = LOrderedSet::of_lattice(l.clone());
        match LOrderedSet::new(l.clone(), o.carrier().clone(), o.matrix()) {
            Ok(_) => Ok(None),
            Err(e) => Ok(Some(format!("e_L rejected: {e}"))),
        }
    });
    let cases: Vec<(Arc<ResiduatedLattice>, usize)> =
        ctx.corpus.space_lattices.iter().flat_map(|l| (1..=2).map(move |n| (l.clone(), n))).collect();
    let sub = Tally::over(&cases, |(l, n)| format!("{}/{n}pt", l.name()), |(l, n)| {
        let o = LOrderedSet::inclusion_order(l.clone(), *n, ctx.budget)?;
        let subsets = all_lsubsets_within(l, *n, ctx.budget)?;
        for (i, a) in subsets.iter().enumerate() {
            for (j, b) in subsets.iter().enumerate() {
                require!(o.e(i, j) == l.sub(a, b)?, "sub mismatch at {} {}", a.render(l), b.render(l));
            }
        }
        match LOrderedSet::new(l.clone(), o.carrier().clone(), o.matrix()) {
            Ok(_) => Ok(None),
            Err(e) => Ok(Some(format!("sub rejected: {e}"))),
        }
    });
    el.merge(sub)
}

fn zadeh_adjunction(ctx: &Ctx) -> Tally {
    let k = ctx.spec.space_points;
    let cases: Vec<(Arc<ResiduatedLattice>, usize, usize)> = ctx
        .corpus
        .space_lattices
        .iter()
        .flat_map(|l| (1..=k).flat_map(move |nx| (1..=k).map(move |ny| (l.clone(), nx, ny))))
        .collect();
    Tally::over(&cases, |(l, nx, ny)| format!("{}/{nx}pt->{ny}pt", l.name()), |(l, nx, ny)| {
        let xs = all_lsubsets_within(l, *nx, ctx.budget)?;
        let ys = all_lsubsets_within(l, *ny, ctx.budget)?;
        let maps = power(*ny, *nx);
        ensure("adjunction scan", maps.saturating_mul((xs.len() * ys.len()) as u64), ctx.budget.max_scan)?;
        for f in CarrierMap::all(*nx, *ny) {
            let images: Vec<LSubset> = xs.iter().map(|a| l.zadeh_forward(&f, a)).collect::<Result<_>>()?;
            let preimages: Vec<LSubset> = ys.iter().map(|b| l.zadeh_backward(&f, b)).collect::<Result<_>>()?;
            for (a, fa) in xs.iter().zip(&images) {
                for (b, fb) in ys.iter().zip(&preimages) {
                    require!(
                        l.sub(fa, b)? == l.sub(a, fb)?,
                        "f = {:?}, A = {}, B = {}",
                        f.table(),
                        a.render(l),
                        b.render(l)
                    );
                }
            }
        }
        Ok(None)
    })
}

fn lower_upper_sets(ctx: &Ctx) -> Tally {
    Tally::over(&all_orders(ctx), order_origin, |c| {
        let p = &c.order;
        let l = &**p.lattice();
        let n = p.size();
        ensure("order scan", power(n, 2) * l.size() as u64, ctx.budget.max_scan)?;
        for x in 0..n {
            require!(p.is_lower_set(&p.down(x)), "down({x}) is not a lower set");
            require!(p.is_upper_set(&p.up(x)), "up({x}) is not an upper set");
            require!(p.down(x).get(x) == l.top(), "down({x})({x}) is not top");
        }
        for a in l.degrees() {
            let k = LSubset::constant(n, a);
            require!(p.is_lower_set(&k) && p.is_upper_set(&k), "constant {} is not lower and upper", l.label(a));
        }
        Ok(None)
    })
}

fn suprema(ctx: &Ctx) -> Tally {
    let orders = Tally::over(&all_orders(ctx), order_origin, |c| {
        let p = &c.order;
        let l = &**p.lattice();
        let n = p.size();
        for x in 0..n {
            let one = LSubset::point(l, n, x);
            require!(p.supremum(&one) == Some(x), "sup(1_{x}) is not {x}");
            require!(p.infimum(&one) == Some(x), "inf(1_{x}) is not {x}");
        }
        for a in all_lsubsets_within(l, n, ctx.budget)? {
            let sup_cands: Vec<usize> =
                (0..n).filter(|&x| (0..n).all(|y| p.e(x, y) == l.incl(&a, &p.down(y)))).collect();
            let inf_cands: Vec<usize> =
                (0..n).filter(|&x| (0..n).all(|y| p.e(y, x) == l.incl(&a, &p.up(y)))).collect();
            require!(sup_cands.len() <= 1, "two suprema {sup_cands:?} of {}", a.render(l));
            require!(inf_cands.len() <= 1, "two infima {inf_cands:?} of {}", a.render(l));
            require!(p.supremum(&a) == sup_cands.first().copied(), "supremum scan disagrees on {}", a.render(l));
            require!(p.infimum(&a) == inf_cands.first().copied(), "infimum scan disagrees on {}", a.render(l));
        }
        Ok(None)
    });
    let el = Tally::over(&ctx.corpus.law_lattices, lattice_origin, |l| {
        let o = LOrderedSet::of_lattice(l.clone());
        for a in all_lsubsets_within(l, l.size(), ctx.budget)? {
            let closed = l.join_all(l.degrees().map(|x| l.tensor(a.get(x.index()), x)));
            require!(o.supremum(&a).map(|s| s == closed.index()).unwrap_or(false), "sup of {} is not {}", a.render(l), l.label(closed));
        }
        require!(o.is_join_semilattice(ctx.budget)?, "(L, e_L) is not a join-semilattice");
        Ok(None)
    });
    orders.merge(el)
}
