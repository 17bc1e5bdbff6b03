//! Check bodies, grouped by the module whose statements they cover.

use super::corpus::{OrderCase, SpaceCase};
use super::suite::Ctx;

pub(super) mod convex;
pub(super) mod lattice;
pub(super) mod scott;
pub(super) mod sober;

fn space_origin(c: &&SpaceCase) -> String {
    c.origin.clone()
}

fn order_origin(c: &&OrderCase) -> String {
    c.origin.clone()
}

fn all_spaces<'a>(ctx: &'a Ctx) -> Vec<&'a SpaceCase> {
    ctx.corpus.spaces.iter().collect()
}

fn all_orders<'a>(ctx: &'a Ctx) -> Vec<&'a OrderCase> {
    ctx.corpus.orders.iter().collect()
}

/// Ordered pairs of exhaustively generated spaces over one lattice, both on at most `n` points.
fn space_pairs<'a>(ctx: &'a Ctx, n: usize) -> Vec<(&'a SpaceCase, &'a SpaceCase)> {
    let small: Vec<&SpaceCase> = ctx.corpus.small_spaces(n).collect();
    let mut pairs = Vec::new();
    for x in &small {
        for y in &small {
            if x.space.lattice().id() == y.space.lattice().id() {
                pairs.push((*x, *y));
            }
        }
    }
    pairs
}

fn pair_origin<A: HasOrigin, B: HasOrigin>(p: &(&A, &B)) -> String {
    format!("{} -> {}", p.0.origin(), p.1.origin())
}

trait HasOrigin {
    fn origin(&self) -> &str;
}

impl HasOrigin for SpaceCase {
    fn origin(&self) -> &str {
        &self.origin
    }
}

impl HasOrigin for OrderCase {
    fn origin(&self) -> &str {
        &self.origin
    }
}

/// Corpus spaces with their corpus index, for the sobrification cache.
fn indexed_spaces<'a>(ctx: &'a Ctx) -> Vec<(usize, &'a SpaceCase)> {
    ctx.corpus.spaces.iter().enumerate().collect()
}

fn indexed_origin(c: &(usize, &SpaceCase)) -> String {
    c.1.origin.clone()
}
