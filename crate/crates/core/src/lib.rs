//! Stratified L-convex spaces over finite residuated lattices: sobriety,
//! sobrification, specialization orders, Scott structures and completions.

pub mod budget;
pub mod convex;
pub mod error;
pub mod fuzzy;
pub mod harness;
pub mod io;
pub mod lattice;
pub mod mutation;
pub mod order;
pub mod scott;
pub mod sober;

pub use budget::Budget;
pub use convex::{LConvexSpace, SpaceMap};
pub use error::{Error, Result};
pub use fuzzy::{Carrier, CarrierMap, LSubset};
pub use lattice::{ChainKind, Degree, ResiduatedLattice};
pub use order::LOrderedSet;
