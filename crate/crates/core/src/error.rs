use thiserror::Error;

/// Errors raised while building or querying lattices, L-subsets, orders and spaces.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid size {size}: {reason}")]
    InvalidSize { size: usize, reason: String },

    #[error("malformed table: {0}")]
    Shape(String),

    #[error("relation is not a partial order ({law} fails at {witness:?})")]
    NotAPartialOrder { law: &'static str, witness: Vec<usize> },

    #[error("not a lattice: {missing} of {a} and {b} does not exist")]
    NotALattice { missing: &'static str, a: usize, b: usize },

    #[error("tensor is not an ordered commutative monoid ({law} fails at {witness:?})")]
    NotAMonoid { law: &'static str, witness: [usize; 3] },

    #[error("tensor does not distribute over joins at {witness:?}")]
    NotDistributive { witness: [usize; 3] },

    #[error("carrier mismatch: expected {expected} points, found {found}")]
    CarrierMismatch { expected: usize, found: usize },

    #[error("values from different lattices ({left} vs {right}) mixed in one operation")]
    LatticeMismatch { left: String, right: String },

    #[error("E1 (reflexivity) fails at x={x}")]
    E1Violation { x: usize },

    #[error("E2 (transitivity) fails at ({x}, {y}, {z})")]
    E2Violation { x: usize, y: usize, z: usize },

    #[error("E3 (antisymmetry) fails at ({x}, {y})")]
    E3Violation { x: usize, y: usize },

    #[error("{what} needs {needed} steps, over the cap of {cap}")]
    BudgetExceeded { what: String, needed: u64, cap: u64 },

    #[error("L-subset is not a member of the convex structure")]
    NotConvex,

    #[error("family violates the L-convex structure axioms: {0}")]
    AxiomViolation(String),

    #[error("space is not S0: points {x} and {y} have the same hull")]
    NotS0 { x: usize, y: usize },

    #[error("target space is not sober")]
    NotSober,

    #[error("map is not convexity-preserving")]
    NotConvexityPreserving,

    #[error("equivalence violated ({0}); this is a library bug")]
    EquivalenceViolation(String),

    #[error("map is not well formed: {0}")]
    InvalidMap(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
