//! Finite complete residuated lattices given by tables.
//!
//! A lattice is built from its order relation and a tensor table. The
//! residuum is never supplied by the caller: it is derived as
//! `a -> b = join { c | a (x) c <= b }`, which satisfies the adjunction
//! `a (x) b <= c  <=>  a <= b -> c` once the tensor is validated.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mutation::{self, Mutation};

static NEXT_LATTICE_ID: AtomicU64 = AtomicU64::new(1);

/// A truth degree: the index of one element of a fixed lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Degree(u8);

impl Degree {
    pub fn new(index: usize) -> Self {
        assert!(index < 256, "degree index {index} out of range");
        Degree(index as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The two t-norm families used for chain fixtures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Godel,
    Lukasiewicz,
}

impl ChainKind {
    pub fn name(self) -> &'static str {
        match self {
            ChainKind::Godel => "godel",
            ChainKind::Lukasiewicz => "lukasiewicz",
        }
    }
}

/// A validated finite complete residuated lattice.
#[derive(Clone)]
pub struct ResiduatedLattice {
    id: u64,
    name: String,
    labels: Vec<String>,
    size: usize,
    leq: Vec<bool>,
    join: Vec<Degree>,
    meet: Vec<Degree>,
    tensor: Vec<Degree>,
    residuum: Vec<Degree>,
    bottom: Degree,
    top: Degree,
}

impl fmt::Debug for ResiduatedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ResiduatedLattice")
            .field("name", &self.name)
            .field("size", &self.size)
            .field("labels", &self.labels)
            .finish()
    }
}

impl ResiduatedLattice {
    /// Validates the order and tensor tables and derives joins, meets and the residuum.
    ///
    /// `leq[i][j]` is the full order relation. Tensor entries are element indices.
    pub fn build(name: &str, leq: &[Vec<bool>], tensor: &[Vec<usize>]) -> Result<Self> {
        let size = leq.len();
        if size == 0 {
            return Err(Error::InvalidSize { size, reason: "a lattice needs at least one element".into() });
        }
        if size > 255 {
            return Err(Error::InvalidSize { size, reason: "at most 255 elements are supported".into() });
        }
        if leq.iter().any(|row| row.len() != size) {
            return Err(Error::Shape("order relation is not square".into()));
        }
        if tensor.len() != size || tensor.iter().any(|row| row.len() != size) {
            return Err(Error::Shape(format!("tensor table must be {size}x{size}")));
        }
        if let Some((i, j)) = (0..size)
            .flat_map(|i| (0..size).map(move |j| (i, j)))
            .find(|&(i, j)| tensor[i][j] >= size)
        {
            return Err(Error::Shape(format!("tensor entry ({i}, {j}) = {} is not an element", tensor[i][j])));
        }

        let le = |a: usize, b: usize| leq[a][b];
        for a in 0..size {
            if !le(a, a) {
                return Err(Error::NotAPartialOrder { law: "reflexivity", witness: vec![a] });
            }
        }
        for a in 0..size {
            for b in 0..size {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::NotAPartialOrder { law: "antisymmetry", witness: vec![a, b] });
                }
                for c in 0..size {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(Error::NotAPartialOrder { law: "transitivity", witness: vec![a, b, c] });
                    }
                }
            }
        }

        let mut join = vec![Degree(0); size * size];
        let mut meet = vec![Degree(0); size * size];
        for a in 0..size {
            for b in 0..size {
                let j = least(size, |c| le(a, c) && le(b, c), &le)
                    .ok_or(Error::NotALattice { missing: "join", a, b })?;
                let m = greatest(size, |c| le(c, a) && le(c, b), &le)
                    .ok_or(Error::NotALattice { missing: "meet", a, b })?;
                join[a * size + b] = Degree::new(j);
                meet[a * size + b] = Degree::new(m);
            }
        }
        let bottom = (0..size).find(|&c| (0..size).all(|x| le(c, x))).expect("finite lattice has a bottom");
        let top = (0..size).find(|&c| (0..size).all(|x| le(x, c))).expect("finite lattice has a top");

        let t = |a: usize, b: usize| tensor[a][b];
        for a in 0..size {
            for b in 0..size {
                if t(a, b) != t(b, a) {
                    return Err(Error::NotAMonoid { law: "commutativity", witness: [a, b, 0] });
                }
            }
            if t(top, a) != a {
                return Err(Error::NotAMonoid { law: "unit", witness: [top, a, t(top, a)] });
            }
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if le(b, c) && !le(t(a, b), t(a, c)) {
                        return Err(Error::NotAMonoid { law: "monotonicity", witness: [a, b, c] });
                    }
                    if t(t(a, b), c) != t(a, t(b, c)) {
                        return Err(Error::NotAMonoid { law: "associativity", witness: [a, b, c] });
                    }
                }
            }
        }
        for a in 0..size {
            if t(a, bottom) != bottom {
                return Err(Error::NotDistributive { witness: [a, bottom, bottom] });
            }
            for b in 0..size {
                for c in 0..size {
                    let lhs = t(a, join[b * size + c].index());
                    let rhs = join[t(a, b) * size + t(a, c)].index();
                    if lhs != rhs {
                        return Err(Error::NotDistributive { witness: [a, b, c] });
                    }
                }
            }
        }

        let mut residuum = vec![Degree(0); size * size];
        for a in 0..size {
            for b in 0..size {
                let r = (0..size)
                    .filter(|&c| le(t(a, c), b))
                    .fold(bottom, |acc, c| join[acc * size + c].index());
                residuum[a * size + b] = Degree::new(r);
            }
        }

        Ok(Self {
            id: NEXT_LATTICE_ID.fetch_add(1, Ordering::Relaxed),
            name: name.to_string(),
            labels: (0..size).map(|i| i.to_string()).collect(),
            size,
            leq: leq.iter().flatten().copied().collect(),
            join,
            meet,
            tensor: tensor.iter().flatten().map(|&i| Degree::new(i)).collect(),
            residuum,
            bottom: Degree::new(bottom),
            top: Degree::new(top),
        })
    }

    /// The two-element Boolean algebra.
    pub fn boolean() -> Self {
        Self::chain(2, ChainKind::Godel).expect("two-element chain").renamed("boolean")
    }

    /// The `n`-element chain `0 = d0 < ... < d(n-1) = 1` with the Gödel (min)
    /// or Łukasiewicz (truncated addition) tensor on equally spaced values.
    pub fn chain(n: usize, kind: ChainKind) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize { size: n, reason: "chains need at least two elements".into() });
        }
        let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        let tensor: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match kind {
                        ChainKind::Godel => i.min(j),
                        ChainKind::Lukasiewicz => (i + j).saturating_sub(n - 1),
                    })
                    .collect()
            })
            .collect();
        let lattice = Self::build(&format!("{}{}", kind.name(), n), &leq, &tensor)?;
        Ok(lattice.with_labels(chain_labels(n)).expect("label count matches"))
    }

    /// Componentwise product; element `(i, j)` has index `i * |right| + j`.
    pub fn product(left: &Self, right: &Self) -> Self {
        let (n1, n2) = (left.size, right.size);
        let n = n1 * n2;
        let split = |k: usize| (k / n2, k % n2);
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|p| {
                let (a1, a2) = split(p);
                (0..n)
                    .map(|q| {
                        let (b1, b2) = split(q);
                        left.leq_index(a1, b1) && right.leq_index(a2, b2)
                    })
                    .collect()
            })
            .collect();
        let tensor: Vec<Vec<usize>> = (0..n)
            .map(|p| {
                let (a1, a2) = split(p);
                (0..n)
                    .map(|q| {
                        let (b1, b2) = split(q);
                        left.tensor[a1 * n1 + b1].index() * n2 + right.tensor[a2 * n2 + b2].index()
                    })
                    .collect()
            })
            .collect();
        let labels = (0..n)
            .map(|p| {
                let (a1, a2) = split(p);
                format!("({},{})", left.labels[a1], right.labels[a2])
            })
            .collect();
        Self::build(&format!("product({},{})", left.name, right.name), &leq, &tensor)
            .expect("products of residuated lattices are residuated lattices")
            .with_labels(labels)
            .expect("label count matches")
    }

    /// Looks up a generated lattice by name: `boolean`, `godel<n>`,
    /// `lukasiewicz<n>`, `diamond`, or `product(<a>,<b>)`.
    pub fn builtin(name: &str) -> Result<Self> {
        let name = name.trim();
        let unknown = || Error::Shape(format!("unknown lattice `{name}`"));
        if name == "boolean" {
            return Ok(Self::boolean());
        }
        if name == "diamond" {
            let b = Self::boolean();
            return Ok(Self::product(&b, &b).renamed("diamond"));
        }
        if let Some(inner) = name.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        return Ok(Self::product(&Self::builtin(&inner[..i])?, &Self::builtin(&inner[i + 1..])?));
                    }
                    _ => {}
                }
            }
            return Err(unknown());
        }
        for kind in [ChainKind::Godel, ChainKind::Lukasiewicz] {
            if let Some(n) = name.strip_prefix(kind.name()) {
                let n: usize = n.parse().map_err(|_| unknown())?;
                return Self::chain(n, kind);
            }
        }
        Err(unknown())
    }

    /// Replaces the element labels. Labels must be distinct.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::Shape(format!("expected {} labels, got {}", self.size, labels.len())));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Shape(format!("duplicate label {l}")));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Identity tag; two handles denote the same lattice iff their ids agree.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, d: Degree) -> &str {
        &self.labels[d.index()]
    }

    /// Resolves a degree token: a declared label first, then a plain index.
    pub fn parse_degree(&self, token: &str) -> Option<Degree> {
        if let Some(i) = self.labels.iter().position(|l| l == token) {
            return Some(Degree::new(i));
        }
        token.parse::<usize>().ok().filter(|&i| i < self.size).map(Degree::new)
    }

    pub fn degrees(&self) -> impl Iterator<Item = Degree> + Clone {
        (0..self.size).map(Degree::new)
    }

    #[inline]
    pub fn bottom(&self) -> Degree {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Degree {
        self.top
    }

    #[inline]
    fn leq_index(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    #[inline]
    pub fn leq(&self, a: Degree, b: Degree) -> bool {
        self.leq_index(a.index(), b.index())
    }

    #[inline]
    pub fn join(&self, a: Degree, b: Degree) -> Degree {
        self.join[a.index() * self.size + b.index()]
    }

    #[inline]
    pub fn meet(&self, a: Degree, b: Degree) -> Degree {
        self.meet[a.index() * self.size + b.index()]
    }

    #[inline]
    pub fn tensor(&self, a: Degree, b: Degree) -> Degree {
        self.tensor[a.index() * self.size + b.index()]
    }

    /// The largest `c` with `a (x) c <= b`.
    #[inline]
    pub fn residuum(&self, a: Degree, b: Degree) -> Degree {
        if mutation::is_active(Mutation::Residuum) {
            return if self.leq(a, b) { self.top } else { self.bottom };
        }
        self.residuum[a.index() * self.size + b.index()]
    }

    pub fn join_all(&self, degrees: impl IntoIterator<Item = Degree>) -> Degree {
        degrees.into_iter().fold(self.bottom, |acc, d| self.join(acc, d))
    }

    pub fn meet_all(&self, degrees: impl IntoIterator<Item = Degree>) -> Degree {
        degrees.into_iter().fold(self.top, |acc, d| self.meet(acc, d))
    }

    pub fn same_lattice(&self, other: &Self) -> Result<()> {
        if self.id == other.id {
            Ok(())
        } else {
            Err(Error::LatticeMismatch { left: self.name.clone(), right: other.name.clone() })
        }
    }

    /// Some pair of incomparable elements, if the order is not total.
    pub fn incomparable_pair(&self) -> Option<(Degree, Degree)> {
        self.degrees()
            .flat_map(|a| self.degrees().map(move |b| (a, b)))
            .find(|&(a, b)| !self.leq(a, b) && !self.leq(b, a))
    }

    pub fn is_chain(&self) -> bool {
        self.incomparable_pair().is_none()
    }

    /// Whether binary meets distribute over binary joins (finite frames).
    pub fn is_frame(&self) -> bool {
        self.degrees().all(|a| {
            self.degrees().all(|b| {
                self.degrees()
                    .all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c)))
            })
        })
    }

    /// Checks the six residuation laws exhaustively, quantifying over all
    /// subsets of `L` for the infinitary joins and meets.
    pub fn verify_laws(&self) -> LawReport {
        let all = || self.degrees();
        let triples =
            || all().flat_map(move |a| all().flat_map(move |b| all().map(move |c| (a, b, c))));
        let subsets = || (0..1u64 << self.size.min(20)).map(|mask| subset_of(self, mask));
        let show = |ds: &[Degree]| ds.iter().map(|&d| self.label(d).to_string()).collect::<Vec<_>>().join(",");

        let mut laws = Vec::with_capacity(6);
        let mut record = |item: u8, statement: &'static str, cases: u64, violation: Option<String>| {
            laws.push(LawOutcome { item, statement: statement.to_string(), cases, violation });
        };

        let pairs: Vec<(Degree, Degree)> = all().flat_map(|a| all().map(move |b| (a, b))).collect();

        let v = pairs
            .iter()
            .find(|&&(a, b)| (self.residuum(a, b) == self.top) != self.leq(a, b))
            .map(|&(a, b)| format!("a={}, b={}", self.label(a), self.label(b)));
        record(1, "a->b = 1 iff a <= b", pairs.len() as u64, v);

        let v = all()
            .find(|&a| self.residuum(self.top, a) != a)
            .map(|a| format!("a={}", self.label(a)));
        record(2, "1->a = a", self.size as u64, v);

        let v = pairs
            .iter()
            .find(|&&(a, b)| !self.leq(self.tensor(a, self.residuum(a, b)), b))
            .map(|&(a, b)| format!("a={}, b={}", self.label(a), self.label(b)));
        record(3, "a(x)(a->b) <= b", pairs.len() as u64, v);

        let v = triples()
            .find(|&(a, b, c)| self.residuum(a, self.residuum(b, c)) != self.residuum(self.tensor(a, b), c))
            .map(|(a, b, c)| format!("a={}, b={}, c={}", self.label(a), self.label(b), self.label(c)));
        record(4, "a->(b->c) = (a(x)b)->c", (self.size as u64).pow(3), v);

        let subset_count = 1u64 << self.size.min(20);
        let v = subsets()
            .flat_map(|family| all().map(move |b| (family.clone(), b)))
            .find(|(family, b)| {
                let lhs = self.residuum(self.join_all(family.iter().copied()), *b);
                let rhs = self.meet_all(family.iter().map(|&a| self.residuum(a, *b)));
                lhs != rhs
            })
            .map(|(family, b)| format!("a_i={{{}}}, b={}", show(&family), self.label(b)));
        record(5, "(join a_i)->b = meet (a_i->b)", subset_count * self.size as u64, v);

        let v = subsets()
            .flat_map(|family| all().map(move |a| (family.clone(), a)))
            .find(|(family, a)| {
                let lhs = self.residuum(*a, self.meet_all(family.iter().copied()));
                let rhs = self.meet_all(family.iter().map(|&b| self.residuum(*a, b)));
                lhs != rhs
            })
            .map(|(family, a)| format!("a={}, b_j={{{}}}", self.label(a), show(&family)));
        record(6, "a->(meet b_j) = meet (a->b_j)", subset_count * self.size as u64, v);

        LawReport { lattice: self.name.clone(), size: self.size, laws }
    }
}

fn subset_of(l: &ResiduatedLattice, mask: u64) -> Vec<Degree> {
    l.degrees().filter(|d| mask >> d.index() & 1 == 1).collect()
}

fn least(size: usize, pred: impl Fn(usize) -> bool, le: &impl Fn(usize, usize) -> bool) -> Option<usize> {
    let candidates: Vec<usize> = (0..size).filter(|&c| pred(c)).collect();
    candidates.iter().copied().find(|&c| candidates.iter().all(|&d| le(c, d)))
}

fn greatest(size: usize, pred: impl Fn(usize) -> bool, le: &impl Fn(usize, usize) -> bool) -> Option<usize> {
    let candidates: Vec<usize> = (0..size).filter(|&c| pred(c)).collect();
    candidates.iter().copied().find(|&c| candidates.iter().all(|&d| le(d, c)))
}

fn chain_labels(n: usize) -> Vec<String> {
    let den = n - 1;
    (0..n)
        .map(|i| {
            if i == 0 {
                "0".to_string()
            } else if i == den {
                "1".to_string()
            } else {
                let g = gcd(i, den);
                format!("{}/{}", i / g, den / g)
            }
        })
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Outcome of one residuation law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawOutcome {
    pub item: u8,
    pub statement: String,
    pub cases: u64,
    pub violation: Option<String>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub lattice: String,
    pub size: usize,
    pub laws: Vec<LawOutcome>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawOutcome::passed)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lattice {} ({} elements)", self.lattice, self.size)?;
        for law in &self.laws {
            match &law.violation {
                None => writeln!(f, "  ({}) {:<34} pass  [{} cases]", law.item, law.statement, law.cases)?,
                Some(w) => writeln!(f, "  ({}) {:<34} FAIL  witness: {}", law.item, law.statement, w)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_leq(n: usize) -> Vec<Vec<bool>> {
        (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect()
    }

    /// Residuum by brute force from the tensor table alone.
    fn residuum_oracle(l: &ResiduatedLattice, a: Degree, b: Degree) -> Degree {
        let below: Vec<Degree> = l.degrees().filter(|&c| l.leq(l.tensor(a, c), b)).collect();
        *below.iter().find(|&&c| below.iter().all(|&d| l.leq(d, c))).unwrap()
    }

    #[test]
    fn two_element_chains_coincide_with_boolean() {
        let g = ResiduatedLattice::chain(2, ChainKind::Godel).unwrap();
        let l = ResiduatedLattice::chain(2, ChainKind::Lukasiewicz).unwrap();
        let b = ResiduatedLattice::boolean();
        for x in b.degrees() {
            for y in b.degrees() {
                assert_eq!(g.tensor(x, y), l.tensor(x, y));
                assert_eq!(g.residuum(x, y), b.residuum(x, y));
                let classical = if x.index() == 1 && y.index() == 0 { 0 } else { 1 };
                assert_eq!(b.residuum(x, y).index(), classical);
            }
        }
        assert_eq!(b.residuum(b.top(), b.bottom()), b.bottom());
    }

    #[test]
    fn lukasiewicz_three_chain_values() {
        let l = ResiduatedLattice::chain(3, ChainKind::Lukasiewicz).unwrap();
        let (zero, half, one) = (Degree::new(0), Degree::new(1), Degree::new(2));
        assert_eq!(l.tensor(half, half), zero);
        assert_eq!(l.residuum(half, zero), half);
        assert_eq!(l.residuum(half, half), one);
        assert_eq!(residuum_oracle(&l, half, zero), half);
        // a (x) (a -> b) <= b at a = 1/2, b = 0
        assert_eq!(l.tensor(half, l.residuum(half, zero)), zero);
        assert_eq!(l.labels(), ["0", "1/2", "1"]);
    }

    #[test]
    fn godel_three_chain_values() {
        let g = ResiduatedLattice::chain(3, ChainKind::Godel).unwrap();
        let half = Degree::new(1);
        assert_eq!(g.tensor(half, half), half);
        assert_eq!(g.residuum(g.top(), half), half);
        for a in g.degrees() {
            for b in g.degrees() {
                let godel = if a <= b { g.top() } else { b };
                assert_eq!(g.residuum(a, b), godel);
            }
        }
    }

    #[test]
    fn build_from_tables_matches_chain() {
        let tensor = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 2]];
        let l = ResiduatedLattice::build("luk3", &chain_leq(3), &tensor).unwrap();
        assert_eq!(l.residuum(Degree::new(1), Degree::new(0)), Degree::new(1));
        assert_eq!(l.residuum(Degree::new(1), Degree::new(1)), Degree::new(2));
    }

    #[test]
    fn non_monotone_tensor_is_rejected_as_monoid_failure() {
        // 1/2 (x) 1/2 = 1 while 1 (x) 1/2 = 1/2
        let tensor = vec![vec![0, 0, 0], vec![0, 2, 1], vec![0, 1, 2]];
        let err = ResiduatedLattice::build("bad", &chain_leq(3), &tensor).unwrap_err();
        assert!(matches!(err, Error::NotAMonoid { .. }), "{err:?}");
    }

    #[test]
    fn missing_top_is_not_a_lattice() {
        // two incomparable maximal elements over a bottom
        let leq = vec![vec![true, true, true], vec![false, true, false], vec![false, false, true]];
        let tensor = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]];
        let err = ResiduatedLattice::build("v", &leq, &tensor).unwrap_err();
        assert!(matches!(err, Error::NotALattice { missing: "join", .. }), "{err:?}");
    }

    #[test]
    fn nondistributive_tensor_is_rejected() {
        // M3 with tensor = meet: monotone monoid, but meet does not distribute over joins.
        let n = 5;
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| i == j || i == 0 || j == 4).collect())
            .collect();
        let meet = |i: usize, j: usize| {
            if i == j || j == 4 {
                i
            } else if i == 4 {
                j
            } else {
                0
            }
        };
        let tensor: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| meet(i, j)).collect()).collect();
        let err = ResiduatedLattice::build("m3", &leq, &tensor).unwrap_err();
        assert!(matches!(err, Error::NotDistributive { .. }), "{err:?}");
    }

    #[test]
    fn chain_requires_two_elements() {
        assert!(matches!(ResiduatedLattice::chain(1, ChainKind::Godel), Err(Error::InvalidSize { .. })));
    }

    #[test]
    fn products_are_not_chains() {
        let b = ResiduatedLattice::boolean();
        let d = ResiduatedLattice::product(&b, &b);
        assert_eq!(d.size(), 4);
        assert!(!d.is_chain());
        let (x, y) = d.incomparable_pair().unwrap();
        let mut pair = [d.label(x), d.label(y)];
        pair.sort();
        assert_eq!(pair, ["(0,1)", "(1,0)"]);
        assert!(d.is_frame());

        let g3 = ResiduatedLattice::chain(3, ChainKind::Godel).unwrap();
        let p = ResiduatedLattice::product(&b, &g3);
        assert_eq!(p.size(), 6);
        assert_eq!(p.label(p.top()), "(1,1)");
        assert!(p.verify_laws().passed());
    }

    #[test]
    fn laws_hold_on_fixtures() {
        let b = ResiduatedLattice::boolean();
        assert!(b.verify_laws().passed());
        let g4 = ResiduatedLattice::chain(4, ChainKind::Godel).unwrap();
        let report = g4.verify_laws();
        assert!(report.passed());
        assert_eq!(report.laws[3].cases, 64);
    }

    #[test]
    fn residuum_monotonicity_and_order_characterisation() {
        for l in [
            ResiduatedLattice::chain(5, ChainKind::Lukasiewicz).unwrap(),
            ResiduatedLattice::product(&ResiduatedLattice::boolean(), &ResiduatedLattice::chain(3, ChainKind::Godel).unwrap()),
        ] {
            for a in l.degrees() {
                for b in l.degrees() {
                    assert_eq!(l.residuum(a, b), residuum_oracle(&l, a, b));
                    assert_eq!(l.residuum(a, b) == l.top(), l.leq(a, b));
                    for c in l.degrees() {
                        if l.leq(a, c) {
                            assert!(l.leq(l.residuum(c, b), l.residuum(a, b)));
                            assert!(l.leq(l.residuum(b, a), l.residuum(b, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn builtin_names() {
        assert_eq!(ResiduatedLattice::builtin("godel4").unwrap().size(), 4);
        assert_eq!(ResiduatedLattice::builtin("diamond").unwrap().size(), 4);
        let p = ResiduatedLattice::builtin("product(boolean,godel3)").unwrap();
        assert_eq!((p.size(), p.name()), (6, "product(boolean,godel3)"));
        assert!(ResiduatedLattice::builtin("product(boolean,product(boolean,boolean))").is_ok());
        assert!(ResiduatedLattice::builtin("godel1").is_err());
        assert!(ResiduatedLattice::builtin("heyting").is_err());
    }

    #[test]
    fn parse_degree_prefers_labels() {
        let g = ResiduatedLattice::chain(3, ChainKind::Godel).unwrap();
        assert_eq!(g.parse_degree("1"), Some(g.top()));
        assert_eq!(g.parse_degree("1/2"), Some(Degree::new(1)));
        assert_eq!(g.parse_degree("2"), Some(Degree::new(2)));
        assert_eq!(g.parse_degree("7"), None);
    }
}
