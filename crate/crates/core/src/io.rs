//! Line-oriented text formats for lattices, L-ordered sets and L-convex spaces.
//!
//! Blank lines and `#` comments are ignored everywhere.
//!
//! Lattice files:
//!
//! ```text
//! lattice godel3 3
//! labels 0 1/2 1
//! leq 0 1
//! leq 1 2
//! tensor
//! 0 0 0
//! 0 1 1
//! 0 1 2
//! ```
//!
//! `leq` lines may list covering pairs or the full relation; the reflexive
//! transitive closure is taken. `labels` is optional.
//!
//! Order and space files name their lattice after `over`: a built-in name
//! (`boolean`, `godel3`, `product(boolean,godel3)`, ...) or a path to a
//! lattice file, relative to the file that mentions it.
//!
//! ```text
//! order chain over boolean
//! carrier a b
//! e
//! 1 1
//! 0 1
//! ```
//!
//! ```text
//! space sierpinski over boolean
//! carrier a b
//! subset A: a=1
//! ```
//!
//! Subset literals list `point=degree` pairs; unlisted points get bottom.
//! Degrees are lattice labels or indices.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::budget::Budget;
use crate::convex::LConvexSpace;
use crate::error::{Error, Result};
use crate::fuzzy::{Carrier, LSubset};
use crate::lattice::{Degree, ResiduatedLattice};
use crate::order::LOrderedSet;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = body.split_whitespace().collect();
            (!tokens.is_empty()).then_some((i + 1, tokens))
        })
        .collect()
}

fn parse_index(line: usize, token: &str, size: usize) -> Result<usize> {
    match token.parse::<usize>() {
        Ok(i) if i < size => Ok(i),
        _ => Err(parse_err(line, format!("`{token}` is not an element index below {size}"))),
    }
}

pub fn parse_lattice(text: &str) -> Result<ResiduatedLattice> {
    let lines = lines(text);
    let Some((first, header)) = lines.first() else {
        return Err(parse_err(1, "empty lattice file"));
    };
    let (name, size) = match header.as_slice() {
        ["lattice", name, size] => {
            (*name, size.parse::<usize>().map_err(|_| parse_err(*first, format!("bad size `{size}`")))?)
        }
        _ => return Err(parse_err(*first, "expected `lattice <name> <size>`")),
    };
    let mut leq = vec![vec![false; size]; size];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    let mut labels: Option<Vec<String>> = None;
    let mut tensor: Vec<Vec<usize>> = Vec::new();
    let mut in_tensor = false;
    for (no, tokens) in &lines[1..] {
        let no = *no;
        if in_tensor {
            if tensor.len() == size {
                return Err(parse_err(no, "unexpected line after the tensor table"));
            }
            if tokens.len() != size {
                return Err(parse_err(no, format!("tensor row needs {size} entries")));
            }
            tensor.push(tokens.iter().map(|t| parse_index(no, t, size)).collect::<Result<_>>()?);
            continue;
        }
        match tokens.as_slice() {
            ["labels", rest @ ..] => {
                if rest.len() != size {
                    return Err(parse_err(no, format!("expected {size} labels")));
                }
                labels = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            ["leq", a, b] => {
                let (a, b) = (parse_index(no, a, size)?, parse_index(no, b, size)?);
                leq[a][b] = true;
            }
            ["tensor"] => in_tensor = true,
            _ => return Err(parse_err(no, format!("unexpected `{}`", tokens.join(" ")))),
        }
    }
    if tensor.len() != size {
        return Err(parse_err(lines.last().map_or(1, |l| l.0), format!("tensor table needs {size} rows")));
    }
    for k in 0..size {
        for i in 0..size {
            if leq[i][k] {
                for j in 0..size {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
    let l = ResiduatedLattice::build(name, &leq, &tensor)?;
    match labels {
        Some(labels) => l.with_labels(labels),
        None => Ok(l),
    }
}

/// Writes the full order relation, so the output parses back unchanged.
pub fn write_lattice(l: &ResiduatedLattice) -> String {
    let mut out = format!("lattice {} {}\nlabels {}\n", l.name(), l.size(), l.labels().join(" "));
    for a in l.degrees() {
        for b in l.degrees() {
            if a != b && l.leq(a, b) {
                let _ = writeln!(out, "leq {} {}", a.index(), b.index());
            }
        }
    }
    out.push_str("tensor\n");
    for a in l.degrees() {
        let row: Vec<String> = l.degrees().map(|b| l.tensor(a, b).index().to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Finds the lattice named after `over`.
pub trait LatticeResolver {
    fn resolve(&mut self, name: &str) -> Result<Arc<ResiduatedLattice>>;
}

/// Built-in names first, then lattice files relative to `base`. Each name resolves once.
pub struct FileResolver {
    base: PathBuf,
    seen: Vec<(String, Arc<ResiduatedLattice>)>,
}

impl FileResolver {
    pub fn new(base: impl Into<PathBuf>) -> Self {
        Self { base: base.into(), seen: Vec::new() }
    }

    /// Resolves relative to the directory holding `file`.
    pub fn beside(file: &Path) -> Self {
        Self::new(file.parent().map(Path::to_path_buf).unwrap_or_default())
    }
}

impl LatticeResolver for FileResolver {
    fn resolve(&mut self, name: &str) -> Result<Arc<ResiduatedLattice>> {
        if let Some((_, l)) = self.seen.iter().find(|(n, _)| n == name) {
            return Ok(l.clone());
        }
        let l = match ResiduatedLattice::builtin(name) {
            Ok(l) => l,
            Err(_) => {
                let path = self.base.join(name);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Shape(format!("lattice `{name}` is not built in and {} is unreadable: {e}", path.display())))?;
                parse_lattice(&text)?
            }
        };
        let l = Arc::new(l);
        self.seen.push((name.to_string(), l.clone()));
        Ok(l)
    }
}

/// Always answers with one lattice, whatever the name.
pub struct Fixed(pub Arc<ResiduatedLattice>);

impl LatticeResolver for Fixed {
    fn resolve(&mut self, _: &str) -> Result<Arc<ResiduatedLattice>> {
        Ok(self.0.clone())
    }
}

fn header<'a>(lines: &[(usize, Vec<&'a str>)], kind: &str) -> Result<(&'a str, &'a str)> {
    match lines.first() {
        Some((_, t)) if t.len() == 4 && t[0] == kind && t[2] == "over" => Ok((t[1], t[3])),
        Some((no, _)) => Err(parse_err(*no, format!("expected `{kind} <name> over <lattice>`"))),
        None => Err(parse_err(1, format!("empty {kind} file"))),
    }
}

fn parse_carrier(lines: &[(usize, Vec<&str>)]) -> Result<Carrier> {
    match lines.get(1) {
        Some((no, t)) if t[0] == "carrier" => {
            Carrier::new(t[1..].iter().map(|s| s.to_string()).collect()).map_err(|e| parse_err(*no, e.to_string()))
        }
        Some((no, _)) => Err(parse_err(*no, "expected `carrier <labels...>`")),
        None => Err(parse_err(1, "missing carrier line")),
    }
}

fn parse_degree(l: &ResiduatedLattice, line: usize, token: &str) -> Result<Degree> {
    l.parse_degree(token).ok_or_else(|| parse_err(line, format!("`{token}` is not a degree of {}", l.name())))
}

/// `subset <name>: x=d ...`; returns the name and the L-subset.
pub fn parse_subset(l: &ResiduatedLattice, carrier: &Carrier, line: usize, tokens: &[&str]) -> Result<(String, LSubset)> {
    let Some(("subset", rest)) = tokens.split_first().map(|(h, r)| (*h, r)) else {
        return Err(parse_err(line, "expected `subset <name>: x=d ...`"));
    };
    let (name, pairs) = match rest.split_first() {
        Some((n, pairs)) if n.ends_with(':') => (n.trim_end_matches(':').to_string(), pairs),
        _ => return Err(parse_err(line, "subset name must end with `:`")),
    };
    let mut s = LSubset::constant(carrier.size(), l.bottom());
    for pair in pairs {
        let (x, d) = pair.split_once('=').ok_or_else(|| parse_err(line, format!("expected `point=degree`, got `{pair}`")))?;
        let x = carrier.position(x).ok_or_else(|| parse_err(line, format!("unknown point `{x}`")))?;
        s.set(x, parse_degree(l, line, d)?);
    }
    Ok((name, s))
}

pub fn write_subset(l: &ResiduatedLattice, carrier: &Carrier, name: &str, s: &LSubset) -> String {
    let pairs: Vec<String> =
        (0..s.len()).filter(|&x| s.get(x) != l.bottom()).map(|x| format!("{}={}", carrier.label(x), l.label(s.get(x)))).collect();
    if pairs.is_empty() {
        format!("subset {name}:")
    } else {
        format!("subset {name}: {}", pairs.join(" "))
    }
}

/// A parsed order with the name from its header.
#[derive(Clone, Debug)]
pub struct NamedOrder {
    pub name: String,
    pub lattice_ref: String,
    pub order: LOrderedSet,
}

pub fn parse_order(text: &str, resolver: &mut dyn LatticeResolver) -> Result<NamedOrder> {
    let lines = lines(text);
    let (name, over) = header(&lines, "order")?;
    let l = resolver.resolve(over)?;
    let carrier = parse_carrier(&lines)?;
    let n = carrier.size();
    match lines.get(2) {
        Some((_, t)) if t.as_slice() == ["e"] => {}
        Some((no, _)) => return Err(parse_err(*no, "expected `e` before the matrix")),
        None => return Err(parse_err(lines[1].0, "missing `e` block")),
    }
    let rows = &lines[3..];
    if rows.len() != n {
        return Err(parse_err(lines.last().map_or(1, |l| l.0), format!("matrix needs {n} rows, found {}", rows.len())));
    }
    let mut e = Vec::with_capacity(n);
    for (no, t) in rows {
        if t.len() != n {
            return Err(parse_err(*no, format!("matrix row needs {n} entries")));
        }
        e.push(t.iter().map(|tok| parse_degree(&l, *no, tok)).collect::<Result<Vec<_>>>()?);
    }
    Ok(NamedOrder { name: name.to_string(), lattice_ref: over.to_string(), order: LOrderedSet::new(l, carrier, e)? })
}

pub fn write_order(name: &str, lattice_ref: &str, o: &LOrderedSet) -> String {
    let l = o.lattice();
    let mut out = format!("order {name} over {lattice_ref}\ncarrier {}\ne\n", o.carrier().labels().join(" "));
    for x in 0..o.size() {
        let row: Vec<&str> = (0..o.size()).map(|y| l.label(o.e(x, y))).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// A space file before its family is checked or closed.
#[derive(Clone, Debug)]
pub struct SpaceFile {
    pub name: String,
    pub lattice_ref: String,
    pub lattice: Arc<ResiduatedLattice>,
    pub carrier: Carrier,
    pub generators: Vec<(String, LSubset)>,
}

impl SpaceFile {
    pub fn family(&self) -> Vec<LSubset> {
        self.generators.iter().map(|(_, s)| s.clone()).collect()
    }
}

pub fn parse_space_file(text: &str, resolver: &mut dyn LatticeResolver) -> Result<SpaceFile> {
    let lines = lines(text);
    let (name, over) = header(&lines, "space")?;
    let lattice = resolver.resolve(over)?;
    let carrier = parse_carrier(&lines)?;
    let generators: Vec<(String, LSubset)> =
        lines[2..].iter().map(|(no, t)| parse_subset(&lattice, &carrier, *no, t)).collect::<Result<_>>()?;
    Ok(SpaceFile { name: name.to_string(), lattice_ref: over.to_string(), lattice, carrier, generators })
}

/// A parsed space with the name from its header and the listed subsets.
#[derive(Clone, Debug)]
pub struct NamedSpace {
    pub name: String,
    pub lattice_ref: String,
    pub generators: Vec<(String, LSubset)>,
    pub space: LConvexSpace,
}

/// With `closed`, the listed family must already be a convex structure;
/// otherwise it generates one.
pub fn parse_space(text: &str, resolver: &mut dyn LatticeResolver, closed: bool, budget: &Budget) -> Result<NamedSpace> {
    let file = parse_space_file(text, resolver)?;
    let family = file.family();
    let SpaceFile { name, lattice_ref, lattice, carrier, generators } = file;
    let space = if closed {
        LConvexSpace::from_family(lattice, carrier, family, budget)?
    } else {
        LConvexSpace::build(lattice, carrier, &family, budget)?
    };
    Ok(NamedSpace { name, lattice_ref, generators, space })
}

/// Lists every member, so the output parses back with `closed = true`.
pub fn write_space(name: &str, lattice_ref: &str, x: &LConvexSpace) -> String {
    let l = x.lattice();
    let mut out = format!("space {name} over {lattice_ref}\ncarrier {}\n", x.carrier().labels().join(" "));
    for (i, m) in x.members().iter().enumerate() {
        let _ = writeln!(out, "{}", write_subset(l, x.carrier(), &format!("C{i}"), m));
    }
    out
}

pub fn load_lattice(path: &Path) -> Result<ResiduatedLattice> {
    parse_lattice(&read(path)?)
}

pub fn load_order(path: &Path) -> Result<NamedOrder> {
    parse_order(&read(path)?, &mut FileResolver::beside(path))
}

pub fn load_space_file(path: &Path) -> Result<SpaceFile> {
    parse_space_file(&read(path)?, &mut FileResolver::beside(path))
}

pub fn load_space(path: &Path, closed: bool, budget: &Budget) -> Result<NamedSpace> {
    parse_space(&read(path)?, &mut FileResolver::beside(path), closed, budget)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Shape(format!("cannot read {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ChainKind;

    #[test]
    fn lattice_round_trip() {
        let l = ResiduatedLattice::chain(3, ChainKind::Lukasiewicz).unwrap();
        let back = parse_lattice(&write_lattice(&l)).unwrap();
        assert_eq!(back.labels(), l.labels());
        for a in l.degrees() {
            for b in l.degrees() {
                assert_eq!(back.tensor(a, b), l.tensor(a, b));
                assert_eq!(back.leq(a, b), l.leq(a, b));
            }
        }
    }

    #[test]
    fn covering_pairs_suffice() {
        let text = "lattice g3 3\n# chain\nleq 0 1\nleq 1 2\ntensor\n0 0 0\n0 1 1\n0 1 2\n";
        let l = parse_lattice(text).unwrap();
        assert!(l.leq(Degree::new(0), Degree::new(2)));
        assert_eq!(l.residuum(Degree::new(2), Degree::new(1)), Degree::new(1));
    }

    #[test]
    fn lattice_errors_carry_lines() {
        assert!(matches!(parse_lattice("lattice x 2\nleq 0 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_lattice("lattice x 2\nleq 0 1\ntensor\n0 0\n"), Err(Error::Parse { .. })));
        let bad = "lattice x 3\nleq 0 1\nleq 1 2\ntensor\n0 0 0\n0 2 1\n0 1 2\n";
        assert!(matches!(parse_lattice(bad), Err(Error::NotAMonoid { .. })));
    }

    #[test]
    fn order_and_space_files() {
        let mut r = FileResolver::new(".");
        let o = parse_order("order c over boolean\ncarrier a b\ne\n1 1\n0 1\n", &mut r).unwrap();
        assert_eq!(o.order.size(), 2);
        let back = parse_order(&write_order(&o.name, &o.lattice_ref, &o.order), &mut r).unwrap();
        assert_eq!(back.order.matrix(), o.order.matrix());
        assert!(matches!(
            parse_order("order c over boolean\ncarrier a b\ne\n1 1\n1 1\n", &mut r),
            Err(Error::E3Violation { .. })
        ));

        let s = parse_space("space s over boolean\ncarrier a b\nsubset A: a=1\n", &mut r, false, &Budget::default()).unwrap();
        assert_eq!(s.space.members().len(), 3);
        let text = write_space(&s.name, &s.lattice_ref, &s.space);
        let back = parse_space(&text, &mut r, true, &Budget::default()).unwrap();
        assert_eq!(back.space.members(), s.space.members());
        assert!(matches!(
            parse_space("space s over boolean\ncarrier a b\nsubset A: a=1\n", &mut r, true, &Budget::default()),
            Err(Error::AxiomViolation(_))
        ));
        assert!(matches!(
            parse_space("space s over boolean\ncarrier a b\nsubset A: c=1\n", &mut r, false, &Budget::default()),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
