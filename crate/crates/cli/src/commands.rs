use std::path::Path;
use std::sync::Arc;

use lconvex::convex::verify_family;
use lconvex::harness::search::{search_counterexamples, SearchTarget};
use lconvex::harness::{run_selected, InstanceSpec, IN_SCOPE};
use lconvex::io::{load_lattice, load_order, load_space, load_space_file};
use lconvex::mutation::{Mutation, MutationGuard};
use lconvex::scott::{completion, scott_structure, sober_join_characterization, specialization, verify_completion};
use lconvex::sober::{self, is_s0, is_sober, s0_witness, Uniqueness};
use lconvex::{Budget, LConvexSpace, LOrderedSet, ResiduatedLattice};
use serde_json::{json, Value};

use crate::Failure;

type Outcome = Result<(), Failure>;

fn write_report(path: Option<&Path>, value: &Value) -> Outcome {
    if let Some(p) = path {
        std::fs::write(p, serde_json::to_string_pretty(value)? + "\n")?;
    }
    Ok(())
}

fn fail_if(bad: bool, message: impl FnOnce() -> String) -> Outcome {
    if bad {
        Err(Failure::Check(message()))
    } else {
        Ok(())
    }
}

fn matrix_json(o: &LOrderedSet) -> Value {
    let l = o.lattice();
    o.matrix().iter().map(|row| row.iter().map(|&d| l.label(d)).collect::<Vec<_>>()).collect()
}

fn print_matrix(o: &LOrderedSet) {
    let l = o.lattice();
    let labels = o.carrier().labels();
    let width = labels.iter().map(String::len).chain(l.labels().iter().map(String::len)).max().unwrap_or(1);
    print!("{:width$}", "");
    for y in labels {
        print!(" {y:>width$}");
    }
    println!();
    for (x, row) in o.matrix().iter().enumerate() {
        print!("{:>width$}", labels[x]);
        for &d in row {
            print!(" {:>width$}", l.label(d));
        }
        println!();
    }
}

fn point_list(x: &LConvexSpace, points: &[usize]) -> String {
    match points {
        [] => "no point".to_string(),
        [p] => format!("point {} only", x.carrier().label(*p)),
        _ => format!("points {}", points.iter().map(|&p| x.carrier().label(p)).collect::<Vec<_>>().join(", ")),
    }
}

fn members_json(x: &LConvexSpace) -> Value {
    x.members().iter().map(|m| m.render_named(x.lattice(), x.carrier())).collect()
}

/// A built-in lattice name, or a lattice file.
fn resolve_lattice(arg: &str) -> Result<ResiduatedLattice, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(load_lattice(path)?);
    }
    ResiduatedLattice::builtin(arg).map_err(|_| Failure::Usage(format!("{arg} is neither a lattice file nor a built-in lattice")))
}

pub fn check_lattice(arg: &str, report: Option<&Path>) -> Outcome {
    let l = resolve_lattice(arg)?;
    let laws = l.verify_laws();
    print!("{laws}");
    write_report(report, &serde_json::to_value(&laws)?)?;
    fail_if(!laws.passed(), || format!("{} violates the residuation laws", l.name()))
}

pub fn check_order(path: &Path, report: Option<&Path>) -> Outcome {
    let named = load_order(path)?;
    let o = &named.order;
    println!("order {} over {} ({} points): E1 E2 E3 hold", named.name, named.lattice_ref, o.size());
    print_matrix(o);
    write_report(
        report,
        &json!({ "name": named.name, "lattice": named.lattice_ref, "carrier": o.carrier().labels(), "e": matrix_json(o) }),
    )
}

pub fn check_space(path: &Path, closed: bool, budget: &Budget, report: Option<&Path>) -> Outcome {
    let file = load_space_file(path)?;
    let family = if closed {
        file.family()
    } else {
        let x = LConvexSpace::build(file.lattice.clone(), file.carrier.clone(), &file.family(), budget)?;
        x.members().to_vec()
    };
    let axioms = verify_family(&file.lattice, file.carrier.size(), &family, budget);
    println!("space {} over {} ({} points)", file.name, file.lattice_ref, file.carrier.size());
    print!("{axioms}");
    write_report(report, &json!({ "name": file.name, "lattice": file.lattice_ref, "closed": closed, "axioms": axioms }))?;
    fail_if(!axioms.passed(), || axioms.failures().join("; "))
}

pub fn sobrify(path: &Path, closed: bool, budget: &Budget, report: Option<&Path>) -> Outcome {
    let named = load_space(path, closed, budget)?;
    let x = Arc::new(named.space);
    let l = x.lattice().clone();
    let axioms = x.verify_axioms(budget);
    let sober = is_sober(&x);
    let s0 = is_s0(&x);
    let s = sober::sobrify(x.clone(), budget)?;
    let homeomorphism = s.xi.is_convex_homeomorphism();
    let xf = &s.xf_space;

    let mut polytopes = 0;
    let mut compact = 0;
    let nonempty: Vec<_> = xf.nonempty_members().cloned().collect();
    for m in &nonempty {
        polytopes += usize::from(xf.is_polytope(m)?.polytope);
        compact += usize::from(xf.is_compact(m)?);
    }
    let collapse = polytopes == nonempty.len() && compact == nonempty.len();

    println!("space {} over {}: {} points, {} members", named.name, named.lattice_ref, x.size(), x.members().len());
    println!("axioms C1-C4: {}", if axioms.passed() { "pass" } else { "FAIL" });
    println!("S0: {s0}");
    println!("sober: {}", sober.sober);
    if let Some(w) = &sober.witness {
        println!("  witness: compact member {} is the hull of {}", w.f.render_named(&l, x.carrier()), point_list(&x, &w.matches));
    }
    println!("X^F: {} points", s.points.len());
    for (i, k) in s.provenance().iter().enumerate() {
        println!("  {} = {}", xf.carrier().label(i), k.render_named(&l, x.carrier()));
    }
    println!("xi:");
    for (p, &q) in s.xi.map().table().iter().enumerate() {
        println!("  {} -> {}", x.carrier().label(p), xf.carrier().label(q));
    }
    println!("xi is a convex homeomorphism: {homeomorphism}");
    println!("X^F: every nonempty member is a compact polytope: {collapse}");

    let value = json!({
        "name": named.name,
        "lattice": named.lattice_ref,
        "carrier": x.carrier().labels(),
        "members": members_json(&x),
        "verdicts": {
            "axioms": axioms.passed(),
            "s0": s0,
            "sober": sober.sober,
            "xi_homeomorphism": homeomorphism,
            "xf_sober": is_sober(xf).sober,
            "finite_collapse": collapse,
        },
        "witnesses": {
            "sober": sober.witness.as_ref().map(|w| json!({ "hull": w.f.render_named(&l, x.carrier()), "points": w.matches })),
            "s0": s0_witness(&x),
            "axioms": axioms.failures(),
        },
        "xf": {
            "points": s.provenance().iter().enumerate().map(|(i, k)| json!({
                "label": xf.carrier().label(i),
                "compact_member": k.render_named(&l, x.carrier()),
            })).collect::<Vec<_>>(),
            "members": members_json(xf),
        },
        "xi": s.xi.map().table().iter().enumerate()
            .map(|(p, &q)| (x.carrier().label(p).to_string(), Value::from(xf.carrier().label(q))))
            .collect::<serde_json::Map<_, _>>(),
    });
    write_report(report, &value)?;
    fail_if(!axioms.passed(), || axioms.failures().join("; "))
}

pub fn specialize(path: &Path, closed: bool, budget: &Budget, report: Option<&Path>) -> Outcome {
    let named = load_space(path, closed, budget)?;
    let x = &named.space;
    let omega = specialization(x)?;
    println!("specialization order of {} over {}", named.name, named.lattice_ref);
    print_matrix(&omega);
    let verdict = sober_join_characterization(x, budget)?;
    println!("sober: {}", verdict.sober);
    println!("join-semilattice: {}", verdict.join_semilattice);
    println!("members are Scott convex: {}", verdict.members_scott_convex);
    write_report(
        report,
        &json!({
            "name": named.name,
            "lattice": named.lattice_ref,
            "carrier": x.carrier().labels(),
            "e": matrix_json(&omega),
            "sober_join": verdict,
        }),
    )
}

pub fn scott(path: &Path, budget: &Budget, report: Option<&Path>) -> Outcome {
    let named = load_order(path)?;
    let p = &named.order;
    let sigma = scott_structure(p, budget)?;
    println!("Scott structure of {} over {}: {} members", named.name, named.lattice_ref, sigma.members().len());
    print!("{}", sigma.describe());
    let sober = is_sober(&sigma).sober;
    println!("sober: {sober}");
    write_report(
        report,
        &json!({
            "name": named.name,
            "lattice": named.lattice_ref,
            "carrier": p.carrier().labels(),
            "members": members_json(&sigma),
            "sober": sober,
        }),
    )
}

pub fn complete(path: &Path, verify_universal: bool, budget: &Budget, report: Option<&Path>) -> Outcome {
    let named = load_order(path)?;
    let p = &named.order;
    let c = completion(p, budget)?;
    let l = p.lattice();
    let points: Vec<String> = c.sobrification.provenance().iter().map(|k| k.render_named(l, p.carrier())).collect();
    println!("completion of {} over {}: {} points", named.name, named.lattice_ref, c.order.size());
    for (i, k) in points.iter().enumerate() {
        println!("  {} = {k}", c.order.carrier().label(i));
    }
    print_matrix(&c.order);
    println!("xi:");
    for (x, &q) in c.xi.table().iter().enumerate() {
        println!("  {} -> {}", p.carrier().label(x), c.order.carrier().label(q));
    }
    let join = c.is_join_semilattice(budget)?;
    let embedding = c.xi_is_order_embedding(p);
    let scott_cp = c.xi_is_scott_cp(p, budget)?;
    println!("join-semilattice: {join}");
    println!("xi is an order-embedding: {embedding}");
    println!("xi is Scott convexity-preserving: {scott_cp}");

    let universal = if verify_universal {
        let v = verify_completion(p, &c.order, &c.xi, budget)?;
        let unique = matches!(v.uniqueness, Some(Uniqueness::Verified { commuting: 1, .. }));
        println!("universal property: {} (uniqueness {:?})", v.accepted, v.uniqueness);
        Some((v, unique))
    } else {
        None
    };
    write_report(
        report,
        &json!({
            "name": named.name,
            "lattice": named.lattice_ref,
            "points": points,
            "carrier": c.order.carrier().labels(),
            "e": matrix_json(&c.order),
            "xi": c.xi.table(),
            "join_semilattice": join,
            "xi_order_embedding": embedding,
            "xi_scott_cp": scott_cp,
            "universal": universal.as_ref().map(|(v, _)| v),
        }),
    )?;
    fail_if(!join || !embedding || !scott_cp, || "completion properties fail".into())?;
    match universal {
        Some((v, unique)) if !v.accepted || !unique => Err(Failure::Check("universal property fails".into())),
        _ => Ok(()),
    }
}

fn load_spec(path: Option<&Path>, seed: Option<u64>, tune: &dyn Fn(Budget) -> Budget) -> Result<InstanceSpec, Failure> {
    let mut spec = match path {
        Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?)?,
        None => InstanceSpec::default(),
    };
    if let Some(s) = seed {
        spec.seed = s;
    }
    spec.budget = tune(spec.budget);
    Ok(spec)
}

pub fn theorems(
    spec: Option<&Path>,
    seed: Option<u64>,
    tune: &dyn Fn(Budget) -> Budget,
    json: Option<&Path>,
    only: &[String],
    mutate: Option<&str>,
) -> Outcome {
    let spec = load_spec(spec, seed, tune)?;
    if let Some(bad) = only.iter().find(|id| !IN_SCOPE.contains(&id.as_str())) {
        return Err(Failure::Usage(format!("unknown check {bad}; known checks: {}", IN_SCOPE.join(", "))));
    }
    let guard = match mutate {
        Some(name) => Some(MutationGuard::activate(
            Mutation::from_name(name).ok_or_else(|| Failure::Usage(format!("unknown mutation {name}")))?,
        )),
        None => None,
    };
    let report = run_selected(&spec, (!only.is_empty()).then_some(only))?;
    drop(guard);
    print!("{}", report.render());
    if let Some(p) = json {
        std::fs::write(p, report.to_json() + "\n")?;
    }
    fail_if(!report.passed(), || format!("{} of {} checks failed", report.summary.failed, report.summary.checks))
}

pub fn search(
    target: &str,
    spec: Option<&Path>,
    seed: Option<u64>,
    tune: &dyn Fn(Budget) -> Budget,
    max_findings: usize,
    json: Option<&Path>,
) -> Outcome {
    let target: SearchTarget = target.parse().map_err(Failure::Usage)?;
    let spec = load_spec(spec, seed, tune)?;
    let report = search_counterexamples(target, &spec, max_findings)?;
    print!("{}", report.render());
    write_report(json, &serde_json::to_value(&report)?)
}
