//! Python bindings: lattices, spaces, orders, sobrification, completions and the theorem suite.
//!
//! Degrees and L-subsets cross the boundary as element indices.

use std::path::PathBuf;
use std::sync::Arc;

use lconvex::harness::search::{search_counterexamples, SearchTarget};
use lconvex::harness::{run_selected, InstanceSpec};
use lconvex::io::{parse_order, parse_space, FileResolver};
use lconvex::scott::{completion, scott_structure, specialization, CompletionResult};
use lconvex::sober::{is_s0, is_sober, sobrify, SobrificationResult};
use lconvex::{Budget, Carrier, Degree, Error, LConvexSpace, LOrderedSet, LSubset, ResiduatedLattice};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(lconvex, BudgetExceeded, PyException, "A search cap was hit; raise the budget or shrink the instance.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn indices(s: &LSubset) -> Vec<usize> {
    s.degrees().iter().map(|d| d.index()).collect()
}

fn parse_spec(text: Option<&str>) -> PyResult<InstanceSpec> {
    match text {
        Some(t) => InstanceSpec::from_json(t).map_err(|e| PyValueError::new_err(e.to_string())),
        None => Ok(InstanceSpec::default()),
    }
}

/// A finite residuated lattice.
#[pyclass(name = "Lattice", module = "lconvex", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLattice(Arc<ResiduatedLattice>);

impl PyLattice {
    fn degree(&self, d: usize) -> PyResult<Degree> {
        if d < self.0.size() {
            Ok(Degree::new(d))
        } else {
            Err(PyValueError::new_err(format!("{d} is not an element of {}", self.0.name())))
        }
    }

    fn subset(&self, raw: Vec<usize>) -> PyResult<LSubset> {
        Ok(LSubset::new(raw.into_iter().map(|d| self.degree(d)).collect::<PyResult<_>>()?))
    }
}

#[pymethods]
impl PyLattice {
    /// `boolean`, `godel4`, `lukasiewicz3`, `diamond`, `product(boolean,godel3)`, ...
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ok(Self(Arc::new(ResiduatedLattice::builtin(name).map_err(py_err)?)))
    }

    /// Parse the text lattice format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self(Arc::new(lconvex::io::parse_lattice(text).map_err(py_err)?)))
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn top(&self) -> usize {
        self.0.top().index()
    }

    #[getter]
    fn bottom(&self) -> usize {
        self.0.bottom().index()
    }

    fn leq(&self, a: usize, b: usize) -> PyResult<bool> {
        Ok(self.0.leq(self.degree(a)?, self.degree(b)?))
    }

    fn meet(&self, a: usize, b: usize) -> PyResult<usize> {
        Ok(self.0.meet(self.degree(a)?, self.degree(b)?).index())
    }

    fn join(&self, a: usize, b: usize) -> PyResult<usize> {
        Ok(self.0.join(self.degree(a)?, self.degree(b)?).index())
    }

    fn tensor(&self, a: usize, b: usize) -> PyResult<usize> {
        Ok(self.0.tensor(self.degree(a)?, self.degree(b)?).index())
    }

    fn residuum(&self, a: usize, b: usize) -> PyResult<usize> {
        Ok(self.0.residuum(self.degree(a)?, self.degree(b)?).index())
    }

    /// Subsethood degree `sub(a, b)`.
    fn sub(&self, a: Vec<usize>, b: Vec<usize>) -> PyResult<usize> {
        Ok(self.0.sub(&self.subset(a)?, &self.subset(b)?).map_err(py_err)?.index())
    }

    /// The residuation law report; `passed` is true when every law holds.
    fn verify_laws(&self) -> (bool, String) {
        let r = self.0.verify_laws();
        (r.passed(), r.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Lattice({:?}, {} elements)", self.0.name(), self.0.size())
    }
}

/// A stratified L-convex space on a finite carrier.
#[pyclass(name = "Space", module = "lconvex", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySpace(Arc<LConvexSpace>);

#[pymethods]
impl PySpace {
    /// The smallest convex structure containing `generators` on `points` points.
    #[staticmethod]
    #[pyo3(signature = (lattice, points, generators, max_family = None))]
    fn build(lattice: &PyLattice, points: usize, generators: Vec<Vec<usize>>, max_family: Option<u64>) -> PyResult<Self> {
        let gens = generators.into_iter().map(|g| lattice.subset(g)).collect::<PyResult<Vec<_>>>()?;
        let mut b = Budget::default();
        if let Some(cap) = max_family {
            b.max_family = cap;
        }
        let x = LConvexSpace::build(lattice.0.clone(), Carrier::indexed(points), &gens, &b).map_err(py_err)?;
        Ok(Self(Arc::new(x)))
    }

    /// Parse the text space format. Lattice paths resolve against `base` (default: current directory).
    #[staticmethod]
    #[pyo3(signature = (text, closed = false, base = None))]
    fn parse(text: &str, closed: bool, base: Option<PathBuf>) -> PyResult<Self> {
        let mut resolver = FileResolver::new(base.unwrap_or_else(|| PathBuf::from(".")));
        let named = parse_space(text, &mut resolver, closed, &Budget::default()).map_err(py_err)?;
        Ok(Self(Arc::new(named.space)))
    }

    #[getter]
    fn lattice(&self) -> PyLattice {
        PyLattice(self.0.lattice().clone())
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.0.carrier().labels().to_vec()
    }

    #[getter]
    fn members(&self) -> Vec<Vec<usize>> {
        self.0.members().iter().map(indices).collect()
    }

    fn __len__(&self) -> usize {
        self.0.members().len()
    }

    fn __contains__(&self, a: Vec<usize>) -> PyResult<bool> {
        Ok(self.0.contains(&PyLattice(self.0.lattice().clone()).subset(a)?))
    }

    fn hull(&self, a: Vec<usize>) -> PyResult<Vec<usize>> {
        let a = PyLattice(self.0.lattice().clone()).subset(a)?;
        if a.len() != self.0.size() {
            return Err(py_err(Error::CarrierMismatch { expected: self.0.size(), found: a.len() }));
        }
        Ok(indices(&self.0.hull(&a)))
    }

    fn axioms_hold(&self) -> bool {
        self.0.verify_axioms(&Budget::default()).passed()
    }

    fn is_sober(&self) -> bool {
        is_sober(&self.0).sober
    }

    fn is_s0(&self) -> bool {
        is_s0(&self.0)
    }

    fn sobrify(&self) -> PyResult<PySobrification> {
        Ok(PySobrification(sobrify(self.0.clone(), &Budget::default()).map_err(py_err)?))
    }

    /// The specialization L-order of an S0 space.
    fn specialization(&self) -> PyResult<PyOrder> {
        Ok(PyOrder(specialization(&self.0).map_err(py_err)?))
    }

    fn __repr__(&self) -> String {
        format!("Space({} points over {}, {} members)", self.0.size(), self.0.lattice().name(), self.0.members().len())
    }
}

/// `X^F` with its embedding `xi`.
#[pyclass(name = "Sobrification", module = "lconvex", frozen)]
struct PySobrification(SobrificationResult);

#[pymethods]
impl PySobrification {
    #[getter]
    fn space(&self) -> PySpace {
        PySpace(self.0.xf_space.clone())
    }

    /// For each point of `X^F`, the compact member of the base space it stands for.
    #[getter]
    fn points(&self) -> Vec<Vec<usize>> {
        self.0.provenance().into_iter().map(indices).collect()
    }

    /// `xi[x]` is the point of `X^F` that `x` maps to.
    #[getter]
    fn xi(&self) -> Vec<usize> {
        self.0.xi.map().table().to_vec()
    }

    fn xi_is_homeomorphism(&self) -> bool {
        self.0.xi.is_convex_homeomorphism()
    }
}

/// A finite L-ordered set.
#[pyclass(name = "Order", module = "lconvex", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyOrder(LOrderedSet);

#[pymethods]
impl PyOrder {
    /// From an `e` matrix of element indices; checks E1-E3.
    #[new]
    fn new(lattice: &PyLattice, e: Vec<Vec<usize>>) -> PyResult<Self> {
        let n = e.len();
        let rows = e
            .into_iter()
            .map(|row| row.into_iter().map(|d| lattice.degree(d)).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self(LOrderedSet::new(lattice.0.clone(), Carrier::indexed(n), rows).map_err(py_err)?))
    }

    #[staticmethod]
    #[pyo3(signature = (text, base = None))]
    fn parse(text: &str, base: Option<PathBuf>) -> PyResult<Self> {
        let mut resolver = FileResolver::new(base.unwrap_or_else(|| PathBuf::from(".")));
        Ok(Self(parse_order(text, &mut resolver).map_err(py_err)?.order))
    }

    #[getter]
    fn lattice(&self) -> PyLattice {
        PyLattice(self.0.lattice().clone())
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.0.carrier().labels().to_vec()
    }

    fn matrix(&self) -> Vec<Vec<usize>> {
        self.0.matrix().iter().map(|r| r.iter().map(|d| d.index()).collect()).collect()
    }

    fn is_join_semilattice(&self) -> PyResult<bool> {
        self.0.is_join_semilattice(&Budget::default()).map_err(py_err)
    }

    fn scott_structure(&self) -> PyResult<PySpace> {
        Ok(PySpace(Arc::new(scott_structure(&self.0, &Budget::default()).map_err(py_err)?)))
    }

    fn completion(&self) -> PyResult<PyCompletion> {
        Ok(PyCompletion(completion(&self.0, &Budget::default()).map_err(py_err)?))
    }

    fn __repr__(&self) -> String {
        format!("Order({} points over {})", self.0.size(), self.0.lattice().name())
    }
}

/// The join-semilattice completion `(P^F, xi)`.
#[pyclass(name = "Completion", module = "lconvex", frozen)]
struct PyCompletion(CompletionResult);

#[pymethods]
impl PyCompletion {
    #[getter]
    fn order(&self) -> PyOrder {
        PyOrder(self.0.order.clone())
    }

    #[getter]
    fn xi(&self) -> Vec<usize> {
        self.0.xi.table().to_vec()
    }

    #[getter]
    fn points(&self) -> Vec<Vec<usize>> {
        self.0.sobrification.provenance().into_iter().map(indices).collect()
    }
}

/// Run the theorem suite; returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (spec = None, only = None))]
fn run_theorems(py: Python<'_>, spec: Option<&str>, only: Option<Vec<String>>) -> PyResult<(bool, String)> {
    let spec = parse_spec(spec)?;
    let report = py.detach(|| run_selected(&spec, only.as_deref())).map_err(py_err)?;
    Ok((report.passed(), report.to_json()))
}

/// Counterexample search; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (target, spec = None, max_findings = 10))]
fn search(py: Python<'_>, target: &str, spec: Option<&str>, max_findings: usize) -> PyResult<String> {
    let target: SearchTarget = target.parse().map_err(PyValueError::new_err)?;
    let spec = parse_spec(spec)?;
    let report = py.detach(|| search_counterexamples(target, &spec, max_findings)).map_err(py_err)?;
    Ok(report.render())
}

#[pymodule]
#[pyo3(name = "lconvex")]
fn lconvex_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLattice>()?;
    m.add_class::<PySpace>()?;
    m.add_class::<PySobrification>()?;
    m.add_class::<PyOrder>()?;
    m.add_class::<PyCompletion>()?;
    m.add_function(wrap_pyfunction!(run_theorems, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    Ok(())
}
