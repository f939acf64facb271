//! Python bindings: graphs, exact placements, the verifier, the searches
//! and the constructors. Reports cross the boundary as JSON strings.

use std::time::Duration;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use oor_core::constructors;
use oor_core::gap::{self, Budget, SearchOptions, SolveOutcome};
use oor_core::geom::{self, Placement};
use oor_core::graph::{self, CircularOrder, Graph};
use oor_core::render;
use oor_core::verifier::{self, VerificationReport};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn order_of(seq: Vec<usize>) -> PyResult<CircularOrder> {
    CircularOrder::new(seq).map_err(err)
}

#[pyclass(name = "Graph", module = "oor", skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    pub inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::from_edges(n, &edges).map_err(err)? })
    }

    #[staticmethod]
    pub fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: graph::parse_graph6(text).map_err(err)? })
    }

    /// Named families: `petersen`, `cycle:6`, `wheel:6`, `grid:5,3`, ...
    #[staticmethod]
    pub fn named(spec: &str) -> PyResult<Self> {
        let spec = graph::parse_named(spec).map_err(err)?;
        Ok(PyGraph { inner: graph::named_graph(&spec).map_err(err)? })
    }

    #[getter]
    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        self.inner.non_edges()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.n() && v < self.inner.n() && self.inner.has_edge(u, v)
    }

    pub fn complement(&self) -> PyGraph {
        PyGraph { inner: self.inner.complement() }
    }

    pub fn to_graph6(&self) -> String {
        graph::write_graph6(&self.inner)
    }

    pub fn is_isomorphic(&self, other: PyRef<'_, PyGraph>) -> bool {
        graph::is_isomorphic(&self.inner, &other.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.edge_count())
    }
}

#[pyclass(name = "Placement", module = "oor", skip_from_py_object)]
#[derive(Clone)]
pub struct PyPlacement {
    pub inner: Placement,
}

#[pymethods]
impl PyPlacement {
    /// Regular polygon, `order[k]` at angle `-2πk/n`.
    #[staticmethod]
    pub fn regular(order: Vec<usize>) -> PyResult<Self> {
        Ok(PyPlacement { inner: geom::regular_placement(&order_of(order)?).map_err(err)? })
    }

    /// Rational points on the unit circle in the given order.
    #[staticmethod]
    #[pyo3(signature = (order, generic = true, seed = 0))]
    pub fn cocircular(order: Vec<usize>, generic: bool, seed: u64) -> PyResult<Self> {
        Ok(PyPlacement { inner: geom::cocircular_placement(&order_of(order)?, generic, seed).map_err(err)? })
    }

    /// Exact rational points given as decimal or `p/q` strings.
    #[staticmethod]
    pub fn rational(points: Vec<(String, String)>) -> PyResult<Self> {
        let pts = points
            .iter()
            .map(|(x, y)| Ok(geom::Point::new(geom::parse_rat(x)?, geom::parse_rat(y)?)))
            .collect::<Result<Vec<_>, geom::GeomError>>()
            .map_err(err)?;
        Ok(PyPlacement { inner: Placement::rational(pts).map_err(err)? })
    }

    #[staticmethod]
    pub fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPlacement { inner: Placement::from_json_str(text).map_err(err)? })
    }

    pub fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[getter]
    pub fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    pub fn mode(&self) -> &'static str {
        self.inner.mode_name()
    }

    /// Float approximations, for display only.
    pub fn approx_points(&self) -> Vec<(f64, f64)> {
        self.inner.approx_points()
    }

    fn __repr__(&self) -> String {
        format!("Placement(mode={:?}, n={})", self.inner.mode_name(), self.inner.n())
    }
}

#[pyclass(name = "Report", module = "oor", skip_from_py_object)]
#[derive(Clone)]
pub struct PyReport {
    pub inner: VerificationReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    pub fn valid(&self) -> bool {
        self.inner.valid
    }

    #[getter]
    pub fn reducible(&self) -> bool {
        self.inner.reducible
    }

    #[getter]
    pub fn vertices_on_outer_face(&self) -> bool {
        self.inner.vertices_on_outer_face
    }

    /// Non-edges that miss the outer face.
    #[getter]
    pub fn failures(&self) -> Vec<(usize, usize)> {
        self.inner.failures.iter().map(|f| (f.u, f.v)).collect()
    }

    pub fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    fn __bool__(&self) -> bool {
        self.inner.valid
    }

    fn __repr__(&self) -> String {
        format!("Report(valid={}, reducible={})", self.inner.valid, self.inner.reducible)
    }
}

#[pyclass(name = "SearchOutcome", module = "oor", skip_from_py_object)]
#[derive(Clone)]
pub struct PySearchOutcome {
    pub inner: gap::SearchOutcome,
}

#[pymethods]
impl PySearchOutcome {
    /// `"found"`, `"exhausted"` or `"budget-exceeded"`.
    #[getter]
    pub fn status(&self) -> &'static str {
        self.inner.status_str()
    }

    #[getter]
    pub fn order(&self) -> Option<Vec<usize>> {
        self.inner.order().map(|o| o.as_slice().to_vec())
    }

    #[getter]
    pub fn orders_examined(&self) -> u64 {
        self.inner.orders_examined
    }

    #[getter]
    pub fn elapsed_ms(&self) -> f64 {
        self.inner.elapsed_ms
    }

    pub fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("SearchOutcome(status={:?}, orders_examined={})", self.status(), self.inner.orders_examined)
    }
}

fn check_sizes(g: &PyGraph, pl: &PyPlacement) -> PyResult<()> {
    if g.inner.n() != pl.inner.n() {
        return Err(err(format!("graph has {} vertices, placement {}", g.inner.n(), pl.inner.n())));
    }
    Ok(())
}

/// Exact arrangement-based OOR check.
#[pyfunction]
pub fn verify_oor(g: PyRef<'_, PyGraph>, pl: PyRef<'_, PyPlacement>) -> PyResult<PyReport> {
    check_sizes(&g, &pl)?;
    Ok(PyReport { inner: verifier::verify_oor(&g.inner, &pl.inner).map_err(err)? })
}

/// The gap-region oracle for convex placements.
#[pyfunction]
pub fn verify_convex_gaps(g: PyRef<'_, PyGraph>, pl: PyRef<'_, PyPlacement>) -> PyResult<PyReport> {
    check_sizes(&g, &pl)?;
    Ok(PyReport { inner: verifier::verify_convex_gaps(&g.inner, &pl.inner).map_err(err)? })
}

/// `(holds, failing non-edges)` for a circular order.
#[pyfunction]
pub fn gap_condition(g: PyRef<'_, PyGraph>, order: Vec<usize>) -> PyResult<(bool, Vec<(usize, usize)>)> {
    let r = gap::gap_condition(&g.inner, &order_of(order)?).map_err(err)?;
    Ok((r.holds, r.failing()))
}

/// Candidate gaps `(a, b)` of the non-edge `xy`.
#[pyfunction]
pub fn candidate_gaps(g: PyRef<'_, PyGraph>, order: Vec<usize>, x: usize, y: usize) -> PyResult<Vec<(usize, usize)>> {
    let gaps = gap::candidate_gaps(&g.inner, &order_of(order)?, x, y).map_err(err)?;
    Ok(gaps.into_iter().map(|c| (c.a, c.b)).collect())
}

fn options(prune: bool, jobs: usize, max_nodes: Option<u64>, timeout_ms: Option<u64>) -> SearchOptions {
    SearchOptions {
        prune,
        budget: Budget { max_nodes, max_time: timeout_ms.map(Duration::from_millis) },
        jobs: jobs.max(1),
    }
}

#[pyfunction]
#[pyo3(signature = (g, prune = true, jobs = 1, max_nodes = None, timeout_ms = None))]
pub fn search_gap_order(
    py: Python<'_>,
    g: PyRef<'_, PyGraph>,
    prune: bool,
    jobs: usize,
    max_nodes: Option<u64>,
    timeout_ms: Option<u64>,
) -> PySearchOutcome {
    let g = g.inner.clone();
    let opts = options(prune, jobs, max_nodes, timeout_ms);
    PySearchOutcome { inner: py.detach(|| gap::search_gap_order(&g, &opts)) }
}

#[pyfunction]
#[pyo3(signature = (g, jobs = 1, max_nodes = None, timeout_ms = None))]
pub fn search_regular_order(
    py: Python<'_>,
    g: PyRef<'_, PyGraph>,
    jobs: usize,
    max_nodes: Option<u64>,
    timeout_ms: Option<u64>,
) -> PySearchOutcome {
    let g = g.inner.clone();
    let opts = options(true, jobs, max_nodes, timeout_ms);
    PySearchOutcome { inner: py.detach(|| gap::search_regular_order(&g, &opts)) }
}

/// DIMACS text of the gap-condition CNF.
#[pyfunction]
pub fn encode_dimacs(g: PyRef<'_, PyGraph>) -> String {
    gap::write_dimacs(&gap::encode_cnf(&g.inner))
}

/// Decides the gap condition through the CNF; returns a satisfying order,
/// or `None` if there is none.
#[pyfunction]
#[pyo3(signature = (g, timeout_ms = None))]
pub fn solve_gap_cnf(g: PyRef<'_, PyGraph>, timeout_ms: Option<u64>) -> PyResult<Option<Vec<usize>>> {
    let c = gap::encode_cnf(&g.inner);
    let budget = Budget { max_nodes: None, max_time: timeout_ms.map(Duration::from_millis) };
    match gap::solve_cnf(&c, &budget) {
        SolveOutcome::Sat(m) => Ok(c.decode(&m).map(|o| o.as_slice().to_vec())),
        SolveOutcome::Unsat => Ok(None),
        SolveOutcome::BudgetExceeded => Err(err("solver budget exceeded")),
    }
}

/// Rational placement of a 2-tree.
#[pyfunction]
pub fn construct_two_tree(g: PyRef<'_, PyGraph>) -> PyResult<PyPlacement> {
    if !graph::is_two_tree(&g.inner) {
        return Err(err("graph is not a 2-tree"));
    }
    let plan = graph::two_tree_plan(&g.inner).map_err(err)?;
    let (pl, _) = constructors::construct_two_tree(&plan).map_err(err)?;
    Ok(PyPlacement { inner: pl })
}

/// Placement of a connected partial 2-tree, via a completed 2-tree.
#[pyfunction]
pub fn construct_partial_two_tree(g: PyRef<'_, PyGraph>) -> PyResult<PyPlacement> {
    let out = constructors::construct_partial_two_tree(&g.inner).map_err(err)?;
    Ok(PyPlacement { inner: out.restriction.placement })
}

#[pyfunction]
pub fn cactus_order(g: PyRef<'_, PyGraph>) -> PyResult<Vec<usize>> {
    let bd = graph::block_cut_tree(&g.inner).map_err(err)?;
    Ok(constructors::construct_cactus_order(&bd).map_err(err)?.as_slice().to_vec())
}

#[pyfunction]
pub fn grid_order(k: usize, l: usize) -> PyResult<Vec<usize>> {
    Ok(constructors::construct_grid_order(k, l).map_err(err)?.as_slice().to_vec())
}

/// Order for an outerpath given its outerplanar (Hamiltonian) order.
#[pyfunction]
pub fn outerpath_order(g: PyRef<'_, PyGraph>, hamiltonian: Vec<usize>) -> PyResult<Vec<usize>> {
    let ops = graph::validate_outerpath(&g.inner, &order_of(hamiltonian)?).map_err(err)?;
    Ok(constructors::construct_outerpath_order(&ops).map_err(err)?.as_slice().to_vec())
}

/// Order for the complement of the caterpillar `t`.
#[pyfunction]
pub fn caterpillar_complement_order(t: PyRef<'_, PyGraph>) -> PyResult<Vec<usize>> {
    Ok(constructors::construct_caterpillar_complement_order(&t.inner).map_err(err)?.as_slice().to_vec())
}

#[pyfunction]
pub fn kn_minus_ck_order(n: usize, k: usize) -> PyResult<Vec<usize>> {
    Ok(constructors::construct_kn_minus_ck_order(n, k).map_err(err)?.as_slice().to_vec())
}

#[pyfunction]
#[pyo3(signature = (g, pl, report = None))]
pub fn render_svg(
    g: PyRef<'_, PyGraph>,
    pl: PyRef<'_, PyPlacement>,
    report: Option<PyRef<'_, PyReport>>,
) -> PyResult<String> {
    check_sizes(&g, &pl)?;
    Ok(render::render_svg(&g.inner, &pl.inner, report.as_ref().map(|r| &r.inner)))
}

#[pymodule]
fn oor(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyPlacement>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PySearchOutcome>()?;
    m.add_function(wrap_pyfunction!(verify_oor, m)?)?;
    m.add_function(wrap_pyfunction!(verify_convex_gaps, m)?)?;
    m.add_function(wrap_pyfunction!(gap_condition, m)?)?;
    m.add_function(wrap_pyfunction!(candidate_gaps, m)?)?;
    m.add_function(wrap_pyfunction!(search_gap_order, m)?)?;
    m.add_function(wrap_pyfunction!(search_regular_order, m)?)?;
    m.add_function(wrap_pyfunction!(encode_dimacs, m)?)?;
    m.add_function(wrap_pyfunction!(solve_gap_cnf, m)?)?;
    m.add_function(wrap_pyfunction!(construct_two_tree, m)?)?;
    m.add_function(wrap_pyfunction!(construct_partial_two_tree, m)?)?;
    m.add_function(wrap_pyfunction!(cactus_order, m)?)?;
    m.add_function(wrap_pyfunction!(grid_order, m)?)?;
    m.add_function(wrap_pyfunction!(outerpath_order, m)?)?;
    m.add_function(wrap_pyfunction!(caterpillar_complement_order, m)?)?;
    m.add_function(wrap_pyfunction!(kn_minus_ck_order, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    Ok(())
}
