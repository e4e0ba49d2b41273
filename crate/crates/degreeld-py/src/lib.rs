//! Python bindings: measures, degree statistics, the variational
//! solver, penalty phase classification, graph combinatorics, and the
//! Metropolis sampler, with library errors surfaced as `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use degreeld::combinatorics::{
    enumerate_frequencies, erdos_gallai_check, exact_log_partition, frequency_from_target,
};
use degreeld::measures::SparseMeasure;
use degreeld::penalty::{classify_phase as classify_phase_rs, PenaltyModel};
use degreeld::sampler::{
    empirical_degree_distribution as empirical_rs, estimate_log_partition as estimate_rs,
    mcmc_run_chains, sample_er as sample_er_rs, ChainConfig, Graph, SampleSummary,
};
use degreeld::statistic::DegreeStatistic;
use degreeld::tilted::{
    log_normalizer as log_normalizer_rs, solve_j as solve_j_rs, tilted_mean as tilted_mean_rs,
    SolveOptions,
};

fn err(e: degreeld::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite-support probability measure on degrees.
#[pyclass(name = "SparseMeasure", skip_from_py_object)]
#[derive(Clone)]
struct PySparseMeasure {
    inner: SparseMeasure,
}

#[pymethods]
impl PySparseMeasure {
    #[new]
    fn new(weights: Vec<f64>) -> PyResult<Self> {
        Ok(Self { inner: SparseMeasure::new(weights).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (beta, tail_tol=1e-12))]
    fn poisson(beta: f64, tail_tol: f64) -> Self {
        Self { inner: SparseMeasure::poisson(beta, tail_tol) }
    }

    #[staticmethod]
    fn delta(i: usize) -> Self {
        Self { inner: SparseMeasure::delta(i) }
    }

    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        Ok(Self { inner: SparseMeasure::from_csv(text).map_err(err)? })
    }

    fn weights(&self) -> Vec<f64> {
        self.inner.weights().to_vec()
    }

    fn weight(&self, i: usize) -> f64 {
        self.inner.weight(i)
    }

    fn mean(&self) -> f64 {
        self.inner.mean()
    }

    fn metric_d(&self, other: &Self) -> f64 {
        self.inner.metric_d(&other.inner)
    }

    fn kl_divergence(&self, other: &Self) -> f64 {
        self.inner.kl_divergence(&other.inner)
    }

    fn rate_i(&self, beta: f64) -> f64 {
        self.inner.rate_i(beta)
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    fn __repr__(&self) -> String {
        format!("SparseMeasure(mean={:.6}, support_max={})", self.inner.mean(), self.inner.support_max())
    }
}

/// A degree statistic f with f(0) = 0.
#[pyclass(name = "DegreeStatistic", skip_from_py_object)]
#[derive(Clone)]
struct PyDegreeStatistic {
    inner: DegreeStatistic,
}

#[pymethods]
impl PyDegreeStatistic {
    #[staticmethod]
    fn zero() -> Self {
        Self { inner: DegreeStatistic::zero() }
    }

    #[staticmethod]
    fn linear(slope: f64) -> PyResult<Self> {
        Ok(Self { inner: DegreeStatistic::linear(slope).map_err(err)? })
    }

    #[staticmethod]
    fn kstar(k: u32, gamma: f64) -> PyResult<Self> {
        Ok(Self { inner: DegreeStatistic::kstar(k, gamma).map_err(err)? })
    }

    #[staticmethod]
    fn gwd(lambda1: f64, gamma: f64) -> PyResult<Self> {
        Ok(Self { inner: DegreeStatistic::gwd(lambda1, gamma).map_err(err)? })
    }

    #[staticmethod]
    fn alt_kstar(lambda2: f64, gamma: f64) -> PyResult<Self> {
        Ok(Self { inner: DegreeStatistic::alt_kstar(lambda2, gamma).map_err(err)? })
    }

    #[staticmethod]
    fn penalty(gamma: f64) -> PyResult<Self> {
        Ok(Self { inner: DegreeStatistic::penalty(gamma).map_err(err)? })
    }

    #[staticmethod]
    fn custom(table: Vec<f64>) -> PyResult<Self> {
        Ok(Self { inner: DegreeStatistic::custom(table).map_err(err)? })
    }

    fn eval(&self, i: u64) -> f64 {
        self.inner.eval(i)
    }

    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    fn is_superlinear(&self) -> bool {
        self.inner.is_superlinear()
    }

    fn __repr__(&self) -> String {
        format!("DegreeStatistic({})", self.inner.label())
    }
}

/// A simple labeled graph with incrementally maintained degrees.
#[pyclass(name = "Graph")]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize) -> Self {
        Self { inner: Graph::empty(n) }
    }

    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> u64 {
        self.inner.edges()
    }

    fn degree(&self, v: usize) -> u32 {
        self.inner.degree(v)
    }

    fn degrees(&self) -> Vec<u32> {
        self.inner.degrees().to_vec()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        self.inner.set_edge(u, v, present)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edges())
    }
}

fn summary_dict<'py>(py: Python<'py>, summary: &SampleSummary) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("mean_empirical_measure", PySparseMeasure {
        inner: summary.mean_empirical_measure.clone(),
    })?;
    d.set_item("distance_to_prediction", summary.distance_to_prediction)?;
    d.set_item("mean_edges", summary.mean_edges)?;
    d.set_item("acceptance_rate", summary.acceptance_rate)?;
    Ok(d)
}

/// Solve the one-dimensional variational problem for J(f).
#[pyfunction]
#[pyo3(signature = (statistic, beta, grid_points=None, theta_max=None))]
fn solve_j<'py>(
    py: Python<'py>,
    statistic: &PyDegreeStatistic,
    beta: f64,
    grid_points: Option<usize>,
    theta_max: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let mut options = SolveOptions::default();
    if let Some(g) = grid_points {
        options.grid_points = g;
    }
    if let Some(t) = theta_max {
        options.theta_max_init = Some(t);
    }
    let solution = solve_j_rs(&statistic.inner, beta, &options).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("statistic_label", &solution.statistic_label)?;
    d.set_item("beta", solution.beta)?;
    d.set_item("j_value", solution.j_value)?;
    d.set_item("degenerate", solution.degenerate)?;
    let minimizers = PyList::empty(py);
    for m in &solution.minimizers {
        let item = PyDict::new(py);
        item.set_item("theta", m.theta)?;
        item.set_item("value", m.value)?;
        item.set_item("residual", m.stationarity_residual)?;
        minimizers.append(item)?;
    }
    d.set_item("minimizers", minimizers)?;
    Ok(d)
}

/// Log-normalizer C(theta) of the tilted family.
#[pyfunction]
#[pyo3(signature = (theta, statistic, tail_tol=1e-12))]
fn log_normalizer(theta: f64, statistic: &PyDegreeStatistic, tail_tol: f64) -> PyResult<f64> {
    log_normalizer_rs(theta, &statistic.inner, tail_tol).map_err(err)
}

/// Mean of the tilted measure at the given theta.
#[pyfunction]
fn tilted_mean(theta: f64, statistic: &PyDegreeStatistic) -> PyResult<f64> {
    tilted_mean_rs(theta, &statistic.inner).map_err(err)
}

/// Classify the phase of the isolated-vertex penalty model.
#[pyfunction]
#[pyo3(signature = (beta, e_gamma, tie_tol=1e-6))]
fn classify_phase<'py>(
    py: Python<'py>,
    beta: f64,
    e_gamma: f64,
    tie_tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let model = PenaltyModel::from_e_gamma(beta, e_gamma).map_err(err)?;
    let c = classify_phase_rs(&model, tie_tol);
    let d = PyDict::new(py);
    d.set_item("roots", c.roots)?;
    d.set_item("local_minima", c.local_minima)?;
    d.set_item("global_minima", c.global_minima)?;
    d.set_item("regime", c.regime.to_string())?;
    d.set_item("tangency", c.tangency)?;
    Ok(d)
}

/// Whether the degree sequence is realizable by a simple graph.
#[pyfunction]
fn is_graphical(sequence: Vec<u64>) -> PyResult<bool> {
    let sorted = degreeld::combinatorics::DegreeSequence::new(sequence).map_err(err)?;
    Ok(sorted.is_graphical())
}

/// Erdős–Gallai check on an already non-increasing sequence.
#[pyfunction]
fn erdos_gallai(sequence: Vec<u64>) -> PyResult<bool> {
    erdos_gallai_check(&sequence).map_err(err)
}

/// Graphical frequency vector tracking a target degree distribution.
#[pyfunction]
fn frequency_target(y: Vec<f64>, n: usize) -> PyResult<Vec<u64>> {
    Ok(frequency_from_target(&y, n).map_err(err)?.counts().to_vec())
}

/// All degree-frequency classes of graphs on n vertices with their
/// exact counts and probabilities.
#[pyfunction]
fn enumerate_graphs(n: usize, beta: f64) -> PyResult<Vec<(Vec<u64>, u64, f64)>> {
    Ok(enumerate_frequencies(n, beta)
        .map_err(err)?
        .into_iter()
        .map(|(h, (count, prob))| (h.counts().to_vec(), count, prob))
        .collect())
}

/// Exact log-partition value by exhaustive enumeration.
#[pyfunction]
fn log_partition_exact(n: usize, beta: f64, statistic: &PyDegreeStatistic) -> PyResult<f64> {
    exact_log_partition(n, beta, &statistic.inner).map_err(err)
}

/// Importance-sampling log-partition estimate and its standard error.
#[pyfunction]
#[pyo3(signature = (n, beta, statistic, samples, seed=0))]
fn log_partition_estimate(
    n: usize,
    beta: f64,
    statistic: &PyDegreeStatistic,
    samples: usize,
    seed: u64,
) -> PyResult<(f64, f64)> {
    estimate_rs(n, beta, &statistic.inner, samples, seed).map_err(err)
}

/// One Erdős–Rényi draw with edge probability beta/n.
#[pyfunction]
#[pyo3(signature = (n, beta, seed=0))]
fn sample_er(n: usize, beta: f64, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: sample_er_rs(n, beta, seed).map_err(err)? })
}

/// Empirical degree distribution of a graph.
#[pyfunction]
fn empirical_degree_distribution(graph: &PyGraph) -> PySparseMeasure {
    PySparseMeasure { inner: empirical_rs(&graph.inner) }
}

/// Run the edge-flip Metropolis chain and summarize retained samples.
#[pyfunction]
#[pyo3(signature = (n, beta, statistic, burn_in=1000, samples=100, thin=10, seed=0, chains=1))]
#[allow(clippy::too_many_arguments)]
fn mcmc_run<'py>(
    py: Python<'py>,
    n: usize,
    beta: f64,
    statistic: &PyDegreeStatistic,
    burn_in: usize,
    samples: usize,
    thin: usize,
    seed: u64,
    chains: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let mut cfg = ChainConfig::new(n, beta, statistic.inner.clone(), seed).map_err(err)?;
    cfg.burn_in = burn_in;
    cfg.samples = samples;
    cfg.thin = thin;
    let summary = mcmc_run_chains(&cfg, chains).map_err(err)?;
    summary_dict(py, &summary)
}

#[pymodule]
fn degreeld_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySparseMeasure>()?;
    m.add_class::<PyDegreeStatistic>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(solve_j, m)?)?;
    m.add_function(wrap_pyfunction!(log_normalizer, m)?)?;
    m.add_function(wrap_pyfunction!(tilted_mean, m)?)?;
    m.add_function(wrap_pyfunction!(classify_phase, m)?)?;
    m.add_function(wrap_pyfunction!(is_graphical, m)?)?;
    m.add_function(wrap_pyfunction!(erdos_gallai, m)?)?;
    m.add_function(wrap_pyfunction!(frequency_target, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(log_partition_exact, m)?)?;
    m.add_function(wrap_pyfunction!(log_partition_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(sample_er, m)?)?;
    m.add_function(wrap_pyfunction!(empirical_degree_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(mcmc_run, m)?)?;
    Ok(())
}
