//! Python bindings for the blockmodeling crate: networks, partitions,
//! criterion evaluation and partition search.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use blockmodeling::block::DiagonalPolicy;
use blockmodeling::criterion::{AllowedBlocks, Approach, ModelSpec};
use blockmodeling::inconsistency::{BlockType, RowColFunction};
use blockmodeling::{datasets, equivalence, search, summaries, workflow};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_f(f: &str) -> PyResult<RowColFunction> {
    RowColFunction::parse(f).ok_or_else(|| err(format!("unknown f {f:?} (max, sum or mean)")))
}

fn parse_blocks(blocks: &[String]) -> PyResult<Vec<BlockType>> {
    blocks
        .iter()
        .map(|b| BlockType::parse(b).ok_or_else(|| err(format!("unknown block type {b:?}"))))
        .collect()
}

fn build_spec(
    approach: &str,
    blocks: &[String],
    f: &str,
    m: Option<f64>,
    normalize: bool,
    diagonal: Option<&str>,
) -> PyResult<ModelSpec> {
    let approach = match approach {
        "binary" => Approach::Binary,
        "valued" => Approach::Valued {
            m: m.ok_or_else(|| err("the valued approach requires m"))?,
        },
        "ss" => Approach::HomogeneitySumSquares,
        "ad" => Approach::HomogeneityAbsoluteDeviations,
        other => return Err(err(format!("unknown approach {other:?}"))),
    };
    let allowed = AllowedBlocks::Global(parse_blocks(blocks)?);
    let mut spec = ModelSpec::new(approach, allowed, parse_f(f)?).with_normalize(normalize);
    if let Some(d) = diagonal {
        let policy = DiagonalPolicy::parse(d)
            .ok_or_else(|| err(format!("unknown diagonal policy {d:?}")))?;
        spec = spec.with_policy(policy);
    }
    Ok(spec)
}

/// A valued one-mode network.
#[pyclass]
#[derive(Clone)]
struct Network {
    inner: blockmodeling::ValuedNetwork,
}

#[pymethods]
impl Network {
    /// Build a network from a square list-of-lists matrix.
    #[new]
    #[pyo3(signature = (matrix, labels=None, diagonal_relevant=false))]
    fn new(
        matrix: Vec<Vec<f64>>,
        labels: Option<Vec<String>>,
        diagonal_relevant: bool,
    ) -> PyResult<Self> {
        let inner =
            blockmodeling::load_network(matrix, labels.unwrap_or_default(), diagonal_relevant)
                .map_err(err)?;
        Ok(Self { inner })
    }

    /// The embedded 13-student notes-borrowing network.
    #[staticmethod]
    fn students() -> Self {
        Self {
            inner: datasets::students(),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn diagonal_relevant(&self) -> bool {
        self.inner.diagonal_relevant()
    }

    fn value(&self, i: usize, j: usize) -> PyResult<f64> {
        if i >= self.inner.n() || j >= self.inner.n() {
            return Err(err("unit index out of range"));
        }
        Ok(self.inner.value(i, j))
    }

    fn to_lists(&self) -> Vec<Vec<f64>> {
        (0..self.inner.n())
            .map(|i| (0..self.inner.n()).map(|j| self.inner.value(i, j)).collect())
            .collect()
    }

    /// Binarize at a threshold: cells at or above it become 1.
    fn slice(&self, threshold: f64) -> PyResult<Network> {
        Ok(Network {
            inner: self.inner.slice(threshold).map_err(err)?,
        })
    }

    /// Cap cell values at a ceiling.
    fn censor(&self, ceiling: f64) -> PyResult<Network> {
        Ok(Network {
            inner: self.inner.censor(ceiling).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Network(n={}, diagonal_relevant={})",
            self.inner.n(),
            self.inner.diagonal_relevant()
        )
    }
}

/// A partition of units into nonempty clusters, kept in canonical form.
#[pyclass(name = "Partition")]
#[derive(Clone)]
struct PyPartition {
    inner: blockmodeling::Partition,
}

#[pymethods]
impl PyPartition {
    #[new]
    fn new(assignment: Vec<usize>) -> PyResult<Self> {
        Ok(Self {
            inner: blockmodeling::Partition::from_assignment(&assignment).map_err(err)?,
        })
    }

    #[getter]
    fn assignment(&self) -> Vec<usize> {
        self.inner.assignment().to_vec()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn clusters(&self) -> Vec<Vec<usize>> {
        self.inner.clusters()
    }

    fn __eq__(&self, other: &PyPartition) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.inner.assignment())
    }
}

/// Evaluation of one partition under one model.
#[pyclass]
struct Fit {
    #[pyo3(get)]
    total: f64,
    #[pyo3(get)]
    image: Vec<Vec<String>>,
    #[pyo3(get)]
    block_inconsistencies: Vec<Vec<f64>>,
    #[pyo3(get)]
    ties: Vec<Vec<Vec<String>>>,
    partition: blockmodeling::Partition,
}

#[pymethods]
impl Fit {
    #[getter]
    fn partition(&self) -> PyPartition {
        PyPartition {
            inner: self.partition.clone(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Fit(total={}, image={:?})", self.total, self.image)
    }
}

fn fit_from(fit: &blockmodeling::FitResult) -> Fit {
    Fit {
        total: fit.total,
        image: fit
            .image
            .iter()
            .map(|row| row.iter().map(|t| t.tag().to_string()).collect())
            .collect(),
        block_inconsistencies: fit.block_inconsistencies.clone(),
        ties: fit
            .ties
            .iter()
            .map(|row| {
                row.iter()
                    .map(|set| set.iter().map(|t| t.tag().to_string()).collect())
                    .collect()
            })
            .collect(),
        partition: fit.partition.clone(),
    }
}

/// Outcome of a partition search.
#[pyclass(name = "SearchResult")]
struct PySearchResult {
    #[pyo3(get)]
    total: f64,
    #[pyo3(get)]
    restarts_reaching_best: usize,
    #[pyo3(get)]
    evaluations: u64,
    best: blockmodeling::FitResult,
    optima: Vec<blockmodeling::Partition>,
}

#[pymethods]
impl PySearchResult {
    #[getter]
    fn best(&self) -> Fit {
        fit_from(&self.best)
    }

    #[getter]
    fn optima(&self) -> Vec<PyPartition> {
        self.optima
            .iter()
            .map(|p| PyPartition { inner: p.clone() })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "SearchResult(total={}, optima={})",
            self.total,
            self.optima.len()
        )
    }
}

fn search_from(res: search::SearchResult) -> PySearchResult {
    PySearchResult {
        total: res.best.total,
        restarts_reaching_best: res.restarts_reaching_best,
        evaluations: res.evaluations,
        best: res.best,
        optima: res.optima,
    }
}

/// Total inconsistency of a partition under a model, with the winning image.
#[pyfunction]
#[pyo3(signature = (net, partition, approach, blocks, f="max", m=None, normalize=false, diagonal=None))]
#[allow(clippy::too_many_arguments)]
fn evaluate(
    net: &Network,
    partition: &PyPartition,
    approach: &str,
    blocks: Vec<String>,
    f: &str,
    m: Option<f64>,
    normalize: bool,
    diagonal: Option<&str>,
) -> PyResult<Fit> {
    let spec = build_spec(approach, &blocks, f, m, normalize, diagonal)?;
    let fit =
        blockmodeling::total_inconsistency(&net.inner, &partition.inner, &spec).map_err(err)?;
    Ok(fit_from(&fit))
}

/// Multi-start steepest-descent search for a minimum-inconsistency
/// partition. Deterministic for a fixed seed.
#[pyfunction]
#[pyo3(signature = (net, k, approach, blocks, f="max", m=None, restarts=100, seed=0, normalize=false, diagonal=None))]
#[allow(clippy::too_many_arguments)]
fn local_search(
    net: &Network,
    k: usize,
    approach: &str,
    blocks: Vec<String>,
    f: &str,
    m: Option<f64>,
    restarts: usize,
    seed: u64,
    normalize: bool,
    diagonal: Option<&str>,
) -> PyResult<PySearchResult> {
    let spec = build_spec(approach, &blocks, f, m, normalize, diagonal)?;
    let config = search::SearchConfig::new(k)
        .with_restarts(restarts)
        .with_seed(seed);
    let res = search::local_search(&net.inner, &spec, &config, None).map_err(err)?;
    Ok(search_from(res))
}

/// Enumerate every k-cluster partition and return the exact optimum.
#[pyfunction]
#[pyo3(signature = (net, k, approach, blocks, f="max", m=None, normalize=false, diagonal=None))]
#[allow(clippy::too_many_arguments)]
fn exhaustive_search(
    net: &Network,
    k: usize,
    approach: &str,
    blocks: Vec<String>,
    f: &str,
    m: Option<f64>,
    normalize: bool,
    diagonal: Option<&str>,
) -> PyResult<PySearchResult> {
    let spec = build_spec(approach, &blocks, f, m, normalize, diagonal)?;
    let res = search::exhaustive_search(&net.inner, &spec, k).map_err(err)?;
    Ok(search_from(res))
}

/// k x k tables of per-block means: (mean_row_f, mean_col_f).
type SummaryTables = (Vec<Vec<f64>>, Vec<Vec<f64>>);

/// Mean row and column f-values per block.
#[pyfunction]
fn block_summaries(
    net: &Network,
    partition: &PyPartition,
    f: &str,
) -> PyResult<SummaryTables> {
    let table =
        summaries::block_summaries(&net.inner, &partition.inner, parse_f(f)?).map_err(err)?;
    Ok((table.mean_row_f, table.mean_col_f))
}

/// Suggest a range for the valued-blockmodeling parameter m.
/// Returns (bimodal, recommended_low, recommended_high, candidates).
#[pyfunction]
#[pyo3(signature = (net, partition=None, f="max", blocks_regular=true, slice_threshold=None))]
fn suggest_m(
    net: &Network,
    partition: Option<&PyPartition>,
    f: &str,
    blocks_regular: bool,
    slice_threshold: Option<f64>,
) -> PyResult<(bool, f64, f64, Vec<f64>)> {
    let suggestion = summaries::suggest_m(
        &net.inner,
        partition.map(|p| &p.inner),
        parse_f(f)?,
        blocks_regular,
        slice_threshold,
    )
    .map_err(err)?;
    let (lo, hi) = match suggestion.recommended {
        summaries::MRange::Interval(lo, hi) => (lo, hi),
        summaries::MRange::Around(x) => (x, x),
    };
    Ok((suggestion.bimodal, lo, hi, suggestion.candidates))
}

/// Exact structural-equivalence check for two distinct units.
#[pyfunction]
fn structural_equivalence(net: &Network, a: usize, b: usize) -> PyResult<bool> {
    equivalence::check_structural_equivalence(&net.inner, a, b).map_err(err)
}

/// Exact f-regular-equivalence check for a partition.
#[pyfunction]
fn f_regular_equivalence(net: &Network, partition: &PyPartition, f: &str) -> PyResult<bool> {
    equivalence::check_f_regular_equivalence(&net.inner, &partition.inner, parse_f(f)?)
        .map_err(err)
}

/// (hom_ss, hom_ad, m_candidates, valued_runs, note).
type WorkflowOutcome = (
    PySearchResult,
    PySearchResult,
    Vec<f64>,
    Vec<(f64, PySearchResult)>,
    Option<String>,
);

/// Homogeneity-first workflow: run both homogeneity variants, derive m
/// candidates, and evaluate valued blockmodeling at each candidate.
#[pyfunction]
#[pyo3(signature = (net, k, f="mean", restarts=100, seed=0))]
fn workflow_preset(
    net: &Network,
    k: usize,
    f: &str,
    restarts: usize,
    seed: u64,
) -> PyResult<WorkflowOutcome> {
    let report =
        workflow::workflow_preset(&net.inner, k, parse_f(f)?, restarts, seed).map_err(err)?;
    Ok((
        search_from(report.hom_ss),
        search_from(report.hom_ad),
        report.m_candidates,
        report
            .valued_runs
            .into_iter()
            .map(|(m, r)| (m, search_from(r)))
            .collect(),
        report.note,
    ))
}

#[pymodule]
fn blockmodeling_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Network>()?;
    m.add_class::<PyPartition>()?;
    m.add_class::<Fit>()?;
    m.add_class::<PySearchResult>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(local_search, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_search, m)?)?;
    m.add_function(wrap_pyfunction!(block_summaries, m)?)?;
    m.add_function(wrap_pyfunction!(suggest_m, m)?)?;
    m.add_function(wrap_pyfunction!(structural_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(f_regular_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(workflow_preset, m)?)?;
    Ok(())
}
