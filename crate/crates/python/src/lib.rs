//! Python module `autosync`: sequences, synchronized functions and oracles.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use autosync::automata::DEFAULT_STATE_CAP;
use autosync::oracles::{FactorKind, FactorTable, PrefixView};
use autosync::sequences;
use autosync::synchro::{self, BuildOptions};
use autosync::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::StateCapExceeded { .. }
        | Error::IterationCapExceeded { .. }
        | Error::Instability { .. }
        | Error::BrokenInvariant { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn options(iter_cap: usize, state_cap: usize) -> BuildOptions {
    BuildOptions { iter_cap, state_cap }
}

/// An automatic sequence given by a DFAO.
#[pyclass(name = "Sequence", frozen)]
struct PySequence {
    inner: sequences::Sequence,
}

#[pymethods]
impl PySequence {
    /// Built-in name or path to a DFAO file.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        sequences::load(spec).map(|inner| PySequence { inner }).map_err(to_py)
    }

    #[staticmethod]
    fn builtins() -> Vec<&'static str> {
        sequences::builtin_names()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn base(&self) -> u32 {
        self.inner.dfao.base()
    }

    fn __getitem__(&self, n: u64) -> u32 {
        self.inner.dfao.output(n)
    }

    fn prefix(&self, len: usize) -> Vec<u32> {
        self.inner.dfao.prefix(len)
    }

    /// Number of distinct length-`n` factors of the given kind, by brute force.
    #[pyo3(signature = (n, kind = "factors"))]
    fn count_naive(&self, n: usize, kind: &str) -> PyResult<u64> {
        let kind = match kind {
            "factors" => FactorKind::Factors,
            "powers" => FactorKind::Powers,
            "primitive" => FactorKind::Primitive,
            "unbordered" => FactorKind::Unbordered,
            other => return Err(PyValueError::new_err(format!("unknown factor kind `{other}`"))),
        };
        Ok(self.table(n)?.count(n, kind))
    }

    /// Starting positions of leftmost occurrences of length-`n` factors.
    fn novel_positions(&self, n: usize) -> PyResult<Vec<usize>> {
        Ok(self.table(n)?.novel_set(n).positions)
    }

    fn appearance_naive(&self, n: usize) -> PyResult<u64> {
        Ok(self.table(n)?.appearance(n))
    }

    fn __repr__(&self) -> String {
        format!("Sequence({:?}, base={})", self.inner.name, self.inner.dfao.base())
    }
}

impl PySequence {
    fn table(&self, n: usize) -> PyResult<FactorTable> {
        FactorTable::build(&PrefixView::from_dfao(&self.inner.name, &self.inner.dfao), n).map_err(to_py)
    }
}

/// Automaton accepting the graph `{(n, f(n))}` in parallel base-k digits.
#[pyclass(name = "SyncFunction", frozen)]
struct PySyncFunction {
    inner: synchro::SyncFunction,
}

#[pymethods]
impl PySyncFunction {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        synchro::SyncFunction::from_text(text).map(|inner| PySyncFunction { inner }).map_err(to_py)
    }

    fn to_text(&self) -> String {
        self.inner.to_text(&[])
    }

    fn __call__(&self, n: u64) -> PyResult<u64> {
        self.inner.eval(n).map_err(to_py)
    }

    /// `(value, edges_visited, padding)`.
    fn eval_traced(&self, n: u64) -> PyResult<(u64, u64, usize)> {
        let (v, s) = self.inner.eval_traced(n).map_err(to_py)?;
        Ok((v, s.edges_visited, s.padding))
    }

    fn check_function_graph(&self, bound: u64) -> PyResult<bool> {
        self.inner.check_function_graph(bound).map_err(to_py)
    }

    /// Min and max of `f(n)/n` over `1..=bound` as `(numerator, denominator)` pairs.
    fn ratio_extremes(&self, bound: u64) -> PyResult<((u64, u64), (u64, u64))> {
        let (lo, hi) = self.inner.ratio_extremes(bound).map_err(to_py)?;
        Ok(((*lo.numer(), *lo.denom()), (*hi.numer(), *hi.denom())))
    }

    #[getter]
    fn num_states(&self) -> usize {
        self.inner.num_states()
    }

    #[getter]
    fn domain_floor(&self) -> u64 {
        self.inner.domain_floor()
    }

    fn __repr__(&self) -> String {
        format!("SyncFunction(base={}, states={})", self.inner.base(), self.inner.num_states())
    }
}

#[pyfunction]
#[pyo3(signature = (seq, iter_cap = 64, state_cap = DEFAULT_STATE_CAP))]
fn subword_complexity(seq: &PySequence, iter_cap: usize, state_cap: usize) -> PyResult<PySyncFunction> {
    synchro::build_rho_sync(&seq.inner.dfao, &options(iter_cap, state_cap))
        .map(|inner| PySyncFunction { inner })
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (seq, iter_cap = 64, state_cap = DEFAULT_STATE_CAP))]
fn appearance(seq: &PySequence, iter_cap: usize, state_cap: usize) -> PyResult<PySyncFunction> {
    synchro::build_appearance_sync(&seq.inner.dfao, &options(iter_cap, state_cap))
        .map(|inner| PySyncFunction { inner })
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (seq, iter_cap = 64, state_cap = DEFAULT_STATE_CAP))]
fn power_count(seq: &PySequence, iter_cap: usize, state_cap: usize) -> PyResult<PySyncFunction> {
    synchro::build_power_count_sync(&seq.inner.dfao, &options(iter_cap, state_cap))
        .map(|inner| PySyncFunction { inner })
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (seq, iter_cap = 64, state_cap = DEFAULT_STATE_CAP))]
fn primitive_count(seq: &PySequence, iter_cap: usize, state_cap: usize) -> PyResult<PySyncFunction> {
    let opts = options(iter_cap, state_cap);
    let rho = synchro::build_rho_sync(&seq.inner.dfao, &opts).map_err(to_py)?;
    let pw = synchro::build_power_count_sync(&seq.inner.dfao, &opts).map_err(to_py)?;
    synchro::build_primitive_count_sync(&rho, &pw).map(|inner| PySyncFunction { inner }).map_err(to_py)
}

/// Number of maximal runs of novel positions for each `n` in `0..=upto`,
/// read from the block-count automaton, and the largest count possible.
#[pyfunction]
#[pyo3(signature = (seq, upto, iter_cap = 64, state_cap = DEFAULT_STATE_CAP))]
fn block_counts(seq: &PySequence, upto: u64, iter_cap: usize, state_cap: usize) -> PyResult<(Vec<u32>, u32)> {
    let opts = options(iter_cap, state_cap);
    let a = synchro::analyze(&seq.inner.dfao, &opts).map_err(to_py)?;
    Ok(((0..=upto).map(|n| a.block_counts.dfao.output(n)).collect(), a.block_counts.bound))
}

/// Runs every cross-check; returns `(name, passed, detail)` triples.
#[pyfunction]
#[pyo3(signature = (seq, nmax = 256))]
fn verify(seq: &PySequence, nmax: usize) -> PyResult<Vec<(String, bool, String)>> {
    let report = autosync::cli::verify(&seq.inner, nmax, &BuildOptions::default()).map_err(to_py)?;
    Ok(report.checks.into_iter().map(|c| (c.name, c.passed, c.detail)).collect())
}

#[pymodule]
#[pyo3(name = "autosync")]
fn autosync_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySequence>()?;
    m.add_class::<PySyncFunction>()?;
    m.add_function(wrap_pyfunction!(subword_complexity, m)?)?;
    m.add_function(wrap_pyfunction!(appearance, m)?)?;
    m.add_function(wrap_pyfunction!(power_count, m)?)?;
    m.add_function(wrap_pyfunction!(primitive_count, m)?)?;
    m.add_function(wrap_pyfunction!(block_counts, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
