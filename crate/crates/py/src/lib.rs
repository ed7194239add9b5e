//! Python bindings. Reports are returned as canonical JSON strings.

use pyo3::exceptions::{PyMemoryError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use lieforge::cli::{
    cmd_construct, cmd_decompose, cmd_scan, cmd_table, Budget, CliError, DecomposeRequest, Functor, SampleOptions,
    What,
};
use lieforge::report::RunReport;
use lieforge::weights::lie_type_scan;
use lieforge::weights::tables::Table;

fn to_py(e: CliError) -> PyErr {
    match e {
        CliError::Usage(_) | CliError::Format(_) => PyValueError::new_err(e.to_string()),
        CliError::MemoryCap { .. } => PyMemoryError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json(r: Result<RunReport, CliError>) -> PyResult<String> {
    r.map(|r| r.to_canonical_json()).map_err(to_py)
}

fn parse_functor(s: &str) -> PyResult<Functor> {
    match s {
        "ext" => Ok(Functor::Ext),
        "sym" => Ok(Functor::Sym),
        _ => Err(PyValueError::new_err(format!("functor must be 'ext' or 'sym', got {s:?}"))),
    }
}

/// Build and check an algebra; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (target, full = false, samples = 10_000, seed = 42))]
fn construct(py: Python<'_>, target: &str, full: bool, samples: usize, seed: u64) -> PyResult<String> {
    let opts = SampleOptions { full, samples, seed };
    py.detach(|| json(cmd_construct(target, &opts, None, Budget::unlimited())))
}

/// Feasible `n` in `[n_min, n_max]`.
#[pyfunction]
fn feasible_spin(n_min: usize, n_max: usize) -> PyResult<Vec<usize>> {
    lie_type_scan(n_min, n_max).map(|r| r.feasible).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Full scan report as JSON.
#[pyfunction]
fn scan(n_min: usize, n_max: usize) -> PyResult<String> {
    json(cmd_scan(n_min, n_max))
}

fn run_decompose(py: Python<'_>, algebra: &str, rep: &str, power: usize, functor: &str, what: What) -> PyResult<RunReport> {
    let functor = parse_functor(functor)?;
    py.detach(|| {
        let req = DecomposeRequest { algebra, rep, power, functor, what, expect: None };
        cmd_decompose(&req, Budget::unlimited())
    })
    .map_err(to_py)
}

/// Multiplicity of the trivial representation in a power of `rep`.
#[pyfunction]
#[pyo3(signature = (algebra, rep, power, functor = "ext"))]
fn trivial_multiplicity(py: Python<'_>, algebra: &str, rep: &str, power: usize, functor: &str) -> PyResult<i64> {
    let r = run_decompose(py, algebra, rep, power, functor, What::TrivialMult)?;
    r.claims[0].witness["value"].parse().map_err(|_| PyRuntimeError::new_err("malformed report value"))
}

/// Decomposition report as JSON.
#[pyfunction]
#[pyo3(signature = (algebra, rep, power, functor = "ext"))]
fn decompose(py: Python<'_>, algebra: &str, rep: &str, power: usize, functor: &str) -> PyResult<String> {
    Ok(run_decompose(py, algebra, rep, power, functor, What::Full)?.to_canonical_json())
}

/// Table check report; `which` is real, complex, quaternionic or None for all.
#[pyfunction]
#[pyo3(signature = (which = None))]
fn table(py: Python<'_>, which: Option<&str>) -> PyResult<String> {
    let t = match which {
        None | Some("all") => None,
        Some(s) => Some(Table::parse(s).ok_or_else(|| PyValueError::new_err(format!("unknown table {s:?}")))?),
    };
    py.detach(|| json(cmd_table(t)))
}

#[pymodule]
#[pyo3(name = "lieforge")]
fn lieforge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(feasible_spin, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(trivial_multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    Ok(())
}
