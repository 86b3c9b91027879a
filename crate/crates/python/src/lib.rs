//! Python bindings: a `Calculus` object wrapping one rule set.

pub mod session;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use session::Session;

fn err(e: String) -> PyErr {
    PyValueError::new_err(e)
}

#[pyclass(unsendable)]
pub struct Calculus {
    inner: Session,
}

#[pymethods]
impl Calculus {
    #[new]
    #[pyo3(signature = (case = "I", p1 = "q2", p2 = "1", literal = false))]
    fn new(case: &str, p1: &str, p2: &str, literal: bool) -> PyResult<Self> {
        Ok(Calculus {
            inner: Session::new(case, p1, p2, literal).map_err(err)?,
        })
    }

    fn normalize(&self, expr: &str) -> PyResult<String> {
        self.inner.normalize(expr).map_err(err)
    }

    #[pyo3(signature = (expr, n = 1))]
    fn diff(&self, expr: &str, n: usize) -> PyResult<String> {
        self.inner.diff(expr, n).map_err(err)
    }

    /// Partial derivatives keyed by generator name.
    fn partials<'py>(&self, py: Python<'py>, expr: &str) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (k, v) in self.inner.partials(expr).map_err(err)? {
            d.set_item(k, v)?;
        }
        Ok(d)
    }

    /// A structure matrix (sigma, tau, mu or mutilde) of an expression, as
    /// rows of rendered entries.
    fn matrix(&self, kind: &str, expr: &str) -> PyResult<Vec<Vec<String>>> {
        self.inner.matrix(kind, expr).map_err(err)
    }

    /// Runs a suite (or "all") and returns (passed, report as JSON text).
    #[pyo3(signature = (suite = "all", max_len = 3))]
    fn check(&self, suite: &str, max_len: usize) -> PyResult<(bool, String)> {
        self.inner.check(suite, max_len).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Calculus({})", self.inner.describe())
    }
}

#[pymodule]
fn gradedq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Calculus>()?;
    Ok(())
}
