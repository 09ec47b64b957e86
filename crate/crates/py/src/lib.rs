//! Python bindings: tangles, ζ and β elements, and the Alexander polynomial.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use kbh::beta::BetaElement;
use kbh::checks::{self, Config};
use kbh::json;
use kbh::letter::Letter;
use kbh::mma::{MmaElement, Sign};
use kbh::tangle;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn label(s: &str) -> PyResult<Letter> {
    Letter::new(s).map_err(err)
}

fn sign(s: &str) -> PyResult<Sign> {
    match s {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        _ => Err(PyValueError::new_err(format!("sign must be '+' or '-', got {s:?}"))),
    }
}

/// A tangle: crossings plus a sewing plan.
#[pyclass(name = "Tangle", frozen)]
struct PyTangle(tangle::Tangle);

#[pymethods]
impl PyTangle {
    /// Parses the line format or its JSON equivalent.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        tangle::Tangle::parse(text).map(PyTangle).map_err(err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(err)?;
        Self::parse(&text)
    }

    fn open_strands(&self) -> Vec<String> {
        self.0.open_strands().iter().map(|l| l.name()).collect()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __str__(&self) -> String {
        self.0.to_text()
    }
}

/// An element of `M(T;H)`: one Lie series per head and a wheel series.
#[pyclass(name = "MmaElement", frozen)]
struct PyMma(MmaElement);

#[pymethods]
impl PyMma {
    #[staticmethod]
    fn generator(sign_: &str, u: &str, x: &str, degree: usize) -> PyResult<Self> {
        Ok(PyMma(MmaElement::generator(sign(sign_)?, label(u)?, label(x)?, degree)))
    }

    #[staticmethod]
    fn unit_t(u: &str, degree: usize) -> PyResult<Self> {
        Ok(PyMma(MmaElement::unit_t(label(u)?, degree)))
    }

    #[staticmethod]
    fn unit_h(x: &str, degree: usize) -> PyResult<Self> {
        Ok(PyMma(MmaElement::unit_h(label(x)?, degree)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        json::mma_from_json(text).map(PyMma).map_err(err)
    }

    fn merge(&self, other: &PyMma) -> PyResult<Self> {
        self.0.merge(&other.0).map(PyMma).map_err(err)
    }

    fn tm(&self, u: &str, v: &str, w: &str) -> PyResult<Self> {
        self.0.tm(label(u)?, label(v)?, label(w)?).map(PyMma).map_err(err)
    }

    fn hm(&self, x: &str, y: &str, z: &str) -> PyResult<Self> {
        self.0.hm(label(x)?, label(y)?, label(z)?).map(PyMma).map_err(err)
    }

    fn tha(&self, u: &str, x: &str) -> PyResult<Self> {
        self.0.tha(label(u)?, label(x)?).map(PyMma).map_err(err)
    }

    fn dm(&self, a: &str, b: &str, c: &str) -> PyResult<Self> {
        self.0.dm(label(a)?, label(b)?, label(c)?).map(PyMma).map_err(err)
    }

    fn t_sigma(&self, u: &str, v: &str) -> PyResult<Self> {
        self.0.t_sigma(label(u)?, label(v)?).map(PyMma).map_err(err)
    }

    fn h_sigma(&self, x: &str, y: &str) -> PyResult<Self> {
        self.0.h_sigma(label(x)?, label(y)?).map(PyMma).map_err(err)
    }

    fn t_eta(&self, u: &str) -> PyResult<Self> {
        self.0.t_eta(label(u)?).map(PyMma).map_err(err)
    }

    fn h_eta(&self, x: &str) -> PyResult<Self> {
        self.0.h_eta(label(x)?).map(PyMma).map_err(err)
    }

    fn truncated(&self, degree: usize) -> Self {
        PyMma(self.0.truncated(degree))
    }

    /// Abelianized wheels as a map from sorted letter tuples to `"p/q"`.
    fn abelianized_wheels<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (w, c) in self.0.omega().abelianize() {
            let key = PyTuple::new(py, w.iter().map(|l| l.name()))?;
            out.set_item(key, c.to_string())?;
        }
        Ok(out)
    }

    fn to_json(&self) -> String {
        json::mma_to_json(&self.0)
    }

    fn __eq__(&self, other: &PyMma) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// An element of the β quotient: `ω` and a matrix of rational functions.
#[pyclass(name = "BetaElement", frozen)]
struct PyBeta(BetaElement);

#[pymethods]
impl PyBeta {
    #[staticmethod]
    fn generator(sign_: &str, u: &str, x: &str) -> PyResult<Self> {
        Ok(PyBeta(BetaElement::generator(sign(sign_)?, label(u)?, label(x)?)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        json::beta_from_json(text).map(PyBeta).map_err(err)
    }

    fn merge(&self, other: &PyBeta) -> PyResult<Self> {
        self.0.merge(&other.0).map(PyBeta).map_err(err)
    }

    fn tm(&self, u: &str, v: &str, w: &str) -> PyResult<Self> {
        self.0.tm(label(u)?, label(v)?, label(w)?).map(PyBeta).map_err(err)
    }

    fn hm(&self, x: &str, y: &str, z: &str) -> PyResult<Self> {
        self.0.hm(label(x)?, label(y)?, label(z)?).map(PyBeta).map_err(err)
    }

    fn tha(&self, u: &str, x: &str) -> PyResult<Self> {
        self.0.tha(label(u)?, label(x)?).map(PyBeta).map_err(err)
    }

    fn dm(&self, a: &str, b: &str, c: &str) -> PyResult<Self> {
        self.0.dm(label(a)?, label(b)?, label(c)?).map(PyBeta).map_err(err)
    }

    fn omega(&self) -> String {
        self.0.omega().to_string()
    }

    fn unit_equiv(&self, other: &PyBeta) -> bool {
        self.0.unit_equiv(&other.0)
    }

    fn to_json(&self) -> String {
        json::beta_to_json(&self.0)
    }

    fn __eq__(&self, other: &PyBeta) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// ζ of a tangle truncated at `degree`.
#[pyfunction]
fn zeta(t: &PyTangle, degree: usize) -> PyResult<PyMma> {
    tangle::zeta_of_tangle(&t.0, degree).map(PyMma).map_err(err)
}

/// ζ^β of a tangle.
#[pyfunction]
fn beta(t: &PyTangle) -> PyResult<PyBeta> {
    tangle::beta_of_tangle(&t.0).map(PyBeta).map_err(err)
}

/// The normalized Alexander polynomial as `(text, {exponent: coefficient})`.
#[pyfunction]
fn alexander(t: &PyTangle) -> PyResult<(String, BTreeMap<i64, String>)> {
    let a = tangle::alexander(&t.0).map_err(err)?;
    let coeffs = a.coeffs().iter().map(|(k, c)| (*k, c.to_string())).collect();
    Ok((a.to_string(), coeffs))
}

/// Runs every identity suite; returns `(name, passed)` pairs.
#[pyfunction]
#[pyo3(signature = (degree = 4, seed = 1, cases = 10))]
fn selftest(degree: usize, seed: u64, cases: usize) -> Vec<(String, bool)> {
    checks::all(Config { degree, seed, cases }).into_iter().map(|o| (o.name.clone(), o.passed())).collect()
}

#[pymodule]
fn kbh_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTangle>()?;
    m.add_class::<PyMma>()?;
    m.add_class::<PyBeta>()?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(alexander, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
