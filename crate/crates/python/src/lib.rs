//! Python bindings: `import loewy`.

use std::sync::Arc;

use loewy_core::partitions as parts;
use loewy_core::partitions::enumerate_partitions;
use loewy_core::theorems::{self, OracleConfig};
use loewy_core::{CharElement, Composition, Error, Prime, StructureConstants};
use num_bigint::BigInt;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Io(_) | Error::Cache(_) => PyOSError::new_err(e.to_string()),
        Error::Inconsistent(_) | Error::Overflow(_) | Error::Singular(_) | Error::NonIntegral => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A composition given either as `"2,1,1"` or as a sequence of ints.
#[derive(FromPyObject)]
enum CompositionArg {
    Text(String),
    Parts(Vec<usize>),
}

impl CompositionArg {
    fn into_composition(self) -> PyResult<Composition> {
        match self {
            CompositionArg::Text(s) => s.parse().map_err(to_py_err),
            CompositionArg::Parts(v) => Composition::new(v).map_err(to_py_err),
        }
    }
}

fn prime(p: u64) -> PyResult<Prime> {
    Prime::new(p).map_err(to_py_err)
}

fn element_to_dict<'py>(py: Python<'py>, x: &CharElement) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (k, c) in x.terms() {
        d.set_item(k.to_string(), c.clone())?;
    }
    Ok(d)
}

fn element_from_dict(n: usize, d: &Bound<'_, PyDict>) -> PyResult<CharElement> {
    let mut terms = Vec::with_capacity(d.len());
    for (k, v) in d.iter() {
        let lambda: Composition = k.extract::<CompositionArg>()?.into_composition()?;
        terms.push((lambda.normalize(), v.extract::<BigInt>()?));
    }
    CharElement::from_terms(n, terms).map_err(to_py_err)
}

/// Partitions of `n` in basis order.
#[pyfunction]
fn partitions(n: usize) -> Vec<Vec<usize>> {
    enumerate_partitions(n)
        .into_iter()
        .map(|l| l.parts().to_vec())
        .collect()
}

#[pyfunction]
fn pi_p(lambda: CompositionArg, p: usize) -> PyResult<usize> {
    Ok(parts::pi_p(lambda.into_composition()?.parts(), p))
}

/// `(j, m)` for a partition and prime.
#[pyfunction]
fn jm(lambda: CompositionArg, p: usize) -> PyResult<(usize, usize)> {
    let pair = parts::jm(lambda.into_composition()?.normalize().parts(), p);
    Ok((pair.j, pair.m))
}

/// `φ_λ φ_μ` as `{"3,1": 2, ...}`.
#[pyfunction]
fn phi_product<'py>(
    py: Python<'py>,
    lambda: CompositionArg,
    mu: CompositionArg,
) -> PyResult<Bound<'py, PyDict>> {
    let (l, m) = (lambda.into_composition()?, mu.into_composition()?);
    let product = loewy_core::phi_product(&l, &m).map_err(to_py_err)?;
    element_to_dict(py, &product)
}

fn config(oracles: bool, slow_tests: bool) -> OracleConfig {
    if oracles {
        OracleConfig::with_slow_tests(slow_tests)
    } else {
        OracleConfig::none()
    }
}

/// Verification report for `(n, p)` as a JSON string.
#[pyfunction]
#[pyo3(signature = (n, p, oracles = true, slow_tests = false))]
fn verify(py: Python<'_>, n: usize, p: u64, oracles: bool, slow_tests: bool) -> PyResult<String> {
    let p = prime(p)?;
    py.detach(|| theorems::verify(n, p, config(oracles, slow_tests)))
        .map(|r| r.to_json())
        .map_err(to_py_err)
}

/// Reports for every `n ≤ max_n` and prime, as a JSON array.
#[pyfunction]
#[pyo3(signature = (max_n, primes, oracles = true, slow_tests = false))]
fn sweep(
    py: Python<'_>,
    max_n: usize,
    primes: Vec<u64>,
    oracles: bool,
    slow_tests: bool,
) -> PyResult<String> {
    let primes = primes
        .into_iter()
        .map(prime)
        .collect::<PyResult<Vec<_>>>()?;
    let reports = py
        .detach(|| theorems::sweep(max_n, &primes, config(oracles, slow_tests)))
        .map_err(to_py_err)?;
    let items: Vec<String> = reports.iter().map(|r| r.to_json()).collect();
    Ok(format!("[{}]", items.join(",")))
}

/// The character ring `R_n` with its φ-basis.
#[pyclass(frozen, module = "loewy")]
struct CharRing {
    sc: Arc<StructureConstants>,
}

#[pymethods]
impl CharRing {
    #[new]
    fn new(py: Python<'_>, n: usize) -> PyResult<Self> {
        let sc = py
            .detach(|| StructureConstants::for_degree(n))
            .map_err(to_py_err)?;
        Ok(CharRing { sc })
    }

    #[getter]
    fn n(&self) -> usize {
        self.sc.n()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.sc.dim()
    }

    fn basis(&self) -> Vec<String> {
        self.sc
            .basis()
            .partitions()
            .iter()
            .map(|l| l.to_string())
            .collect()
    }

    fn product<'py>(
        &self,
        py: Python<'py>,
        lambda: CompositionArg,
        mu: CompositionArg,
    ) -> PyResult<Bound<'py, PyDict>> {
        let basis = self.sc.basis();
        let i = basis
            .position(&lambda.into_composition()?)
            .map_err(to_py_err)?;
        let j = basis.position(&mu.into_composition()?).map_err(to_py_err)?;
        element_to_dict(py, &self.sc.product(i, j))
    }

    /// Product of two elements given as `{partition: coefficient}` dicts.
    fn multiply<'py>(
        &self,
        py: Python<'py>,
        a: &Bound<'py, PyDict>,
        b: &Bound<'py, PyDict>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let n = self.sc.n();
        let (a, b) = (element_from_dict(n, a)?, element_from_dict(n, b)?);
        element_to_dict(py, &self.sc.multiply(&a, &b).map_err(to_py_err)?)
    }

    fn __repr__(&self) -> String {
        format!("CharRing(n={})", self.sc.n())
    }
}

/// `R_n / p R_n` with its radical filtration.
#[pyclass(frozen, name = "FpAlgebra", module = "loewy")]
struct PyFpAlgebra {
    alg: loewy_core::FpAlgebra,
}

#[pymethods]
impl PyFpAlgebra {
    #[new]
    fn new(py: Python<'_>, n: usize, p: u64) -> PyResult<Self> {
        let p = prime(p)?;
        let alg = py
            .detach(|| loewy_core::FpAlgebra::new(n, p))
            .map_err(to_py_err)?;
        Ok(PyFpAlgebra { alg })
    }

    #[getter]
    fn n(&self) -> usize {
        self.alg.n()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.alg.prime().get()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn loewy_length(&self) -> usize {
        self.alg.loewy_length()
    }

    fn layer_dims(&self) -> Vec<usize> {
        self.alg.loewy_series().iter().map(|s| s.dim()).collect()
    }

    /// Pivot partitions of each radical power; these are coordinate
    /// subspaces, so the pivots are a basis.
    fn layers(&self) -> Vec<Vec<String>> {
        let basis = self.alg.basis();
        self.alg
            .loewy_series()
            .iter()
            .map(|s| {
                s.pivots()
                    .iter()
                    .map(|&k| basis.get(k).to_string())
                    .collect()
            })
            .collect()
    }

    fn radical_dim(&self) -> usize {
        self.alg.radical().dim()
    }

    /// `φ_λ φ_μ` reduced mod p, as `{partition: residue}`.
    fn product<'py>(
        &self,
        py: Python<'py>,
        lambda: CompositionArg,
        mu: CompositionArg,
    ) -> PyResult<Bound<'py, PyDict>> {
        let (l, m) = (lambda.into_composition()?, mu.into_composition()?);
        let a = self.alg.reduce(&CharElement::phi(&l)).map_err(to_py_err)?;
        let b = self.alg.reduce(&CharElement::phi(&m)).map_err(to_py_err)?;
        let prod = self.alg.multiply(&a, &b).map_err(to_py_err)?;
        let d = PyDict::new(py);
        for k in prod.support() {
            d.set_item(self.alg.basis().get(k).to_string(), prod.coords()[k])?;
        }
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("FpAlgebra(n={}, p={})", self.alg.n(), self.alg.prime())
    }
}

#[pymodule]
fn loewy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(partitions, m)?)?;
    m.add_function(wrap_pyfunction!(pi_p, m)?)?;
    m.add_function(wrap_pyfunction!(jm, m)?)?;
    m.add_function(wrap_pyfunction!(phi_product, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_class::<CharRing>()?;
    m.add_class::<PyFpAlgebra>()?;
    Ok(())
}
