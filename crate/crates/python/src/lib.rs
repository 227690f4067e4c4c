//! Python bindings: exponent checks, one-dimensional operators and ratios on
//! sample arrays, constant estimates and the Poisson check.

use pyo3::exceptions::{PyArithmeticError, PyOSError, PyValueError};
use pyo3::prelude::*;
use ::torus_leibniz::harness::{
    self, check_leibniz_conditions, check_product_conditions, ExponentTuple, FunctionFamily, Manifold, Operator,
    ProductTuple, Target,
};
use ::torus_leibniz::transference::{poisson_check, PoissonProfile};
use ::torus_leibniz::{Error, SpectralField, TorusGrid};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Config(_) | Error::Domain(_) | Error::Parse(_) => PyValueError::new_err(e.to_string()),
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        Error::Numeric { .. } | Error::Resource(_) | Error::Singularity => PyArithmeticError::new_err(e.to_string()),
    }
}

fn field(samples: Vec<f64>) -> PyResult<SpectralField> {
    let grid = TorusGrid::new(1, samples.len()).map_err(py_err)?;
    SpectralField::from_real_samples(grid, samples).map_err(py_err)
}

/// Verdict (`case_i` … `case_iv` or `rejected`) for an exponent tuple such
/// as `"s=1,p=4,q=4,r=2"`.
#[pyfunction]
#[pyo3(signature = (tuple, product = false, manifold = "torus"))]
fn exponent_check(tuple: &str, product: bool, manifold: &str) -> PyResult<String> {
    let case = if product {
        let t: ProductTuple = tuple.parse().map_err(py_err)?;
        let m: Manifold = manifold.parse().map_err(py_err)?;
        check_product_conditions(&t, m)
    } else {
        let t: ExponentTuple = tuple.parse().map_err(py_err)?;
        check_leibniz_conditions(&t)
    };
    Ok(case.verdict.to_string())
}

/// `D^s` applied to equispaced samples of a periodic function on `[0, 1)`.
#[pyfunction]
fn fractional_derivative(samples: Vec<f64>, s: f64) -> PyResult<Vec<f64>> {
    Ok(Operator::Homogeneous.apply(&field(samples)?, s).map_err(py_err)?.real_samples())
}

/// `J^s` applied to equispaced samples on `[0, 1)`.
#[pyfunction]
fn bessel_potential(samples: Vec<f64>, s: f64) -> PyResult<Vec<f64>> {
    Ok(Operator::Bessel.apply(&field(samples)?, s).map_err(py_err)?.real_samples())
}

/// Leibniz ratio of two sampled functions on `[0, 1)`.
#[pyfunction]
#[pyo3(signature = (f, g, tuple, op = "D"))]
fn leibniz_ratio(f: Vec<f64>, g: Vec<f64>, tuple: &str, op: &str) -> PyResult<f64> {
    let t: ExponentTuple = tuple.parse().map_err(py_err)?;
    let op: Operator = op.parse().map_err(py_err)?;
    let v = harness::leibniz_ratio(&field(f)?, &field(g)?, &t, op).map_err(py_err)?;
    Ok(v.ratio)
}

/// Product-estimate ratio of two sampled functions on `[0, 1)`.
#[pyfunction]
fn product_ratio(f: Vec<f64>, g: Vec<f64>, tuple: &str) -> PyResult<f64> {
    let t: ProductTuple = tuple.parse().map_err(py_err)?;
    let v = harness::product_ratio(&field(f)?, &field(g)?, &t).map_err(py_err)?;
    Ok(v.ratio)
}

/// Result of an empirical constant estimate.
#[pyclass(get_all, frozen)]
struct Estimate {
    verdict: String,
    best_ratio: f64,
    argmax: String,
    pairs: usize,
    bandwidth_curve: Vec<(usize, f64)>,
    curve_spread: f64,
}

#[pymethods]
impl Estimate {
    fn __repr__(&self) -> String {
        format!(
            "Estimate(verdict={}, best_ratio={:.6e}, pairs={})",
            self.verdict, self.best_ratio, self.pairs
        )
    }
}

/// Largest Leibniz (or product) ratio over the given families and
/// bandwidths, with the running-maximum curve.
#[pyfunction]
#[pyo3(signature = (tuple, families, bandwidths, op = "D", product = false, manifold = "torus"))]
fn estimate_constant(
    tuple: &str,
    families: Vec<String>,
    bandwidths: Vec<usize>,
    op: &str,
    product: bool,
    manifold: &str,
) -> PyResult<Estimate> {
    let target = if product {
        Target::Product {
            tuple: tuple.parse().map_err(py_err)?,
            manifold: manifold.parse().map_err(py_err)?,
        }
    } else {
        Target::Leibniz {
            tuple: tuple.parse().map_err(py_err)?,
            op: op.parse().map_err(py_err)?,
        }
    };
    let fams = families
        .iter()
        .map(|s| s.parse::<FunctionFamily>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    let est = harness::estimate_constant(&target, &fams, &bandwidths).map_err(py_err)?;
    let curve_spread = est.curve_spread();
    Ok(Estimate {
        verdict: est.verdict.to_string(),
        best_ratio: est.best_ratio,
        argmax: est.argmax,
        pairs: est.pairs.len(),
        curve_spread,
        bandwidth_curve: est.bandwidth_curve,
    })
}

/// Largest Poisson-summation residual over the test points.
#[pyfunction]
#[pyo3(signature = (profile, radius, points))]
fn poisson_residual(profile: &str, radius: usize, points: Vec<Vec<f64>>) -> PyResult<f64> {
    let mut profile: PoissonProfile = profile.parse().map_err(py_err)?;
    if let (PoissonProfile::Gaussian { .. }, Some(p)) = (profile, points.first()) {
        profile = PoissonProfile::Gaussian { dim: p.len() };
    }
    Ok(poisson_check(profile, radius, &points).map_err(py_err)?.max_residual)
}

/// Library version and bump-definition hash.
#[pyfunction]
fn provenance() -> String {
    harness::provenance()
}

#[pymodule]
#[pyo3(name = "torus_leibniz")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(exponent_check, m)?)?;
    m.add_function(wrap_pyfunction!(fractional_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_potential, m)?)?;
    m.add_function(wrap_pyfunction!(leibniz_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(product_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_constant, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_residual, m)?)?;
    m.add_function(wrap_pyfunction!(provenance, m)?)?;
    m.add_class::<Estimate>()?;
    Ok(())
}
