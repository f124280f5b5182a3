//! Python bindings. Rationals cross the boundary as strings such as `"-3/4"`;
//! reports come back as the same dictionaries the CLI prints.

use num_bigint::BigInt;
use orbit_core::algebraic::{multiplicative_dependence, AlgebraicNumber, Dependence};
use orbit_core::arith::{factor_over_rationals, format_rational, parse_rational, Rational, UnivariatePoly};
use orbit_core::classify::classify as classify_map;
use orbit_core::io::{
    density_report_to_json, growth_report_to_json, invariant_check_to_json, orbit_point_to_json, split_point,
    verdict_from_json, verdict_to_json, witness_point_from, ProblemSpec,
};
use orbit_core::linalg::{char_poly as characteristic_polynomial, QMatrix, ZMatrix};
use orbit_core::symbolic::{evaluate_orbit as orbit_points, OrbitPoint};
use orbit_core::verify::{check_verdict, density_check_with, growth_check as growth, DensityOptions, VerdictCheck};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts through Python's `json` module so callers get plain dicts and lists.
fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (v.to_string(),))?.unbind())
}

fn rationals(v: &[String]) -> PyResult<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s).map_err(err)).collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn spec(text: &str) -> PyResult<ProblemSpec> {
    ProblemSpec::from_json(text).map_err(err)
}

/// Verdict for a problem given as JSON text.
#[pyfunction]
#[pyo3(signature = (spec_json, bound=None))]
fn classify(py: Python<'_>, spec_json: &str, bound: Option<u32>) -> PyResult<Py<PyAny>> {
    let s = spec(spec_json)?;
    let v = classify_map(&s.endomorphism, bound.unwrap_or(s.options.bound)).map_err(err)?;
    to_py(py, &verdict_to_json(&v))
}

/// Checks a verdict (JSON text) against a problem; returns `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (spec_json, verdict_json, degree=None, steps=None))]
fn verify(
    py: Python<'_>,
    spec_json: &str,
    verdict_json: &str,
    degree: Option<u32>,
    steps: Option<usize>,
) -> PyResult<(bool, Py<PyAny>)> {
    let s = spec(spec_json)?;
    let raw: Value = serde_json::from_str(verdict_json).map_err(err)?;
    let v = verdict_from_json(&raw, s.space()).map_err(err)?;
    let check = check_verdict(&s.endomorphism, &v, degree.unwrap_or(s.options.degree), steps.unwrap_or(s.options.steps))
        .map_err(err)?;
    let report = match &check {
        VerdictCheck::Invariant(c) => invariant_check_to_json(c),
        VerdictCheck::Density(r) => density_report_to_json(r),
    };
    Ok((check.passed(), to_py(py, &report)?))
}

/// Content and `(coefficients, multiplicity)` pairs.
type Factorization = (String, Vec<(Vec<String>, u32)>);

/// Factors a polynomial given by coefficients, constant term first.
/// Returns the content and `(factor coefficients, multiplicity)` pairs.
#[pyfunction]
fn factor(coeffs: Vec<String>) -> PyResult<Factorization> {
    let f = factor_over_rationals(&UnivariatePoly::from_coeffs(rationals(&coeffs)?)).map_err(err)?;
    let factors = f.factors.iter().map(|(g, m)| (strings(g.coeffs()), *m)).collect();
    Ok((format_rational(&f.content), factors))
}

/// Characteristic polynomial `det(x I - A)`, constant term first.
#[pyfunction]
fn char_poly(rows: Vec<Vec<String>>) -> PyResult<Vec<String>> {
    let rows = rows.iter().map(|r| rationals(r)).collect::<PyResult<Vec<_>>>()?;
    let a = QMatrix::from_rows(rows).map_err(err)?;
    Ok(strings(characteristic_polynomial(&a).map_err(err)?.coeffs()))
}

#[pyfunction]
fn growth_check(py: Python<'_>, rows: Vec<Vec<i64>>, vector: Vec<i64>, steps: usize) -> PyResult<Py<PyAny>> {
    let a = ZMatrix::from_i64(&rows).map_err(err)?;
    let v: Vec<BigInt> = vector.into_iter().map(BigInt::from).collect();
    to_py(py, &growth_report_to_json(&growth(&a, &v, steps).map_err(err)?))
}

/// Rank test along the orbit of `point` (additive coordinates first, torus
/// coordinates positive integers).
#[pyfunction]
#[pyo3(signature = (spec_json, point, degree=None, steps=None))]
fn density_check(
    py: Python<'_>,
    spec_json: &str,
    point: Vec<String>,
    degree: Option<u32>,
    steps: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let s = spec(spec_json)?;
    let alpha = witness_point_from(rationals(&point)?, s.space()).map_err(err)?;
    let mut opts = DensityOptions::default();
    if let Some(seed) = s.options.seed {
        opts.seed = seed;
    }
    let r = density_check_with(&s.endomorphism, &alpha, degree.unwrap_or(s.options.degree), steps.unwrap_or(s.options.steps), &opts)
        .map_err(err)?;
    to_py(py, &density_report_to_json(&r))
}

/// The points `point, phi(point), ..., phi^steps(point)`.
#[pyfunction]
fn evaluate_orbit(py: Python<'_>, spec_json: &str, point: Vec<String>, steps: usize) -> PyResult<Vec<Py<PyAny>>> {
    let s = spec(spec_json)?;
    let (additive, torus) = split_point(rationals(&point)?, s.space()).map_err(err)?;
    let alpha = OrbitPoint::new(additive, torus).map_err(err)?;
    orbit_points(&s.endomorphism, &alpha, steps)
        .map_err(err)?
        .iter()
        .map(|p| to_py(py, &orbit_point_to_json(p)))
        .collect()
}

/// A multiplicative relation among nonzero rationals, or `None` if they are independent.
#[pyfunction]
#[pyo3(signature = (values, bound=20))]
fn dependence(values: Vec<String>, bound: u32) -> PyResult<Option<Vec<i64>>> {
    let nums: Vec<AlgebraicNumber> = rationals(&values)?.into_iter().map(AlgebraicNumber::from_rational).collect();
    Ok(match multiplicative_dependence(&nums, bound).map_err(err)? {
        Dependence::Dependent(w) => Some(w.exponents().to_vec()),
        _ => None,
    })
}

#[pymodule]
fn orbit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(char_poly, m)?)?;
    m.add_function(wrap_pyfunction!(growth_check, m)?)?;
    m.add_function(wrap_pyfunction!(density_check, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(dependence, m)?)?;
    Ok(())
}
