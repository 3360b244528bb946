//! Python bindings. Triples and cochains cross the boundary as JSON text in
//! the same formats the CLI reads and writes.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use sechoch::cohomology::{self, CohomologyError, Limits, DEFAULT_MAX_COORDINATES};
use sechoch::io;
use sechoch::verify::{self, Suite, VerifyConfig, VerifyError};
use sechoch::{fixtures, operators, Field, TripleContext};

create_exception!(pysechoch, ResourceCapError, PyException);
create_exception!(pysechoch, NotCocycleError, PyException);

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn cohomology_err(e: CohomologyError) -> PyErr {
    match e {
        CohomologyError::ResourceCap { .. } => ResourceCapError::new_err(e.to_string()),
        CohomologyError::NotCocycle { .. } => NotCocycleError::new_err(e.to_string()),
        other => value_err(other),
    }
}

fn triple(text: &str) -> PyResult<TripleContext> {
    io::parse_triple(text).map_err(value_err)
}

/// Canonical JSON of a bundled triple (`T1`..`T5`), over Q or GF(prime).
#[pyfunction]
#[pyo3(signature = (name, prime=None))]
fn fixture(name: &str, prime: Option<u64>) -> PyResult<String> {
    let field = match prime {
        Some(p) => Field::prime(p).map_err(value_err)?,
        None => Field::Rational,
    };
    let ctx = fixtures::by_name(name, field).ok_or_else(|| value_err(format!("unknown fixture `{name}`")))?;
    Ok(io::triple_to_canonical(&ctx))
}

#[pyfunction]
fn triple_id(triple_json: &str) -> PyResult<String> {
    Ok(io::triple_id(&triple(triple_json)?))
}

/// `[(n, dim_C, dim_Z, dim_B, dim_H), ...]` for `n = 0..=max_degree`.
#[pyfunction]
#[pyo3(signature = (triple_json, max_degree, max_coordinates=DEFAULT_MAX_COORDINATES))]
fn cohomology_dims(
    triple_json: &str,
    max_degree: usize,
    max_coordinates: usize,
) -> PyResult<Vec<(usize, usize, usize, usize, usize)>> {
    let ctx = triple(triple_json)?;
    let report = cohomology::cohomology_dims(&ctx, max_degree, &Limits { max_coordinates }).map_err(cohomology_err)?;
    Ok(report
        .degrees
        .iter()
        .map(|d| (d.degree, d.dim_c, d.dim_z, d.dim_b, d.dim_h))
        .collect())
}

#[pyfunction]
#[pyo3(signature = (triple_json, degree, seed=0))]
fn sample_cocycle(triple_json: &str, degree: usize, seed: u64) -> PyResult<String> {
    let ctx = triple(triple_json)?;
    let z = cohomology::sample_cocycle(&ctx, degree, seed).map_err(cohomology_err)?;
    Ok(io::cochain_to_canonical(&z))
}

/// Returns `(all_pass, report_json)`.
#[pyfunction]
#[pyo3(signature = (triple_json, suite="all", n=None, m=None, trials=5, seed=0))]
fn run_verify(
    triple_json: &str,
    suite: &str,
    n: Option<usize>,
    m: Option<usize>,
    trials: usize,
    seed: u64,
) -> PyResult<(bool, String)> {
    let ctx = triple(triple_json)?;
    let suite: Suite = suite.parse().map_err(value_err)?;
    let cfg = VerifyConfig {
        suite,
        degrees: n.zip(m),
        trials,
        seed,
        ..Default::default()
    };
    let report = verify::run(&ctx, &cfg).map_err(|e| match e {
        VerifyError::Cohomology(c) => cohomology_err(c),
        other => value_err(other),
    })?;
    Ok((report.all_pass(), io::canonical(&report.to_json())))
}

/// Returns `(circle_json, bv_json, classes_equal)` for two cocycles.
#[pyfunction]
fn bracket(triple_json: &str, f_json: &str, g_json: &str) -> PyResult<(String, String, bool)> {
    let ctx = triple(triple_json)?;
    let f = io::parse_cochain(&ctx, f_json).map_err(value_err)?;
    let g = io::parse_cochain(&ctx, g_json).map_err(value_err)?;
    let cmp = cohomology::bracket_class_compare(&ctx, &f, &g).map_err(cohomology_err)?;
    let z2 = operators::bv_bracket(&ctx, &f, &g).map_err(value_err)?;
    Ok((io::cochain_to_canonical(&cmp.z1), io::cochain_to_canonical(&z2), cmp.classes_equal()))
}

#[pymodule]
fn pysechoch(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ResourceCapError", m.py().get_type::<ResourceCapError>())?;
    m.add("NotCocycleError", m.py().get_type::<NotCocycleError>())?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(triple_id, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology_dims, m)?)?;
    m.add_function(wrap_pyfunction!(sample_cocycle, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add_function(wrap_pyfunction!(bracket, m)?)?;
    Ok(())
}
