//! Python bindings. R-matrices are named the same way as on the command
//! line (`glq2`, `identity:N`, `flip:N` or a document path) and documents
//! come back as JSON strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use braidmat::bialg::{verify_bialgebra, Mode, VerifyOptions};
use braidmat::cli::{load_r_source, Outcome};
use braidmat::ncalg::IdealEngine;
use braidmat::presents::{square_iso_witness, Preset};
use braidmat::rmat::{is_biinvertible, ybe_check, RMatrix};

fn r_matrix(source: &str) -> PyResult<RMatrix> {
    load_r_source(source).map_err(|o: Outcome| PyValueError::new_err(o.stderr.trim().to_string()))
}

fn preset(name: &str, copies: usize) -> PyResult<Preset> {
    Preset::parse(name, copies).ok_or_else(|| PyValueError::new_err(format!("unknown preset `{name}`")))
}

fn runtime<E: std::fmt::Display>(e: E) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// True when R satisfies the Yang-Baxter equation.
#[pyfunction]
fn ybe(r: &str) -> PyResult<bool> {
    Ok(ybe_check(&r_matrix(r)?).holds)
}

#[pyfunction]
fn biinvertible(r: &str) -> PyResult<bool> {
    Ok(is_biinvertible(&r_matrix(r)?))
}

/// Presentation document of a preset.
#[pyfunction]
#[pyo3(signature = (preset_name, r, copies = 2))]
fn present(preset_name: &str, r: &str, copies: usize) -> PyResult<String> {
    let p = preset(preset_name, copies)?.build(&r_matrix(r)?).map_err(runtime)?;
    Ok(p.save())
}

#[pyfunction]
#[pyo3(signature = (preset_name, r, poly, copies = 2))]
fn normal_form(preset_name: &str, r: &str, poly: &str, copies: usize) -> PyResult<String> {
    let p = preset(preset_name, copies)?.build(&r_matrix(r)?).map_err(runtime)?;
    let f = p.parse_poly(poly).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let engine = IdealEngine::new(&p, f.degree().unwrap_or(0).max(2)).map_err(runtime)?;
    Ok(p.format_poly(&engine.normal_form(&f).map_err(runtime)?))
}

#[pyfunction]
#[pyo3(signature = (preset_name, r, degree, copies = 2))]
fn hilbert(preset_name: &str, r: &str, degree: usize, copies: usize) -> PyResult<Vec<usize>> {
    let p = preset(preset_name, copies)?.build(&r_matrix(r)?).map_err(runtime)?;
    Ok(IdealEngine::new_unchecked(&p, degree).map_err(runtime)?.hilbert_dims())
}

/// Verification report as JSON.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (preset_name, r, degree = 4, copies = 2, probabilistic = false, seed = 0, points = 3))]
fn verify(
    py: Python<'_>,
    preset_name: &str,
    r: &str,
    degree: usize,
    copies: usize,
    probabilistic: bool,
    seed: u64,
    points: usize,
) -> PyResult<String> {
    let kind = preset(preset_name, copies)?;
    let r = r_matrix(r)?;
    let opts = VerifyOptions {
        bound: degree,
        mode: if probabilistic {
            Mode::Probabilistic { points, seed }
        } else {
            Mode::Exact
        },
        ..VerifyOptions::default()
    };
    let report = py.detach(|| verify_bialgebra(kind, &r, &opts)).map_err(runtime)?;
    Ok(report.to_json())
}

/// `(first_dims, second_dims, equal)` for the tensor square against the two-copy chain.
#[pyfunction]
#[pyo3(signature = (r, degree = 3))]
fn square_iso(r: &str, degree: usize) -> PyResult<(Vec<usize>, Vec<usize>, bool)> {
    let w = square_iso_witness(&r_matrix(r)?, degree).map_err(runtime)?;
    Ok((w.first_dims, w.second_dims, w.equal))
}

/// Runs a command line; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = braidmat::cli::run(std::iter::once("braidmat".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn pybraidmat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(ybe, m)?)?;
    m.add_function(wrap_pyfunction!(biinvertible, m)?)?;
    m.add_function(wrap_pyfunction!(present, m)?)?;
    m.add_function(wrap_pyfunction!(normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(square_iso, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
