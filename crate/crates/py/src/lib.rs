//! Python bindings for the frobtau engine. Everything crosses the boundary
//! as plain strings/ints: polynomials and rationals in the same grammar the
//! CLI accepts, ideals as canonical generator lists (reduced deg-lex GB).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use frobtau::{ChainOptions, DivisorSpec, FieldConfig, IdealHandle, JumpSearch, Ratio};

fn err(e: frobtau::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn config(p: u64, d: usize) -> PyResult<FieldConfig> {
    FieldConfig::new(p, d).map_err(err)
}

fn options(p: u64, emax: Option<u32>) -> ChainOptions {
    match emax {
        Some(e) => ChainOptions::new(e),
        None => ChainOptions::for_characteristic(p),
    }
}

fn parse_div(src: &str, p: u64, d: usize) -> PyResult<DivisorSpec> {
    frobtau::parse_divisor(src, p, d).map_err(err)
}

fn ideal_strings(j: &IdealHandle) -> PyResult<Vec<String>> {
    j.canonical_strings().map_err(err)
}

/// f = sum_lambda f_lambda^{p^e} x^lambda; returns [(lambda, f_lambda)].
#[pyfunction]
fn decompose(p: u64, d: usize, e: u32, poly: &str) -> PyResult<Vec<(Vec<u32>, String)>> {
    let cfg = config(p, d)?;
    let f = frobtau::parse_polynomial(poly, cfg.p, cfg.d).map_err(err)?;
    let dec = frobtau::decompose(&f, e).map_err(err)?;
    Ok(dec
        .parts()
        .map(|(lambda, part)| (lambda.components().to_vec(), part.to_string()))
        .collect())
}

/// The e-th trace (mu-part) of a polynomial.
#[pyfunction]
fn trace(p: u64, d: usize, e: u32, poly: &str) -> PyResult<String> {
    let cfg = config(p, d)?;
    let f = frobtau::parse_polynomial(poly, cfg.p, cfg.d).map_err(err)?;
    Ok(frobtau::trace(&f, e).map_err(err)?.to_string())
}

/// p^e-th root ideal of the ideal spanned by `generators`.
#[pyfunction]
fn root_ideal(p: u64, d: usize, e: u32, generators: Vec<String>) -> PyResult<Vec<String>> {
    let cfg = config(p, d)?;
    let gens = generators
        .iter()
        .map(|s| frobtau::parse_polynomial(s, cfg.p, cfg.d))
        .collect::<frobtau::Result<Vec<_>>>()
        .map_err(err)?;
    let j = IdealHandle::new(cfg.p, cfg.d, gens);
    ideal_strings(&frobtau::root_ideal(&j, e).map_err(err)?)
}

/// Reduced deg-lex Groebner basis (the canonical form used for equality).
#[pyfunction]
fn groebner(p: u64, d: usize, generators: Vec<String>) -> PyResult<Vec<String>> {
    let cfg = config(p, d)?;
    let gens = generators
        .iter()
        .map(|s| frobtau::parse_polynomial(s, cfg.p, cfg.d))
        .collect::<frobtau::Result<Vec<_>>>()
        .map_err(err)?;
    ideal_strings(&IdealHandle::new(cfg.p, cfg.d, gens))
}

/// Test ideal of a divisor spec `t1*div(f1); ...`, as a dict with keys
/// generators / stabilized_at / capped.
#[pyfunction]
#[pyo3(signature = (p, d, divisor, emax=None))]
fn test_ideal<'py>(
    py: Python<'py>,
    p: u64,
    d: usize,
    divisor: &str,
    emax: Option<u32>,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = config(p, d)?;
    let delta = parse_div(divisor, cfg.p, cfg.d)?;
    let opts = options(p, emax);
    let report = frobtau::test_ideal_divisor(&cfg, &delta, &opts).map_err(err)?;
    let out = PyDict::new_bound(py);
    out.set_item("generators", ideal_strings(&report.ideal)?)?;
    out.set_item("stabilized_at", report.stabilized_at)?;
    out.set_item("capped", report.capped)?;
    Ok(out)
}

/// nu_f(p^e): largest r with f^r outside the bracket of the maximal ideal.
#[pyfunction]
fn nu(p: u64, d: usize, e: u32, poly: &str) -> PyResult<u64> {
    let cfg = config(p, d)?;
    let f = frobtau::parse_polynomial(poly, cfg.p, cfg.d).map_err(err)?;
    frobtau::nu(&f, e).map_err(err)
}

/// The bracket (nu_e/p^e, (nu_e+1)/p^e] containing the F-pure threshold.
#[pyfunction]
fn fpt_bracket(p: u64, d: usize, e: u32, poly: &str) -> PyResult<(String, String)> {
    let cfg = config(p, d)?;
    let f = frobtau::parse_polynomial(poly, cfg.p, cfg.d).map_err(err)?;
    let (lo, hi) = frobtau::fpt_bracket(&f, e).map_err(err)?;
    Ok((lo.to_string(), hi.to_string()))
}

/// F-jumping numbers of s -> tau(divisor + s*div(g)) on the rational grid
/// of denominators <= max_den in (lo, hi].
#[pyfunction]
#[pyo3(signature = (p, d, poly, max_den, divisor="", lo="0", hi="1", emax=None))]
#[allow(clippy::too_many_arguments)]
fn jump_scan(
    p: u64,
    d: usize,
    poly: &str,
    max_den: u64,
    divisor: &str,
    lo: &str,
    hi: &str,
    emax: Option<u32>,
) -> PyResult<Vec<String>> {
    let cfg = config(p, d)?;
    let g = frobtau::parse_polynomial(poly, cfg.p, cfg.d).map_err(err)?;
    let delta = parse_div(divisor, cfg.p, cfg.d)?;
    let lo = frobtau::parse_ratio(lo).map_err(err)?;
    let hi = frobtau::parse_ratio(hi).map_err(err)?;
    let opts = options(p, emax);
    let jumps = frobtau::jump_scan(&cfg, &delta, &g, (&lo, &hi), max_den, &opts).map_err(err)?;
    Ok(jumps.iter().map(Ratio::to_string).collect())
}

/// Least s in (0,1] with denominator <= max_den where tau(divisor + s*div(g))
/// drops, or None when no jump exists on that grid.
#[pyfunction]
#[pyo3(signature = (p, d, poly, max_den, divisor="", emax=None))]
fn smallest_jumping_number(
    p: u64,
    d: usize,
    poly: &str,
    max_den: u64,
    divisor: &str,
    emax: Option<u32>,
) -> PyResult<Option<String>> {
    let cfg = config(p, d)?;
    let g = frobtau::parse_polynomial(poly, cfg.p, cfg.d).map_err(err)?;
    let delta = parse_div(divisor, cfg.p, cfg.d)?;
    let opts = options(p, emax);
    match frobtau::smallest_jumping_number(&cfg, &delta, &g, max_den, &opts).map_err(err)? {
        JumpSearch::Found(s) => Ok(Some(s.to_string())),
        JumpSearch::NoneUpTo(_) => Ok(None),
    }
}

/// Whether tau(base + pert) equals tau(base).
#[pyfunction]
#[pyo3(signature = (p, d, base, pert, emax=None))]
fn check_perturbation(
    p: u64,
    d: usize,
    base: &str,
    pert: &str,
    emax: Option<u32>,
) -> PyResult<bool> {
    let cfg = config(p, d)?;
    let delta = parse_div(base, cfg.p, cfg.d)?;
    let e = parse_div(pert, cfg.p, cfg.d)?;
    frobtau::check_perturbation(&cfg, &delta, &e, &options(p, emax)).map_err(err)
}

/// tau(divisor) = (1)?
#[pyfunction]
#[pyo3(signature = (p, d, divisor, emax=None))]
fn is_strongly_f_regular(p: u64, d: usize, divisor: &str, emax: Option<u32>) -> PyResult<bool> {
    let cfg = config(p, d)?;
    let delta = parse_div(divisor, cfg.p, cfg.d)?;
    frobtau::is_strongly_f_regular(&cfg, &delta, &options(p, emax)).map_err(err)
}

/// Stability scan: perturb by div(r)/p^n for each probe r and 1 <= n <= nmax.
#[pyfunction]
#[pyo3(signature = (p, d, probes, nmax, divisor="", emax=None))]
fn stability_scan<'py>(
    py: Python<'py>,
    p: u64,
    d: usize,
    probes: Vec<String>,
    nmax: u32,
    divisor: &str,
    emax: Option<u32>,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = config(p, d)?;
    let delta = parse_div(divisor, cfg.p, cfg.d)?;
    let probe_polys = probes
        .iter()
        .map(|s| frobtau::parse_polynomial(s, cfg.p, cfg.d))
        .collect::<frobtau::Result<Vec<_>>>()
        .map_err(err)?;
    let report =
        frobtau::stability_scan(&cfg, &delta, &probe_polys, nmax, &options(p, emax)).map_err(err)?;
    let out = PyDict::new_bound(py);
    out.set_item("base_tau", ideal_strings(&report.base_tau)?)?;
    out.set_item("delta_lower", report.delta_lower.to_string())?;
    let witnesses: Vec<Bound<'py, PyDict>> = report
        .witnesses
        .iter()
        .map(|w| {
            let item = PyDict::new_bound(py);
            item.set_item("probe", w.probe.to_string())?;
            item.set_item("n", w.n)?;
            item.set_item("coefficient", w.coefficient.to_string())?;
            item.set_item("ord", w.ord)?;
            item.set_item("multiplicity", w.multiplicity.to_string())?;
            item.set_item("equal", w.equal)?;
            item.set_item("equal_at_origin", w.equal_at_origin)?;
            Ok(item)
        })
        .collect::<PyResult<_>>()?;
    out.set_item("witnesses", witnesses)?;
    let tails: Vec<(String, Option<u32>)> = report
        .tail_indices
        .iter()
        .map(|(r, n)| (r.to_string(), *n))
        .collect();
    out.set_item("tail_indices", tails)?;
    out.set_item(
        "first_jump",
        report
            .first_jump
            .as_ref()
            .map(|(r, s)| (r.to_string(), s.to_string())),
    )?;
    Ok(out)
}

#[pymodule]
fn frobtau_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(root_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(groebner, m)?)?;
    m.add_function(wrap_pyfunction!(test_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(nu, m)?)?;
    m.add_function(wrap_pyfunction!(fpt_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(jump_scan, m)?)?;
    m.add_function(wrap_pyfunction!(smallest_jumping_number, m)?)?;
    m.add_function(wrap_pyfunction!(check_perturbation, m)?)?;
    m.add_function(wrap_pyfunction!(stability_scan, m)?)?;
    m.add_function(wrap_pyfunction!(is_strongly_f_regular, m)?)?;
    Ok(())
}
