//! Python bindings. Integers cross as Python `int`, exact rationals as
//! `fractions.Fraction`, and rational arguments may be given as `int`,
//! `Fraction` or a string such as `"1/3+1/100"`.

use num_bigint::{BigInt, BigUint};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use copperscope_core::arith::Rat;
use copperscope_core::capacity::{coppersmith_feasibility, ArchKind, LogRadius};
use copperscope_core::cli::parse_rational;
use copperscope_core::coppersmith::{self, Problem, SolveReport};
use copperscope_core::lattice::{self, LatticeBasis};
use copperscope_core::poly::{IntPoly, RatPoly};
use copperscope_core::{binomial, negative, Error};

create_exception!(
    copperscope,
    BoundNotCertified,
    PyException,
    "The requested radius could not be certified."
);

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::BoundNotCertified {
            ref certified_x,
            m,
            t_extra,
        } => BoundNotCertified::new_err((e.to_string(), certified_x.clone(), m, t_extra)),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn rational_arg(v: &Bound<'_, PyAny>) -> PyResult<Rat> {
    parse_rational(&v.str()?.to_string()).map_err(to_py_err)
}

fn fraction<'py>(py: Python<'py>, r: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

fn report_dict<'py>(py: Python<'py>, r: &SolveReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("roots", r.roots.clone())?;
    d.set_item("m", r.m)?;
    d.set_item("t_extra", r.t_extra)?;
    d.set_item("dimension", r.w)?;
    d.set_item("certified_bound", r.radius.clone())?;
    d.set_item("swap_count", r.swap_count)?;
    Ok(d)
}

/// All roots `|x| <= radius` of `f(x) ≡ 0 (mod modulus)`, `f` given
/// constant term first. `m` is chosen automatically when omitted.
#[pyfunction]
#[pyo3(signature = (coeffs, modulus, radius, m = None, t_extra = 0))]
fn solve<'py>(
    py: Python<'py>,
    coeffs: Vec<BigInt>,
    modulus: BigUint,
    radius: BigUint,
    m: Option<usize>,
    t_extra: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let f = IntPoly::new(coeffs);
    let report = py
        .detach(|| match m {
            Some(m) => Problem::new(f, modulus, radius, m, t_extra)
                .and_then(|p| coppersmith::solve_report(&p)),
            None => coppersmith::solve_auto(&f, &modulus, &radius),
        })
        .map_err(to_py_err)?;
    report_dict(py, &report)
}

/// Largest radius certified by the first reduced vector for this `m`.
#[pyfunction]
#[pyo3(signature = (coeffs, modulus, m, t_extra = 0))]
fn max_certified_radius(
    py: Python<'_>,
    coeffs: Vec<BigInt>,
    modulus: BigUint,
    m: usize,
    t_extra: usize,
) -> PyResult<BigUint> {
    let f = IntPoly::new(coeffs);
    py.detach(|| coppersmith::max_certified_radius(&f, &modulus, m, t_extra))
        .map_err(to_py_err)
}

/// Capacity verdict for `f(x) ≡ 0 (mod N)` on the disk or interval of
/// radius `N^radius_exp`, with `f = x^degree`.
#[pyfunction]
#[pyo3(signature = (modulus, degree, radius_exp, arch = "disk"))]
fn capacity<'py>(
    py: Python<'py>,
    modulus: BigUint,
    degree: usize,
    radius_exp: &Bound<'py, PyAny>,
    arch: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let kind = match arch {
        "disk" => ArchKind::Disk,
        "interval" => ArchKind::Interval,
        other => {
            return Err(PyValueError::new_err(format!(
                "arch must be 'disk' or 'interval', got {other:?}"
            )))
        }
    };
    if degree == 0 {
        return Err(PyValueError::new_err("degree must be at least 1"));
    }
    let e = rational_arg(radius_exp)?;
    let f = IntPoly::monomial(BigInt::from(1), degree);
    let v = coppersmith_feasibility(&f, &modulus, &LogRadius::power(modulus.clone(), e), kind)
        .map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("verdict", format!("{:?}", v.status))?;
    d.set_item("capacity", v.capacity.to_string())?;
    d.set_item("ln_capacity", v.capacity.ln())?;
    let factors = PyDict::new(py);
    for (b, x) in v.capacity.factors() {
        factors.set_item(b.clone(), fraction(py, x)?)?;
    }
    d.set_item("factors", factors)?;
    d.set_item("note", v.note)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (tolerance = 1e-9))]
fn solve_q0(tolerance: f64) -> PyResult<f64> {
    binomial::solve_q0(tolerance).map_err(to_py_err)
}

/// Exact `sup |b_{2t+1}(z+t)|` over `|z| <= r`, as a `Fraction`.
#[pyfunction]
fn construction_sup_norm<'py>(
    py: Python<'py>,
    t: usize,
    r: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = rational_arg(r)?;
    let s = binomial::construction_sup_norm(t, &r).map_err(to_py_err)?;
    fraction(py, &s.exact)
}

/// Binomial-basis coordinates of `b_{2t+1}(x+t)`.
#[pyfunction]
fn explicit_construction<'py>(py: Python<'py>, t: usize) -> PyResult<Bound<'py, PyList>> {
    let c = binomial::explicit_construction(t).map_err(to_py_err)?;
    let items = c
        .coeffs()
        .iter()
        .map(|a| fraction(py, a))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

fn rat_poly(coeffs: &[Bound<'_, PyAny>]) -> PyResult<RatPoly> {
    Ok(RatPoly::new(
        coeffs.iter().map(rational_arg).collect::<PyResult<_>>()?,
    ))
}

/// Coordinates `Δ^i h(0)` of a polynomial given constant term first.
#[pyfunction]
fn to_binomial_basis<'py>(
    py: Python<'py>,
    coeffs: Vec<Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyList>> {
    let c = binomial::to_binomial_basis(&rat_poly(&coeffs)?);
    let items = c
        .coeffs()
        .iter()
        .map(|a| fraction(py, a))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

#[pyfunction]
fn is_integer_valued(coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
    Ok(binomial::is_integer_valued(&rat_poly(&coeffs)?))
}

#[pyfunction]
fn minkowski_degree_bound<'py>(
    py: Python<'py>,
    r: &Bound<'py, PyAny>,
    c: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyDict>> {
    let b = binomial::minkowski_degree_bound(&rational_arg(r)?, &rational_arg(c)?)
        .map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("m", b.m)?;
    d.set_item("budget", b.budget)?;
    d.set_item("within_budget", b.within_budget)?;
    d.set_item("ratio", b.ratio)?;
    Ok(d)
}

#[pyfunction]
fn prime_product(m: u64) -> f64 {
    negative::prime_product(m)
}

/// Small-factor analysis for radius `N^{1/d + epsilon}`.
#[pyfunction]
fn analyze_negative<'py>(
    py: Python<'py>,
    modulus: BigUint,
    d: u32,
    epsilon: &Bound<'py, PyAny>,
    m_bound: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let a = negative::analyze(&modulus, d, &rational_arg(epsilon)?, m_bound).map_err(to_py_err)?;
    let out = PyDict::new(py);
    let verdict = match a.verdict {
        negative::NegativeVerdict::ForcesSmallFactor => "forces_small_factor",
        negative::NegativeVerdict::Inconclusive => "inconclusive",
        negative::NegativeVerdict::SmallFactorFound => "small_factor_found",
    };
    out.set_item("verdict", verdict)?;
    out.set_item("small_factor", a.small_factor)?;
    out.set_item("capacity_log", a.capacity_log)?;
    out.set_item("prime_product_log", a.prime_product_log)?;
    out.set_item("product_condition", a.product_condition)?;
    out.set_item("rosser_condition", a.rosser_condition)?;
    out.set_item("constant_condition", a.constant_condition)?;
    Ok(out)
}

type Matrix = Vec<Vec<BigInt>>;

/// LLL-reduce integer rows; returns `(reduced_rows, transform)`.
#[pyfunction]
#[pyo3(signature = (rows, delta = None))]
fn lll_reduce(
    py: Python<'_>,
    rows: Vec<Vec<BigInt>>,
    delta: Option<&Bound<'_, PyAny>>,
) -> PyResult<(Matrix, Matrix)> {
    let delta = match delta {
        Some(d) => rational_arg(d)?,
        None => lattice::default_delta(),
    };
    LatticeBasis::from_integer_rows(rows.clone()).map_err(to_py_err)?;
    let out = py
        .detach(|| lattice::lll_reduce_integer(rows, &delta))
        .map_err(to_py_err)?;
    Ok((out.rows, out.transform))
}

/// Seeded stereotyped-message RSA recovery.
#[pyfunction]
#[pyo3(signature = (bits = 128, seed = 0))]
fn demo_stereotyped_rsa<'py>(
    py: Python<'py>,
    bits: u32,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = py
        .detach(|| coppersmith::demo_stereotyped_rsa(bits, seed))
        .map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("modulus", r.modulus)?;
    d.set_item("exponent", r.exponent)?;
    d.set_item("known_prefix", r.known_prefix)?;
    d.set_item("ciphertext", r.ciphertext)?;
    d.set_item("planted", r.planted)?;
    d.set_item("recovered", r.recovered)?;
    d.set_item("success", r.success)?;
    d.set_item("m", r.m)?;
    d.set_item("dimension", r.w)?;
    d.set_item("certified_bound", r.certified_bound)?;
    Ok(d)
}

#[pymodule]
pub fn copperscope(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BoundNotCertified", m.py().get_type::<BoundNotCertified>())?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(max_certified_radius, m)?)?;
    m.add_function(wrap_pyfunction!(capacity, m)?)?;
    m.add_function(wrap_pyfunction!(solve_q0, m)?)?;
    m.add_function(wrap_pyfunction!(construction_sup_norm, m)?)?;
    m.add_function(wrap_pyfunction!(explicit_construction, m)?)?;
    m.add_function(wrap_pyfunction!(to_binomial_basis, m)?)?;
    m.add_function(wrap_pyfunction!(is_integer_valued, m)?)?;
    m.add_function(wrap_pyfunction!(minkowski_degree_bound, m)?)?;
    m.add_function(wrap_pyfunction!(prime_product, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_negative, m)?)?;
    m.add_function(wrap_pyfunction!(lll_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(demo_stereotyped_rsa, m)?)?;
    Ok(())
}
