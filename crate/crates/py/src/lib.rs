//! Python bindings: exact sequences come back as `fractions.Fraction`,
//! reports as plain dicts.

use apery_forge::diagnostics::{asymptotics as growth, integrality_report};
use apery_forge::hyper::{self, KernelSpec};
use apery_forge::integral::verify_representation_seeded;
use apery_forge::numeric::{format_rational, parse_rational, ExactRational};
use apery_forge::recurrence::{self, RecurrenceSpec};
use apery_forge::suite::{run_suite, Suite, SuiteConfig};
use apery_forge::zeta::{self, AlphaParam, ZFamily};
use apery_forge::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

create_exception!(apery_forge_py, AperyForgeError, PyException);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidParameter(_) | Error::Unsupported(_) => PyValueError::new_err(e.to_string()),
        _ => AperyForgeError::new_err(e.to_string()),
    }
}

fn family(s: &str) -> PyResult<ZFamily> {
    s.parse().map_err(py_err)
}

fn alpha(s: &str) -> PyResult<AlphaParam> {
    AlphaParam::parse(s).map_err(py_err)
}

fn fraction<'py>(py: Python<'py>, q: &ExactRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rational(q),))
}

/// Accepts a `Fraction`, an `int` or a string such as `"3/4"`.
fn rational(x: &Bound<'_, PyAny>) -> PyResult<ExactRational> {
    let s = x.str()?.to_string();
    parse_rational(&s).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let l = PyList::empty(py);
            for x in a {
                l.append(to_py(py, x)?)?;
            }
            l.into_any()
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn report<'py>(py: Python<'py>, r: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(r).map_err(|e| AperyForgeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// A recurrence specialised at a rational α.
#[pyclass(name = "Recurrence", module = "apery_forge_py")]
struct PyRecurrence {
    spec: RecurrenceSpec,
}

#[pymethods]
impl PyRecurrence {
    #[new]
    fn new(family_tag: &str, alpha_str: &str) -> PyResult<Self> {
        let spec = recurrence::make_spec(family(family_tag)?, &alpha(alpha_str)?).map_err(py_err)?;
        Ok(PyRecurrence { spec })
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.spec.family.tag()
    }

    #[getter]
    fn alpha(&self) -> String {
        format_rational(&self.spec.alpha)
    }

    /// `[(u_0, v_0), ..., (u_N, v_N)]`
    fn iterate<'py>(&self, py: Python<'py>, terms: usize) -> PyResult<Vec<(Bound<'py, PyAny>, Bound<'py, PyAny>)>> {
        let seq = self.spec.iterate(terms).map_err(py_err)?;
        seq.rows.iter().map(|r| Ok((fraction(py, &r.u)?, fraction(py, &r.v)?))).collect()
    }

    /// `(P2(n), P1(n), P0(n))`
    fn coefficients_at<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.spec.coefficients_at(n).iter().map(|c| fraction(py, c)).collect()
    }

    fn residual<'py>(
        &self,
        py: Python<'py>,
        prev: &Bound<'py, PyAny>,
        curr: &Bound<'py, PyAny>,
        next: &Bound<'py, PyAny>,
        n: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let r = self.spec.residual(&rational(prev)?, &rational(curr)?, &rational(next)?, n);
        fraction(py, &r)
    }

    /// Characteristic roots as complex floats, larger modulus first.
    fn char_roots(&self) -> PyResult<Vec<(f64, f64)>> {
        let roots = self.spec.char_roots(128).map_err(py_err)?;
        Ok(roots.iter().map(|z| (z.re.to_f64(), z.im.to_f64())).collect())
    }

    fn __repr__(&self) -> String {
        format!("Recurrence({:?}, {:?})", self.spec.family.tag(), format_rational(&self.spec.alpha))
    }
}

/// The rational kernel `Rₙ(t)`.
#[pyclass(name = "Kernel", module = "apery_forge_py")]
struct PyKernel {
    kernel: KernelSpec,
}

#[pymethods]
impl PyKernel {
    #[new]
    fn new(family_tag: &str, n: usize, alpha_str: &str) -> PyResult<Self> {
        let kernel = hyper::build_kernel(family(family_tag)?, n, &alpha(alpha_str)?).map_err(py_err)?;
        Ok(PyKernel { kernel })
    }

    #[getter]
    fn n(&self) -> usize {
        self.kernel.n
    }

    #[getter]
    fn decay(&self) -> u32 {
        self.kernel.decay()
    }

    fn __call__<'py>(&self, py: Python<'py>, t: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.kernel.eval(&rational(t)?).map_err(py_err)?)
    }

    fn check_symmetry(&self) -> PyResult<bool> {
        hyper::check_symmetry(&self.kernel).map_err(py_err)
    }

    /// Rows `j`, columns `k` of the coefficients over `(t − α + k)^(m − j)`.
    fn partial_fractions<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        let t = hyper::partial_fractions(&self.kernel).map_err(py_err)?;
        t.a.iter().map(|row| row.iter().map(|c| fraction(py, c)).collect()).collect()
    }

    /// `(u_n, v_n)` in the kernel normalisation.
    fn extract_uv<'py>(&self, py: Python<'py>) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let t = hyper::partial_fractions(&self.kernel).map_err(py_err)?;
        let (u, v) = hyper::extract_uv(&t).map_err(py_err)?;
        Ok((fraction(py, &u)?, fraction(py, &v)?))
    }
}

/// `Z(α)` as a decimal string with `digits` significant digits.
#[pyfunction]
#[pyo3(signature = (family_tag, alpha_str, eps = 1e-30, digits = 30))]
fn eval_z(family_tag: &str, alpha_str: &str, eps: f64, digits: usize) -> PyResult<String> {
    let a = alpha(alpha_str)?;
    let z = zeta::eval_z(family(family_tag)?, &a, eps).map_err(py_err)?;
    Ok(if a.is_real() {
        z.re.to_decimal(digits)
    } else {
        let im = z.im.to_decimal(digits);
        let sign = if im.starts_with('-') { "" } else { "+" };
        format!("{}{sign}{im}i", z.re.to_decimal(digits))
    })
}

#[pyfunction]
#[pyo3(signature = (eps = 1e-30, digits = 30))]
fn eval_catalan(eps: f64, digits: usize) -> PyResult<String> {
    Ok(zeta::eval_catalan(eps).map_err(py_err)?.to_decimal(digits))
}

/// `rₙ` from the kernel series: `{"r", "err", "u", "v", "method"}`.
#[pyfunction]
#[pyo3(signature = (family_tag, n, alpha_str, eps = 1e-20))]
fn eval_rn_series<'py>(py: Python<'py>, family_tag: &str, n: usize, alpha_str: &str, eps: f64) -> PyResult<Bound<'py, PyAny>> {
    let e = hyper::eval_rn_series(family(family_tag)?, n, &alpha(alpha_str)?, eps).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("r", e.r.to_decimal(30))?;
    d.set_item("err", e.r.err().to_f64())?;
    d.set_item("u", e.u.as_ref().map(|u| fraction(py, u)).transpose()?)?;
    d.set_item("v", e.v.as_ref().map(|v| fraction(py, v)).transpose()?)?;
    d.set_item("method", report(py, &e.method)?)?;
    Ok(d.into_any())
}

#[pyfunction]
#[pyo3(signature = (family_tag, n, alpha_str, eps, seed = 0))]
fn verify_representation<'py>(
    py: Python<'py>,
    family_tag: &str,
    n: usize,
    alpha_str: &str,
    eps: f64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let r = verify_representation_seeded(family(family_tag)?, n, &alpha(alpha_str)?, eps, seed).map_err(py_err)?;
    report(py, &r)
}

/// Runs a named suite (`construction`, `recurrence`, `integral`, `symmetry`, `all`).
#[pyfunction]
#[pyo3(signature = (family_tag, alpha_str, terms, what = "all", tol = None, seed = 0))]
fn verify<'py>(
    py: Python<'py>,
    family_tag: &str,
    alpha_str: &str,
    terms: usize,
    what: &str,
    tol: Option<f64>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = what.parse().map_err(py_err)?;
    let mut cfg = SuiteConfig::new(family(family_tag)?, alpha(alpha_str)?, terms);
    cfg.integral_eps = tol;
    cfg.seed = seed;
    report(py, &run_suite(&cfg, suite).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (family_tag, alpha_str = "0", terms = 200, stride = 10))]
fn asymptotics<'py>(py: Python<'py>, family_tag: &str, alpha_str: &str, terms: usize, stride: usize) -> PyResult<Bound<'py, PyAny>> {
    report(py, &growth(family(family_tag)?, &alpha(alpha_str)?, terms, stride).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (family_tag, alpha_str = "0", terms = 50))]
fn integrality<'py>(py: Python<'py>, family_tag: &str, alpha_str: &str, terms: usize) -> PyResult<Bound<'py, PyAny>> {
    let seq = recurrence::make_spec(family(family_tag)?, &alpha(alpha_str)?)
        .and_then(|s| s.iterate(terms))
        .map_err(py_err)?;
    report(py, &integrality_report(&seq))
}

#[pymodule]
fn apery_forge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRecurrence>()?;
    m.add_class::<PyKernel>()?;
    m.add_function(wrap_pyfunction!(eval_z, m)?)?;
    m.add_function(wrap_pyfunction!(eval_catalan, m)?)?;
    m.add_function(wrap_pyfunction!(eval_rn_series, m)?)?;
    m.add_function(wrap_pyfunction!(verify_representation, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotics, m)?)?;
    m.add_function(wrap_pyfunction!(integrality, m)?)?;
    m.add("AperyForgeError", m.py().get_type::<AperyForgeError>())?;
    m.add("FAMILIES", ZFamily::ALL.map(|f| f.tag()).to_vec())?;
    Ok(())
}
