//! Python bindings. Structured results come back as plain dicts and lists, built from the
//! same JSON the command-line tool emits; rationals are strings such as `"-11/8"`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use tricubic_core::algebra::Rat;
use tricubic_core::casebook::{reproduce_u50, verify_tetrahedral};
use tricubic_core::local::{certify_adeles, hilbert as hilbert_symbol, Invariant, Place, DEFAULT_DEPTH};
use tricubic_core::surface::{
    brauer_u, brauer_x, classify_galois, discriminant_triple, exceptional_set as exceptional, normalize, CubicInput,
    DepressedSurface,
};
use tricubic_core::{cli, Error};

create_exception!(tricubic_py, TricubicError, PyValueError, "Invalid input or unsupported case.");
create_exception!(tricubic_py, InternalError, PyRuntimeError, "A consistency check failed.");

fn to_py_err(e: Error) -> PyErr {
    match cli::exit_code(&e) {
        2 => TricubicError::new_err(e.to_string()),
        _ => InternalError::new_err(e.to_string()),
    }
}

fn json<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| InternalError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Accept int, `fractions.Fraction` or a string like `"3/4"`.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    let text = obj.str()?.to_string();
    text.trim().parse().map_err(|_| TricubicError::new_err(format!("not a rational number: {text}")))
}

/// The depressed surface `Σ ui^3 + a Σ ui + 3b = n`.
#[pyclass(name = "Surface", frozen)]
struct PySurface {
    inner: DepressedSurface,
}

#[pymethods]
impl PySurface {
    #[new]
    #[pyo3(signature = (a, b, n))]
    fn new(a: BigInt, b: &Bound<'_, PyAny>, n: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PySurface { inner: DepressedSurface::new(a, rational(b)?, rational(n)?) })
    }

    /// Normalise `f(u) = u^3 + a2 u^2 + a1 u + a0` with sum `n`.
    #[staticmethod]
    fn from_cubic(a2: BigInt, a1: BigInt, a0: BigInt, n: BigInt) -> PyResult<Self> {
        normalize(&CubicInput::new(a2, a1, a0, n)).map(|inner| PySurface { inner }).map_err(to_py_err)
    }

    #[getter]
    fn a(&self) -> BigInt {
        self.inner.a().clone()
    }

    #[getter]
    fn d(&self) -> String {
        self.inner.d().to_string()
    }

    #[getter]
    fn n(&self) -> String {
        self.inner.n().to_string()
    }

    fn is_smooth(&self) -> bool {
        self.inner.is_smooth()
    }

    fn resolvents(&self) -> (String, String) {
        let r = self.inner.resolvents();
        (r.f1.to_string(), r.f2.to_string())
    }

    fn discriminants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json(py, &discriminant_triple(&self.inner))
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json(py, &classify_galois(&self.inner).map_err(to_py_err)?)
    }

    fn brauer<'py>(&self, py: Python<'py>) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let x = brauer_x(&self.inner).map_err(to_py_err)?;
        let u = brauer_u(&self.inner).map_err(to_py_err)?;
        Ok((json(py, &x)?, json(py, &u)?))
    }

    fn f1_roots(&self) -> Vec<String> {
        self.inner.f1_roots().iter().map(ToString::to_string).collect()
    }

    fn __repr__(&self) -> String {
        format!("Surface(a={}, d={})", self.inner.a(), self.inner.d())
    }
}

/// Local invariant of `(a, b)` at `place` (`None` for the real place) as 0 or 1/2.
#[pyfunction]
#[pyo3(signature = (a, b, place=None))]
fn hilbert(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, place: Option<BigInt>) -> PyResult<&'static str> {
    let v = match place {
        None => Place::Real,
        Some(p) => Place::finite(p).map_err(to_py_err)?,
    };
    Ok(match hilbert_symbol(&rational(a)?, &rational(b)?, &v).map_err(to_py_err)? {
        Invariant::Zero => "0",
        Invariant::Half => "1/2",
    })
}

#[pyfunction]
#[pyo3(signature = (a2, a1, a0, n, depth=DEFAULT_DEPTH))]
fn analyze<'py>(
    py: Python<'py>,
    a2: BigInt,
    a1: BigInt,
    a0: BigInt,
    n: BigInt,
    depth: u32,
) -> PyResult<Bound<'py, PyAny>> {
    json(py, &cli::analyze(&CubicInput::new(a2, a1, a0, n), depth).map_err(to_py_err)?)
}

#[pyfunction]
#[pyo3(signature = (a2, a1, a0, n, depth=DEFAULT_DEPTH))]
fn certify<'py>(
    py: Python<'py>,
    a2: BigInt,
    a1: BigInt,
    a0: BigInt,
    n: BigInt,
    depth: u32,
) -> PyResult<Bound<'py, PyAny>> {
    json(py, &certify_adeles(&CubicInput::new(a2, a1, a0, n), depth).map_err(to_py_err)?)
}

#[pyfunction]
#[pyo3(signature = (a, b, bound=BigInt::from(10_000)))]
fn exceptional_set<'py>(py: Python<'py>, a: BigInt, b: BigInt, bound: BigInt) -> PyResult<Bound<'py, PyAny>> {
    json(py, &exceptional(&a, &b, &bound).map_err(to_py_err)?)
}

#[pyfunction]
#[pyo3(signature = (a, b, n, root=None))]
fn conic_bundle<'py>(
    py: Python<'py>,
    a: BigInt,
    b: BigInt,
    n: BigInt,
    root: Option<&Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyAny>> {
    let root = root.map(rational).transpose()?;
    json(py, &cli::bundle_report(&a, &b, &n, root.as_ref()).map_err(to_py_err)?)
}

#[pyfunction]
fn tetrahedral<'py>(py: Python<'py>, m: BigInt) -> PyResult<Bound<'py, PyAny>> {
    json(py, &verify_tetrahedral(&m))
}

#[pyfunction]
fn u50<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    json(py, &reproduce_u50())
}

/// Integral points with `|ui| <= bound`, as sorted triples `u1 >= u2 >= u3`.
#[pyfunction]
#[pyo3(signature = (a2, a1, a0, n, bound=100))]
fn search(a2: BigInt, a1: BigInt, a0: BigInt, n: BigInt, bound: i64) -> PyResult<Vec<Vec<BigInt>>> {
    let result = cli::search_box(&CubicInput::new(a2, a1, a0, n), bound).map_err(to_py_err)?;
    Ok(result.points)
}

#[pymodule]
fn tricubic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TricubicError", m.py().get_type::<TricubicError>())?;
    m.add("InternalError", m.py().get_type::<InternalError>())?;
    m.add_class::<PySurface>()?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(exceptional_set, m)?)?;
    m.add_function(wrap_pyfunction!(conic_bundle, m)?)?;
    m.add_function(wrap_pyfunction!(tetrahedral, m)?)?;
    m.add_function(wrap_pyfunction!(u50, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}
