//! Python bindings: algebras, series, rational functions, symbols, paths and checks.

use std::collections::BTreeMap;

use ccsym::chen::{self, Form, QuadratureConfig};
use ccsym::parse;
use ccsym::report::CheckReport;
use ccsym::verify;
use ccsym::{
    AlgebraSpec, Backend, Error, ExactElem, FloatElem, LaurentSeries, GaussRat, Scalar,
};
use num_complex::Complex64;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::NotInvertible | Error::NotUnit(_) => PyZeroDivisionError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn report_to_py<'py>(py: Python<'py>, r: &CheckReport) -> PyResult<Bound<'py, PyAny>> {
    json_to_py(py, &serde_json::to_value(r).expect("report serializes"))
}

fn config(steps: usize, tol: f64) -> PyResult<QuadratureConfig> {
    QuadratureConfig::new(steps, tol).map_err(py_err)
}

/// A truncated polynomial algebra `ℂ[gens]/(degree ≥ N)` with a scalar backend.
#[pyclass(frozen, from_py_object, name = "Algebra")]
#[derive(Clone)]
struct PyAlgebra {
    spec: AlgebraSpec,
}

#[pymethods]
impl PyAlgebra {
    #[new]
    #[pyo3(signature = (spec = "gens=;degree=1;scalars=exact"))]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyAlgebra { spec: AlgebraSpec::parse(spec).map_err(py_err)? })
    }

    #[getter]
    fn gens(&self) -> Vec<String> {
        self.spec.signature.gens().to_vec()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.spec.signature.degree()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.spec.signature.dim()
    }

    #[getter]
    fn exact(&self) -> bool {
        self.spec.backend == Backend::Exact
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra('gens={};degree={};scalars={}')",
            self.gens().join(","),
            self.degree(),
            if self.exact() { "exact" } else { "float" }
        )
    }
}

#[derive(Clone)]
enum AnyElem {
    Exact(ExactElem),
    Float(FloatElem),
}

/// An algebra element, exact or floating point.
#[pyclass(frozen, name = "Element")]
struct PyElement {
    value: AnyElem,
}

fn components<S: Scalar>(e: &ccsym::Elem<S>) -> BTreeMap<String, Complex64> {
    let sig = e.signature();
    e.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (sig.monomial_name(k), c.to_c64()))
        .collect()
}

#[pymethods]
impl PyElement {
    /// Nonzero coefficients keyed by monomial name (`"1"`, `"eps"`, `"eps^2"`, …).
    fn components(&self) -> BTreeMap<String, Complex64> {
        match &self.value {
            AnyElem::Exact(e) => components(e),
            AnyElem::Float(e) => components(e),
        }
    }

    fn is_one(&self) -> bool {
        match &self.value {
            AnyElem::Exact(e) => e.is_one(),
            AnyElem::Float(e) => e.is_one(),
        }
    }

    #[getter]
    fn exact(&self) -> bool {
        matches!(self.value, AnyElem::Exact(_))
    }

    fn __str__(&self) -> String {
        match &self.value {
            AnyElem::Exact(e) => e.to_string(),
            AnyElem::Float(e) => e.to_string(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Element('{}')", self.__str__())
    }
}

/// A truncated Laurent series over an algebra, stored exactly.
#[pyclass(frozen, name = "Series")]
struct PySeries {
    series: LaurentSeries<GaussRat>,
    backend: Backend,
}

impl PySeries {
    fn wrap(&self, series: LaurentSeries<GaussRat>) -> Self {
        PySeries { series, backend: self.backend }
    }
}

#[pymethods]
impl PySeries {
    #[new]
    #[pyo3(signature = (text, algebra = None, trunc = 16))]
    fn new(text: &str, algebra: Option<PyAlgebra>, trunc: i64) -> PyResult<Self> {
        let spec = algebra.map(|a| a.spec).unwrap_or_else(AlgebraSpec::trivial);
        let series = parse::parse_series(text, &spec.signature, trunc).map_err(py_err)?;
        Ok(PySeries { series, backend: spec.backend })
    }

    #[getter]
    fn trunc_order(&self) -> i64 {
        self.series.trunc_order()
    }

    fn valuation(&self) -> PyResult<i64> {
        self.series.valuation().map_err(py_err)
    }

    fn coeff(&self, exponent: i64) -> PyElement {
        PyElement { value: AnyElem::Exact(self.series.coeff(exponent)) }
    }

    fn invert(&self) -> PyResult<Self> {
        Ok(self.wrap(self.series.invert().map_err(py_err)?))
    }

    fn __mul__(&self, other: &PySeries) -> PyResult<Self> {
        Ok(self.wrap(self.series.try_mul(&other.series).map_err(py_err)?))
    }

    fn __neg__(&self) -> Self {
        self.wrap(self.series.neg())
    }

    /// Canonical factorization `a₀ x^ν ∏ (1 - a_j x^j)` as a dict.
    fn factorize<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let fac = self.series.factorize().map_err(py_err)?;
        let out = PyDict::new(py);
        out.set_item("nu", fac.nu)?;
        out.set_item("a0", PyElement { value: AnyElem::Exact(fac.a0.clone()) })?;
        let factors = PyDict::new(py);
        for (j, a) in fac.neg_factors.iter().chain(&fac.pos_factors) {
            factors.set_item(j, PyElement { value: AnyElem::Exact(a.clone()) })?;
        }
        out.set_item("factors", factors)?;
        out.set_item("trunc_order", fac.trunc)?;
        Ok(out)
    }

    fn __str__(&self) -> String {
        self.series.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Series('{}')", self.series)
    }
}

/// A rational function on the Riemann sphere with coefficients in an algebra.
#[pyclass(frozen, from_py_object, name = "RationalFunction")]
#[derive(Clone)]
struct PyRationalFunction {
    f: ccsym::RationalFunction,
    backend: Backend,
}

#[pymethods]
impl PyRationalFunction {
    #[new]
    #[pyo3(signature = (text, algebra = None))]
    fn new(text: &str, algebra: Option<PyAlgebra>) -> PyResult<Self> {
        let spec = algebra.map(|a| a.spec).unwrap_or_else(AlgebraSpec::trivial);
        let f = parse::parse_rational_function(text, &spec.signature).map_err(py_err)?;
        Ok(PyRationalFunction { f, backend: spec.backend })
    }

    /// Zeros and poles, as strings (`"inf"` for the point at infinity).
    fn support(&self) -> Vec<String> {
        self.f.support().iter().map(ToString::to_string).collect()
    }

    fn eval(&self, z: Complex64) -> PyResult<PyElement> {
        Ok(PyElement { value: AnyElem::Float(self.f.eval(&z).map_err(py_err)?) })
    }

    /// Laurent expansion in the local uniformizer at `point`.
    #[pyo3(signature = (point, trunc = 16))]
    fn expand_at(&self, point: &str, trunc: i64) -> PyResult<PySeries> {
        let s = parse::parse_sphere_point(point).map_err(py_err)?;
        Ok(PySeries {
            series: self.f.expand_at(&s, trunc).map_err(py_err)?,
            backend: self.backend,
        })
    }

    fn __mul__(&self, other: &PyRationalFunction) -> PyResult<Self> {
        Ok(PyRationalFunction { f: self.f.try_mul(&other.f).map_err(py_err)?, backend: self.backend })
    }

    fn __pow__(&self, e: i64, _modulo: Option<i64>) -> PyResult<Self> {
        Ok(PyRationalFunction { f: self.f.pow(e).map_err(py_err)?, backend: self.backend })
    }

    fn __str__(&self) -> String {
        self.f.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction('{}')", self.f)
    }
}

/// A piecewise path made of segments and circular arcs.
#[pyclass(frozen, skip_from_py_object, name = "Path")]
#[derive(Clone)]
struct PyPath {
    path: chen::Path,
}

#[pymethods]
impl PyPath {
    /// Parses `circle(c,r[,angle])`, `seg(a,b)`, `concat(...)`, `rev(p)`, `comm(p,q)`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyPath { path: parse::parse_path(text).map_err(py_err)? })
    }

    #[getter]
    fn start(&self) -> Complex64 {
        self.path.start()
    }

    #[getter]
    fn end(&self) -> Complex64 {
        self.path.end()
    }

    fn is_closed(&self) -> bool {
        self.path.is_closed()
    }

    fn reverse(&self) -> Self {
        PyPath { path: self.path.reverse() }
    }

    fn then(&self, other: &PyPath) -> PyResult<Self> {
        Ok(PyPath { path: self.path.then(&other.path).map_err(py_err)? })
    }

    fn __str__(&self) -> String {
        self.path.to_string()
    }
}

/// The symbol `⟨f, g⟩` of two series.
#[pyfunction]
fn cc_symbol(f: &PySeries, g: &PySeries) -> PyResult<PyElement> {
    let value = match f.backend {
        Backend::Exact => AnyElem::Exact(ccsym::cc_symbol_series(&f.series, &g.series).map_err(py_err)?.value),
        Backend::Float => AnyElem::Float(
            ccsym::cc_symbol_series(&f.series.to_float(), &g.series.to_float())
                .map_err(py_err)?
                .value,
        ),
    };
    Ok(PyElement { value })
}

/// The local symbol of two rational functions at a point of the sphere.
#[pyfunction]
#[pyo3(signature = (f, g, point, trunc = 16))]
fn local_symbol(f: &PyRationalFunction, g: &PyRationalFunction, point: &str, trunc: i64) -> PyResult<PyElement> {
    let s = parse::parse_sphere_point(point).map_err(py_err)?;
    let (value, _, _) = verify::local_symbol(&f.f, &g.f, &s, trunc).map_err(py_err)?;
    Ok(PyElement { value: AnyElem::Exact(value) })
}

/// The tame symbol of two series over the trivial algebra.
#[pyfunction]
fn tame_symbol(f: &PySeries, g: &PySeries) -> PyResult<Complex64> {
    Ok(ccsym::tame_symbol(&f.series, &g.series).map_err(py_err)?.to_c64())
}

/// Iterated integral `∫_path dlog f₁ ∘ … ∘ dlog f_r`.
#[pyfunction]
#[pyo3(signature = (forms, path, steps = 1024))]
fn iterated_integral(forms: Vec<PyRationalFunction>, path: &PyPath, steps: usize) -> PyResult<PyElement> {
    let forms: Vec<Form> = forms.into_iter().map(|f| Form::Dlog(f.f)).collect();
    let v = chen::iterated_integral(&forms, &path.path, &config(steps, 1e-8)?).map_err(py_err)?;
    Ok(PyElement { value: AnyElem::Float(v) })
}

/// Parallel transport of `dlog fᵢ` along a path, keyed by word strings like `"0,1"`.
#[pyfunction]
#[pyo3(signature = (forms, path, max_len = 2, steps = 1024))]
fn transport(
    forms: Vec<PyRationalFunction>,
    path: &PyPath,
    max_len: usize,
    steps: usize,
) -> PyResult<BTreeMap<String, PyElement>> {
    let forms: Vec<Form> = forms.into_iter().map(|f| Form::Dlog(f.f)).collect();
    let series = chen::transport(&forms, &path.path, max_len, &config(steps, 1e-8)?).map_err(py_err)?;
    Ok(series
        .terms()
        .map(|(w, c)| {
            let key = w.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            (key, PyElement { value: AnyElem::Float(c.clone()) })
        })
        .collect())
}

#[pyfunction]
#[pyo3(signature = (f, g, trunc = 16))]
fn verify_weil<'py>(
    py: Python<'py>,
    f: &PyRationalFunction,
    g: &PyRationalFunction,
    trunc: i64,
) -> PyResult<Bound<'py, PyAny>> {
    report_to_py(py, &verify::weil_reciprocity_check(&f.f, &g.f, trunc).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (f, g, point, base, radius, trunc = 16, steps = 2048, tol = 1e-6))]
#[allow(clippy::too_many_arguments)]
fn verify_main_theorem<'py>(
    py: Python<'py>,
    f: &PyRationalFunction,
    g: &PyRationalFunction,
    point: &str,
    base: &str,
    radius: f64,
    trunc: i64,
    steps: usize,
    tol: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let s = parse::parse_sphere_point(point).map_err(py_err)?;
    let base = parse::parse_point(base).map_err(py_err)?;
    let r = verify::main_theorem_check(&f.f, &g.f, &s, &base, radius, trunc, &config(steps, tol)?)
        .map_err(py_err)?;
    report_to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (f, g, base, steps = 1024, tol = 1e-6))]
fn verify_bilinear<'py>(
    py: Python<'py>,
    f: &PyRationalFunction,
    g: &PyRationalFunction,
    base: &str,
    steps: usize,
    tol: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let base = parse::parse_point(base).map_err(py_err)?;
    let r = verify::bilinear_reciprocity_check(&f.f, &g.f, &base, &config(steps, tol)?).map_err(py_err)?;
    report_to_py(py, &r)
}

/// `∫ dx/x ∘ … ∘ dx/x` over a circle of the given radius, as a check report.
#[pyfunction]
#[pyo3(signature = (r, radius = 0.5, steps = 1024, tol = 1e-8))]
fn verify_powers_of_dlog_x<'py>(
    py: Python<'py>,
    r: usize,
    radius: f64,
    steps: usize,
    tol: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let l = verify::Lemma::PowersOfDlogX { r, radius };
    report_to_py(py, &verify::lemma_check(&l, &config(steps, tol)?).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (steps = 1024, tol = 1e-8))]
fn verify_identities<'py>(py: Python<'py>, steps: usize, tol: f64) -> PyResult<Vec<Bound<'py, PyAny>>> {
    chen::identity_suite(&config(steps, tol)?)
        .map_err(py_err)?
        .iter()
        .map(|r| report_to_py(py, r))
        .collect()
}

#[pymodule]
fn ccsym_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PySeries>()?;
    m.add_class::<PyRationalFunction>()?;
    m.add_class::<PyPath>()?;
    m.add_function(wrap_pyfunction!(cc_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(local_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(tame_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(iterated_integral, m)?)?;
    m.add_function(wrap_pyfunction!(transport, m)?)?;
    m.add_function(wrap_pyfunction!(verify_weil, m)?)?;
    m.add_function(wrap_pyfunction!(verify_main_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(verify_bilinear, m)?)?;
    m.add_function(wrap_pyfunction!(verify_powers_of_dlog_x, m)?)?;
    m.add_function(wrap_pyfunction!(verify_identities, m)?)?;
    Ok(())
}
