//! Python bindings for `schlicht`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use schlicht::cli::preset_resolver;
use schlicht::extremals::{self, ConstantsTable};
use schlicht::geometry::{self, ClassSpec};
use schlicht::proof_lab::{self, ProofParams};
use schlicht::{operators, EvaluationGrid, OperatorSpec, TruncatedSeries};

fn err(e: schlicht::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match value {
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
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, to_py(py, v)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialize<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let json = serde_json::to_value(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &json)
}

fn grid(rho_max: f64, angles: usize) -> PyResult<EvaluationGrid> {
    EvaluationGrid::capped(rho_max, angles).map_err(err)
}

/// Truncated power series `sum a_n z^n`, `n = lowest_power ..= order`.
#[pyclass(name = "Series", module = "pyschlicht", frozen)]
struct Series(TruncatedSeries);

#[pymethods]
impl Series {
    #[new]
    #[pyo3(signature = (coeffs, lowest_power = 1, order = None))]
    fn new(coeffs: Vec<Complex64>, lowest_power: usize, order: Option<usize>) -> PyResult<Self> {
        let order = order.unwrap_or(lowest_power + coeffs.len().saturating_sub(1));
        TruncatedSeries::polynomial(lowest_power, &coeffs, order).map(Series).map_err(err)
    }

    /// Parses a coefficient literal such as `"1,0.375"` or the JSON form.
    #[staticmethod]
    #[pyo3(signature = (text, order = 128))]
    fn parse(text: &str, order: usize) -> PyResult<Self> {
        TruncatedSeries::parse_literal(text, order).map(Series).map_err(err)
    }

    /// Named corpus function, e.g. `"koebe"`, `"poly:3"` (needs `level`).
    #[staticmethod]
    #[pyo3(signature = (name, level = None, order = 128))]
    fn preset(name: &str, level: Option<f64>, order: usize) -> PyResult<Self> {
        preset_resolver(name, level, order).map(Series).map_err(err)
    }

    #[getter]
    fn lowest_power(&self) -> usize {
        self.0.lowest_power()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn coeffs(&self) -> Vec<Complex64> {
        self.0.coeffs().to_vec()
    }

    fn coeff(&self, n: usize) -> Complex64 {
        self.0.coeff(n)
    }

    fn evaluate(&self, z: Complex64) -> PyResult<Complex64> {
        self.0.evaluate(z).map_err(err)
    }

    fn differentiate(&self) -> Self {
        Series(self.0.differentiate())
    }

    fn integrate(&self) -> Self {
        Series(self.0.integrate_from_zero())
    }

    fn divide(&self, other: PyRef<'_, Series>) -> PyResult<Self> {
        self.0.divide(&other.0).map(Series).map_err(err)
    }

    fn log(&self) -> PyResult<Self> {
        self.0.log_unit().map(Series).map_err(err)
    }

    fn exp(&self) -> Self {
        Series(self.0.exp_series())
    }

    fn pow(&self, beta: Complex64) -> PyResult<Self> {
        self.0.pow_complex(beta).map(Series).map_err(err)
    }

    /// `z f'/f`
    fn starlike_quotient(&self) -> PyResult<Self> {
        self.0.quotient_starlike().map(Series).map_err(err)
    }

    fn truncate(&self, order: usize) -> PyResult<Self> {
        self.0.truncate(order).map(Series).map_err(err)
    }

    fn is_normalized(&self) -> bool {
        self.0.is_normalized()
    }

    fn to_literal(&self) -> String {
        match self.0.to_shorthand() {
            Some(s) => s,
            None => serde_json::to_string(&self.0.to_literal()).unwrap_or_default(),
        }
    }

    fn __add__(&self, other: PyRef<'_, Series>) -> Self {
        Series(&self.0 + &other.0)
    }

    fn __sub__(&self, other: PyRef<'_, Series>) -> Self {
        Series(&self.0 - &other.0)
    }

    fn __mul__(&self, other: PyRef<'_, Series>) -> Self {
        Series(self.0.multiply(&other.0))
    }

    fn __eq__(&self, other: PyRef<'_, Series>) -> bool {
        self.0 == other.0
    }

    fn __len__(&self) -> usize {
        self.0.coeffs().len()
    }

    fn __repr__(&self) -> String {
        let lit = self.to_literal();
        let shown = if lit.len() > 60 { format!("{}...", &lit[..60]) } else { lit };
        format!("Series({shown}, lowest_power={}, order={})", self.0.lowest_power(), self.0.order())
    }
}

/// Applies an operator literal such as `"bernardi:2"` or `"kim-merkes:0.5"`.
#[pyfunction]
fn apply(op: &str, f: PyRef<'_, Series>) -> PyResult<Series> {
    let spec: OperatorSpec = op.parse().map_err(err)?;
    spec.apply(&f.0).map(Series).map_err(err)
}

#[pyfunction]
fn bernardi(f: PyRef<'_, Series>, c: u32) -> PyResult<Series> {
    operators::bernardi(&f.0, c).map(Series).map_err(err)
}

#[pyfunction]
fn libera(f: PyRef<'_, Series>) -> PyResult<Series> {
    operators::libera(&f.0).map(Series).map_err(err)
}

#[pyfunction]
fn alexander(f: PyRef<'_, Series>) -> PyResult<Series> {
    operators::alexander(&f.0).map(Series).map_err(err)
}

/// Membership scan of `f` in a class literal (`"sm:0.6"`, `"convex"`, ...).
#[pyfunction]
#[pyo3(signature = (f, class_spec, rho_max = 0.99, angles = 4096))]
fn check<'py>(
    py: Python<'py>,
    f: PyRef<'_, Series>,
    class_spec: &str,
    rho_max: f64,
    angles: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let class: ClassSpec = class_spec.parse().map_err(err)?;
    let report = geometry::membership_scan(&f.0, &class, &grid(rho_max, angles)?).map_err(err)?;
    serialize(py, &report)
}

/// Sampled `max |z f'/f - 1|`.
#[pyfunction]
#[pyo3(signature = (f, rho_max = 0.99, angles = 4096))]
fn sm_level(f: PyRef<'_, Series>, rho_max: f64, angles: usize) -> PyResult<f64> {
    geometry::sm_level(&f.0, &grid(rho_max, angles)?).map(|(level, _, _)| level).map_err(err)
}

/// Sampled `min Re(1 + z f''/f')`.
#[pyfunction]
#[pyo3(signature = (f, rho_max = 0.99, angles = 4096))]
fn convexity_margin(f: PyRef<'_, Series>, rho_max: f64, angles: usize) -> PyResult<f64> {
    geometry::convexity_margin(&f.0, &grid(rho_max, angles)?).map(|(m, _, _)| m).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (f, rho = 0.9, angles = 4096))]
fn valence(f: PyRef<'_, Series>, rho: f64, angles: usize) -> PyResult<f64> {
    geometry::valence_integral(&f.0, rho, angles).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (c, m, grid = 1001))]
fn phi_scan<'py>(py: Python<'py>, c: u32, m: f64, grid: usize) -> PyResult<Bound<'py, PyAny>> {
    let params = ProofParams::new(c, m).map_err(err)?;
    serialize(py, &proof_lab::scan_phi_min(&params, grid).map_err(err)?)
}

#[pyfunction]
fn m_threshold(c: u32) -> f64 {
    extremals::m_threshold(c)
}

#[pyfunction]
fn find_m_star() -> PyResult<f64> {
    extremals::find_m_star().map_err(err)
}

#[pyfunction]
fn r_bound(m: f64) -> PyResult<f64> {
    extremals::r_bound(m).map_err(err)
}

#[pyfunction]
fn build_extremal<'py>(py: Python<'py>, m: f64) -> PyResult<Bound<'py, PyAny>> {
    serialize(py, &extremals::build_extremal(m).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (c_max = 5))]
fn constants<'py>(py: Python<'py>, c_max: u32) -> PyResult<Bound<'py, PyAny>> {
    serialize(py, &ConstantsTable::build(c_max).map_err(err)?)
}

#[pymodule]
fn pyschlicht(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Series>()?;
    m.add_function(wrap_pyfunction!(apply, m)?)?;
    m.add_function(wrap_pyfunction!(bernardi, m)?)?;
    m.add_function(wrap_pyfunction!(libera, m)?)?;
    m.add_function(wrap_pyfunction!(alexander, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(sm_level, m)?)?;
    m.add_function(wrap_pyfunction!(convexity_margin, m)?)?;
    m.add_function(wrap_pyfunction!(valence, m)?)?;
    m.add_function(wrap_pyfunction!(phi_scan, m)?)?;
    m.add_function(wrap_pyfunction!(m_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(find_m_star, m)?)?;
    m.add_function(wrap_pyfunction!(r_bound, m)?)?;
    m.add_function(wrap_pyfunction!(build_extremal, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    Ok(())
}
