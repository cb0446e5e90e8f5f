//! Python bindings. The extension module is importable as `opcalc`.

use std::cell::RefCell;

use ::opcalc as core;
use core::causalfn::{dud, iud};
use core::discrete::{discrete_ft, discrete_lt, inverse_dlt, inverse_series, DiscreteTransform, SeriesSpec};
use core::fractional::{gdi_apply, gl_derivative, halfderivative_table, FracOrder, GdiResult};
use core::ltransform::{concatenation_check, forward_lt, forward_lt_d, inverse_lt};
use core::odesolver::{conflict_report, tlt_solution, total_solution, Evoked, OdeProblem, SolutionBundle};
use core::oracles::{ode_timestep, NumericConfig};
use core::text::{parse_s_expr, parse_time_expr, pretty_causal, pretty_dfunction, render_transform};
use core::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: core::Error) -> PyErr {
    match e {
        core::Error::RootsNotConverged { .. } | core::Error::Numeric(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Causal function `u(t)·f(t)` with impulses and tabulated special terms.
#[pyclass(name = "CausalFunction", module = "opcalc", frozen)]
struct PyCausal(core::CausalFunction);

#[pymethods]
impl PyCausal {
    /// Parses a t-domain expression such as `2*exp(-3 t)*sin(2 t) + delta`.
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        parse_time_expr(expr).map(PyCausal).map_err(err)
    }

    /// Parses the exact line format produced by `to_lines`.
    #[staticmethod]
    fn from_lines(text: &str) -> PyResult<Self> {
        text.parse().map(PyCausal).map_err(err)
    }

    fn to_lines(&self) -> String {
        self.0.to_string()
    }

    /// Smooth part at `t` (impulses and the connect value are ignored).
    fn __call__(&self, t: f64) -> f64 {
        self.0.value(t)
    }

    fn values(&self, ts: Vec<f64>) -> Vec<f64> {
        ts.into_iter().map(|t| self.0.value(t)).collect()
    }

    fn laplace(&self) -> PyResult<PyTransform> {
        forward_lt(&self.0).map(PyTransform).map_err(err)
    }

    /// Generalized derivative of real order `alpha`; negative orders integrate.
    /// Returns a `Transform` when the result has no closed form.
    fn gdi(&self, py: Python<'_>, alpha: f64) -> PyResult<Py<PyAny>> {
        let order = FracOrder::new(alpha).map_err(err)?;
        Ok(match gdi_apply(&self.0, order).map_err(err)? {
            GdiResult::Closed(f) => Py::new(py, PyCausal(f))?.into_any(),
            GdiResult::Symbolic(t) => Py::new(py, PyTransform(t))?.into_any(),
        })
    }

    fn shift(&self, tau: f64) -> PyResult<Self> {
        self.0.shift(tau).map(PyCausal).map_err(err)
    }

    /// Whether `L⁻¹{L{f}}` transforms back to `L{f}`.
    fn concatenation_check(&self) -> PyResult<bool> {
        concatenation_check(&self.0).map(|r| r.passed).map_err(err)
    }

    fn __add__(&self, other: PyRef<'_, PyCausal>) -> Self {
        PyCausal(self.0.add(&other.0))
    }

    fn __mul__(&self, c: f64) -> Self {
        PyCausal(self.0.scale(c))
    }

    fn __rmul__(&self, c: f64) -> Self {
        PyCausal(self.0.scale(c))
    }

    fn __eq__(&self, other: PyRef<'_, PyCausal>) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        pretty_causal(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("CausalFunction('{}')", pretty_causal(&self.0))
    }
}

/// Bilateral function: a finite sum of `c·tᵏ·e^{at}·cos/sin(ωt)` defined for all `t`.
#[pyclass(name = "DFunction", module = "opcalc", frozen)]
struct PyDFunction(core::DFunction);

#[pymethods]
impl PyDFunction {
    /// Parses `dterm:` lines, e.g. `dterm: 1 * cos(2 t)`.
    #[new]
    fn new(lines: &str) -> PyResult<Self> {
        lines.parse().map(PyDFunction).map_err(err)
    }

    fn to_lines(&self) -> String {
        self.0.to_string()
    }

    fn __call__(&self, t: f64) -> f64 {
        self.0.eval(t)
    }

    fn derivative(&self, n: u32) -> Self {
        PyDFunction(self.0.derivative_n(n))
    }

    /// `u(t)·f(t)`.
    fn causal(&self) -> PyCausal {
        PyCausal(self.0.to_causal())
    }

    /// n-th derivative of `u(t)·f(t)`, impulses at the origin included.
    fn dud(&self, n: u32) -> PyCausal {
        PyCausal(dud(&self.0, n))
    }

    /// n-fold integral of `u(t)·f(t)` from 0.
    fn iud(&self, n: u32) -> PyCausal {
        PyCausal(iud(&self.0, n))
    }

    fn laplace(&self) -> PyTransform {
        PyTransform(forward_lt_d(&self.0).into())
    }

    fn __eq__(&self, other: PyRef<'_, PyDFunction>) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        pretty_dfunction(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("DFunction('{}')", pretty_dfunction(&self.0))
    }
}

/// Laplace image: rational parts (possibly delayed, times `s^α`) plus table rows.
#[pyclass(name = "Transform", module = "opcalc", frozen)]
struct PyTransform(core::TransformExpr);

#[pymethods]
impl PyTransform {
    /// Parses an s-domain expression such as `1/(s*(s+3))`.
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        parse_s_expr(expr).map(PyTransform).map_err(err)
    }

    fn __call__(&self, s: Complex64) -> Complex64 {
        self.0.eval(s)
    }

    /// Causal inverse transform.
    fn inverse(&self) -> PyResult<PyCausal> {
        inverse_lt(&self.0).map(PyCausal).map_err(err)
    }

    #[pyo3(signature = (other, rel = 1e-9))]
    fn approx_eq(&self, other: PyRef<'_, PyTransform>, rel: f64) -> bool {
        self.0.approx_eq(&other.0, rel)
    }

    fn __mul__(&self, other: PyRef<'_, PyTransform>) -> PyResult<Self> {
        self.0.mul(&other.0).map(PyTransform).map_err(err)
    }

    fn __add__(&self, other: PyRef<'_, PyTransform>) -> Self {
        PyTransform(self.0.add(&other.0))
    }

    fn __str__(&self) -> String {
        render_transform(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Transform('{}')", render_transform(&self.0))
    }
}

/// Evoked and spontaneous parts of the solution of `Σ aₙy⁽ⁿ⁾ = Σ bₘx⁽ᵐ⁾`.
#[pyclass(name = "Solution", module = "opcalc", frozen)]
struct PySolution {
    problem: OdeProblem,
    bundle: SolutionBundle,
}

#[pymethods]
impl PySolution {
    /// Closed-form evoked part: a `CausalFunction`, a `DFunction` for bilateral
    /// input, or `None` when it was computed numerically.
    #[getter]
    fn evoked(&self, py: Python<'_>) -> PyResult<Option<Py<PyAny>>> {
        Ok(match &self.bundle.evoked {
            Evoked::Closed(f) => Some(Py::new(py, PyCausal(f.clone()))?.into_any()),
            Evoked::Bilateral(fd) => Some(Py::new(py, PyDFunction(fd.clone()))?.into_any()),
            Evoked::Sampled { .. } => None,
        })
    }

    #[getter]
    fn spontaneous(&self) -> PyDFunction {
        PyDFunction(self.bundle.spontaneous.clone())
    }

    #[getter]
    fn impulse_response(&self) -> PyCausal {
        PyCausal(self.bundle.impulse_response.clone())
    }

    /// `y_e(t) + y_s(t)`.
    fn __call__(&self, t: f64) -> f64 {
        self.bundle.total(t)
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.bundle.notes.clone()
    }

    /// Initial values on both sides of the origin.
    fn conflict_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = conflict_report(&self.problem).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("evoked_plus", r.evoked_plus)?;
        d.set_item("spontaneous", r.spontaneous)?;
        d.set_item("total_plus", r.total_plus)?;
        d.set_item("total_minus", r.total_minus)?;
        d.set_item("evoked_impulses", r.evoked_impulses)?;
        d.set_item("conflict", r.conflict)?;
        d.set_item("approximate", r.approximate)?;
        Ok(d)
    }

    /// The traditional formula with total initial values `init`; returns the
    /// result and whether it agrees with this solution for `t > 0`.
    fn traditional(&self, init: Vec<f64>) -> PyResult<(PyCausal, bool)> {
        let tlt = tlt_solution(&self.problem, &init).map_err(err)?;
        let agrees = tlt.agrees_with(&self.bundle, 1e-9).map_err(err)?;
        Ok((PyCausal(tlt.total_tlt), agrees))
    }

    /// Time-stepper samples of `y` at the sorted `times ≥ 0`, started from `y(0+)`.
    fn timestep(&self, times: Vec<f64>) -> PyResult<Vec<f64>> {
        let start = conflict_report(&self.problem).map_err(err)?.total_plus;
        let cfg = NumericConfig { abs_tol: 1e-12, rel_tol: 1e-12, ..NumericConfig::default() };
        let states = ode_timestep(&self.problem, &start, &times, &cfg).map_err(err)?;
        Ok(states.into_iter().map(|s| s[0]).collect())
    }
}

#[derive(FromPyObject)]
enum Input<'py> {
    Causal(PyRef<'py, PyCausal>),
    Bilateral(PyRef<'py, PyDFunction>),
    Text(String),
}

/// Solves `Σ aₙy⁽ⁿ⁾ = Σ bₘx⁽ᵐ⁾` with spontaneous initial values `init`.
/// `x` is a `CausalFunction`, a `DFunction` (input for all t) or an expression.
#[pyfunction]
#[pyo3(signature = (a, b, x, init = None))]
fn solve(a: Vec<f64>, b: Vec<f64>, x: Input<'_>, init: Option<Vec<f64>>) -> PyResult<PySolution> {
    let init = init.unwrap_or_else(|| vec![0.0; a.len().saturating_sub(1)]);
    let problem = match x {
        Input::Causal(f) => OdeProblem::new(a, b, f.0.clone(), init),
        Input::Bilateral(fd) => OdeProblem::new(a, b, fd.0.clone(), init),
        Input::Text(s) => OdeProblem::new(a, b, parse_time_expr(&s).map_err(err)?, init),
    }
    .map_err(err)?;
    let bundle = total_solution(&problem).map_err(err)?;
    Ok(PySolution { problem, bundle })
}

/// Rows of the half-derivative check: name, function, max relative error.
#[pyfunction]
fn halfderivative_errors() -> PyResult<Vec<(String, String, f64)>> {
    let rows = halfderivative_table().map_err(err)?;
    Ok(rows.into_iter().map(|r| (r.name.to_string(), r.function.to_string(), r.max_rel_err)).collect())
}

/// Grünwald–Letnikov derivative of order `alpha` of samples on a grid of step `h` from 0.
#[pyfunction]
fn grunwald_letnikov(samples: Vec<f64>, alpha: f64, h: f64) -> Vec<f64> {
    gl_derivative(&samples, alpha, h)
}

/// Calls a Python function as `Fn(f64) -> f64`, keeping the first error.
fn sampler<'py>(f: &Bound<'py, PyAny>, failure: &'py RefCell<Option<PyErr>>) -> impl Fn(f64) -> f64 + 'py {
    let f = f.clone();
    move |t| match f.call1((t,)).and_then(|v| v.extract::<f64>()) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    }
}

/// Discrete Fourier or Laplace coefficients of a sampled function.
#[pyclass(name = "Spectrum", module = "opcalc", frozen)]
struct PySpectrum {
    transform: DiscreteTransform,
    laplace: bool,
}

#[pymethods]
impl PySpectrum {
    /// `(n, value)` for `n = −N…N`.
    fn coefficients(&self) -> Vec<(i64, Complex64)> {
        self.transform.indices().map(|n| (n, self.transform.get(n))).collect()
    }

    /// Series synthesis at `t`.
    fn __call__(&self, t: f64) -> f64 {
        if self.laplace {
            inverse_dlt(&self.transform, t)
        } else {
            inverse_series(&self.transform, t)
        }
    }
}

fn spectrum(f: &Bound<'_, PyAny>, spec: SeriesSpec, laplace: bool) -> PyResult<PySpectrum> {
    let failure = RefCell::new(None);
    let sample = sampler(f, &failure);
    let transform = if laplace { discrete_lt(sample, &spec) } else { discrete_ft(sample, &spec) }.map_err(err)?;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(PySpectrum { transform, laplace }),
    }
}

/// Fourier coefficients of `f` over one period centred on 0.
#[pyfunction]
fn fourier(f: &Bound<'_, PyAny>, period: f64, n_max: usize) -> PyResult<PySpectrum> {
    spectrum(f, SeriesSpec::new(period, n_max, 0.0).map_err(err)?, false)
}

/// Discrete Laplace coefficients at `σ + inω₀`, integrating over `[0, T/2]`.
#[pyfunction]
fn laplace_series(f: &Bound<'_, PyAny>, period: f64, n_max: usize, sigma: f64) -> PyResult<PySpectrum> {
    spectrum(f, SeriesSpec::new(period, n_max, sigma).map_err(err)?, true)
}

#[pymodule]
#[pyo3(name = "opcalc")]
fn opcalc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCausal>()?;
    m.add_class::<PyDFunction>()?;
    m.add_class::<PyTransform>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(halfderivative_errors, m)?)?;
    m.add_function(wrap_pyfunction!(grunwald_letnikov, m)?)?;
    m.add_class::<PySpectrum>()?;
    m.add_function(wrap_pyfunction!(fourier, m)?)?;
    m.add_function(wrap_pyfunction!(laplace_series, m)?)?;
    Ok(())
}
