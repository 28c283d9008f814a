//! Python bindings: test functions, geometries, spectra, spectral actions,
//! slow-roll tables and the verification report.

use dirac_core::clifford::{run_verification, VerifyOptions};
use dirac_core::inflation::{self, SlowRollConfig, SlowRollPoint};
use dirac_core::rep_theory::{self, Weight};
use dirac_core::spectral_action as sa;
use dirac_core::spectrum::{self, Provenance, SpectrumQuery};
use dirac_core::test_function;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: dirac_core::Error) -> PyErr {
    if e.is_numerical() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for dirac_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

/// Cutoff test function: `gaussian`, `polyexp:c0,c1,...` or `plateau:c,w`.
#[pyclass(frozen, module = "dirac_spectra")]
struct TestFunction(test_function::TestFunction);

#[pymethods]
impl TestFunction {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        spec.parse().map(TestFunction).py()
    }

    #[staticmethod]
    fn gaussian() -> Self {
        TestFunction(test_function::TestFunction::gaussian())
    }

    /// h(x) = P(pi x) exp(-pi x) with P given by its coefficients.
    #[staticmethod]
    fn poly_exp(coeffs: Vec<f64>) -> PyResult<Self> {
        test_function::TestFunction::poly_exp(coeffs).map(TestFunction).py()
    }

    #[staticmethod]
    fn plateau(c: f64, w: f64) -> PyResult<Self> {
        test_function::TestFunction::plateau(c, w).map(TestFunction).py()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind_name()
    }

    fn __call__(&self, x: f64) -> f64 {
        self.0.value(x)
    }

    fn integral(&self) -> PyResult<f64> {
        self.0.integral().py()
    }

    fn first_moment(&self) -> PyResult<f64> {
        self.0.first_moment().py()
    }

    fn __repr__(&self) -> String {
        format!("TestFunction('{}')", self.0)
    }
}

#[pyclass(frozen, module = "dirac_spectra")]
struct ProductGeometry(sa::ProductGeometry);

#[pymethods]
impl ProductGeometry {
    #[new]
    #[pyo3(signature = (a, beta, t, lam, s = 0.0))]
    fn new(a: f64, beta: f64, t: f64, lam: f64, s: f64) -> PyResult<Self> {
        sa::ProductGeometry::new(a, beta, s, t, lam).map(ProductGeometry).py()
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.0.beta
    }

    #[getter]
    fn s(&self) -> f64 {
        self.0.s
    }

    #[getter]
    fn t(&self) -> f64 {
        self.0.t
    }

    #[getter]
    fn lam(&self) -> f64 {
        self.0.lambda
    }

    fn __repr__(&self) -> String {
        let g = &self.0;
        format!(
            "ProductGeometry(a={}, beta={}, t={}, lam={}, s={})",
            g.a, g.beta, g.t, g.lambda, g.s
        )
    }
}

#[pyclass(frozen, get_all, module = "dirac_spectra")]
struct ActionResult {
    value: f64,
    method: &'static str,
    tail_bound: f64,
    term_count: u64,
}

#[pymethods]
impl ActionResult {
    fn __repr__(&self) -> String {
        format!(
            "ActionResult(value={}, method='{}', tail_bound={:e}, term_count={})",
            self.value, self.method, self.tail_bound, self.term_count
        )
    }
}

impl From<sa::ActionResult> for ActionResult {
    fn from(r: sa::ActionResult) -> Self {
        ActionResult {
            value: r.value,
            method: match r.method {
                sa::Method::Direct => "direct",
                sa::Method::Asymptotic => "asymptotic",
            },
            tail_bound: r.tail_bound,
            term_count: r.term_count,
        }
    }
}

#[pyfunction]
fn connection_factor(t: f64) -> f64 {
    rep_theory::connection_factor(t)
}

/// SU(2) spectrum of D_t^2 as (n, eigenvalue, multiplicity) tuples. Pass
/// `emax` for an eigenvalue cutoff, otherwise n runs over [nmin, nmax].
#[pyfunction]
#[pyo3(signature = (t, nmax = 10, nmin = None, emax = None))]
fn su2_spectrum(t: f64, nmax: i64, nmin: Option<i64>, emax: Option<f64>) -> PyResult<Vec<(i64, f64, u64)>> {
    let query = match emax {
        Some(e) => SpectrumQuery::cutoff(e),
        None => SpectrumQuery::window(nmin.unwrap_or(-nmax - 2), nmax),
    }
    .py()?;
    Ok(spectrum::su2_spectrum(t, query)
        .py()?
        .filter_map(|l| l.index().map(|n| (n, l.eigenvalue, l.multiplicity)))
        .collect())
}

/// T_t eigenvalues on V_rho (x) V_(p,q) for SU(3) as
/// (sign, gamma, eigenvalue, multiplicity).
#[pyfunction]
fn su3_lines(t: f64, p: u32, q: u32) -> PyResult<Vec<(String, String, f64, u64)>> {
    Ok(spectrum::su3_tt_lines(t, Weight::su3(p, q))
        .py()?
        .into_iter()
        .filter_map(|l| match l.provenance {
            Provenance::Su3 { gamma, sign, .. } => Some((
                sign.as_char().to_string(),
                gamma.to_string(),
                l.eigenvalue,
                l.multiplicity,
            )),
            Provenance::Su2 { .. } => None,
        })
        .collect())
}

#[pyfunction]
#[pyo3(signature = (t, lam, f, tail_eps = sa::DEFAULT_TAIL_EPS))]
fn trace_direct_su2(t: f64, lam: f64, f: &TestFunction, tail_eps: f64) -> PyResult<ActionResult> {
    sa::trace_direct_su2(t, lam, &f.0, tail_eps).map(Into::into).py()
}

#[pyfunction]
fn trace_asymptotic_su2(t: f64, lam: f64, f: &TestFunction) -> PyResult<ActionResult> {
    sa::trace_asymptotic_su2(t, lam, &f.0).map(Into::into).py()
}

#[pyfunction]
#[pyo3(signature = (geom, h, tail_eps = sa::DEFAULT_TAIL_EPS))]
fn product_trace_direct(geom: &ProductGeometry, h: &TestFunction, tail_eps: f64) -> PyResult<ActionResult> {
    sa::product_trace_direct(&geom.0, &h.0, tail_eps).map(Into::into).py()
}

#[pyfunction]
fn product_trace_asymptotic(geom: &ProductGeometry, h: &TestFunction) -> PyResult<ActionResult> {
    sa::product_trace_asymptotic(&geom.0, &h.0).map(Into::into).py()
}

#[pyfunction]
#[pyo3(signature = (geom, h, phi, tail_eps = sa::DEFAULT_TAIL_EPS))]
fn shifted_trace_direct(geom: &ProductGeometry, h: &TestFunction, phi: f64, tail_eps: f64) -> PyResult<ActionResult> {
    sa::shifted_trace_direct(&geom.0, &h.0, phi, tail_eps)
        .map(Into::into)
        .py()
}

#[pyfunction]
fn shifted_trace_asymptotic(geom: &ProductGeometry, h: &TestFunction, phi: f64) -> PyResult<ActionResult> {
    sa::shifted_trace_asymptotic(&geom.0, &h.0, phi).map(Into::into).py()
}

#[pyfunction]
fn potential_v(h: &TestFunction, x: f64) -> PyResult<f64> {
    sa::potential_v(&h.0, x).py()
}

#[pyfunction]
fn potential_w(h: &TestFunction, x: f64) -> PyResult<f64> {
    sa::potential_w(&h.0, x).py()
}

/// Plateau expansion at field value phi: dict with direct, rederived,
/// verbatim, their relative differences and the per-term breakdowns.
#[pyfunction]
#[pyo3(signature = (geom, h, phi, tail_eps = sa::DEFAULT_TAIL_EPS))]
fn plateau_expansion<'py>(
    py: Python<'py>,
    geom: &ProductGeometry,
    h: &TestFunction,
    phi: f64,
    tail_eps: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let p = sa::plateau_expansion(&geom.0, &h.0, phi, tail_eps).py()?;
    let terms = |ts: &[sa::Term]| ts.iter().map(|t| (t.name.to_string(), t.value)).collect::<Vec<_>>();
    let d = PyDict::new(py);
    d.set_item("direct", p.direct.value)?;
    d.set_item("rederived", p.rederived)?;
    d.set_item("verbatim", p.verbatim)?;
    d.set_item("rederived_rel_diff", p.rederived_rel_diff)?;
    d.set_item("verbatim_rel_diff", p.verbatim_rel_diff)?;
    d.set_item("rederived_terms", terms(&p.rederived_terms))?;
    d.set_item("verbatim_terms", terms(&p.verbatim_terms))?;
    Ok(d)
}

fn point_dict<'py>(py: Python<'py>, p: &SlowRollPoint) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("x", p.x)?;
    d.set_item("V", p.v)?;
    d.set_item("Vp", p.vp)?;
    d.set_item("Vpp", p.vpp)?;
    d.set_item("A", p.a)?;
    d.set_item("B", p.b)?;
    d.set_item("epsilon", p.epsilon)?;
    d.set_item("eta", p.eta)?;
    d.set_item("status", p.status.as_str())?;
    d.set_item("eta_conventional", p.eta_conventional)?;
    Ok(d)
}

/// Slow-roll parameters on a grid of x = phi^2/Lambda^2, one dict per point.
#[pyfunction]
#[pyo3(signature = (t, lam, a, beta, h, xs, m_pl = 1.0))]
#[allow(clippy::too_many_arguments)]
fn slow_roll<'py>(
    py: Python<'py>,
    t: f64,
    lam: f64,
    a: f64,
    beta: f64,
    h: &TestFunction,
    xs: Vec<f64>,
    m_pl: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let cfg = SlowRollConfig::new(t, lam, a, beta, h.0.clone())
        .and_then(|c| c.with_m_pl(m_pl))
        .and_then(|c| c.with_grid(xs))
        .py()?;
    let points = py.detach(|| inflation::sweep(&cfg)).py()?;
    points.iter().map(|p| point_dict(py, p)).collect()
}

/// Run the oracle and identity checks: list of (name, residual, threshold, passed).
#[pyfunction]
#[pyo3(signature = (mmax = 12, ts = None))]
fn verify(py: Python<'_>, mmax: u32, ts: Option<Vec<f64>>) -> PyResult<Vec<(String, f64, f64, bool)>> {
    let mut opts = VerifyOptions {
        m_max: mmax,
        ..VerifyOptions::default()
    };
    if let Some(ts) = ts {
        opts.ts = ts;
    }
    let report = py.detach(|| run_verification(&opts)).py()?;
    Ok(report
        .checks
        .into_iter()
        .map(|c| (c.name, c.residual, c.threshold, c.passed))
        .collect())
}

#[pymodule]
pub fn dirac_spectra(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<TestFunction>()?;
    m.add_class::<ProductGeometry>()?;
    m.add_class::<ActionResult>()?;
    m.add_function(wrap_pyfunction!(connection_factor, m)?)?;
    m.add_function(wrap_pyfunction!(su2_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(su3_lines, m)?)?;
    m.add_function(wrap_pyfunction!(trace_direct_su2, m)?)?;
    m.add_function(wrap_pyfunction!(trace_asymptotic_su2, m)?)?;
    m.add_function(wrap_pyfunction!(product_trace_direct, m)?)?;
    m.add_function(wrap_pyfunction!(product_trace_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(shifted_trace_direct, m)?)?;
    m.add_function(wrap_pyfunction!(shifted_trace_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(potential_v, m)?)?;
    m.add_function(wrap_pyfunction!(potential_w, m)?)?;
    m.add_function(wrap_pyfunction!(plateau_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(slow_roll, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
