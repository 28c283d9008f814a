//! Slow-roll potential and parameters from the shifted spectral action.
//!
//! With `x = φ²/Λ²`, `k = πΛ²βa` and `c_t = (3t−1)(3t−2)`:
//!
//! ```text
//! V(x)   = k [ (Λa)² 𝒱(x) − 2 c_t 𝒲(x) ]
//! V′(x)  = k [ −(Λa)² ∫_x^∞ h − 2 c_t h(x) ]
//! V″(x)  = k [ (Λa)² h(x) − 2 c_t h′(x) ]
//! A = ½ (V′/V)²,  B = (V″/V)²,  ε = m²/(8π) A,  η = m²/(8π) (B − A)
//! ```
//!
//! `B` is squared as in the source formulas; the conventional
//! `η = m²/(8π) V″/V` is reported separately as `eta_conventional`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::rep_theory::connection_factor;
use crate::test_function::TestFunction;

/// `|V|` below this fraction of the potential's natural scale is singular.
pub const SINGULAR_REL: f64 = 1e-12;
/// Required agreement between the V-derivative route and the displayed
/// closed formulas for ε and η.
pub const ROUTE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlowRollConfig {
    pub t: f64,
    pub lambda: f64,
    pub a: f64,
    pub beta: f64,
    pub m_pl: f64,
    pub h: TestFunction,
    pub x_grid: Vec<f64>,
}

impl SlowRollConfig {
    pub fn new(t: f64, lambda: f64, a: f64, beta: f64, h: TestFunction) -> Result<Self> {
        let cfg = SlowRollConfig {
            t,
            lambda,
            a,
            beta,
            m_pl: 1.0,
            h,
            x_grid: Vec::new(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_m_pl(mut self, m_pl: f64) -> Result<Self> {
        self.m_pl = m_pl;
        self.validate()?;
        Ok(self)
    }

    pub fn with_grid(mut self, x_grid: Vec<f64>) -> Result<Self> {
        self.x_grid = x_grid;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.t.is_finite() {
            return Err(invalid("t", format!("must be finite, got {}", self.t)));
        }
        for (name, v) in [
            ("lambda", self.lambda),
            ("a", self.a),
            ("beta", self.beta),
            ("m_pl", self.m_pl),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(name, format!("must be positive and finite, got {v}")));
            }
        }
        if !matches!(self.h, TestFunction::PolyExp { .. }) {
            return Err(Error::UnsupportedKind {
                kind: self.h.kind_name(),
                operation: "slow-roll potential (needs polyexp)",
            });
        }
        for &x in &self.x_grid {
            if !(x >= 0.0 && x.is_finite()) {
                return Err(invalid("x", format!("grid values must be non-negative, got {x}")));
            }
        }
        if self.x_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("x", "grid must be strictly increasing"));
        }
        Ok(())
    }

    /// `πΛ²βa`.
    pub fn prefactor(&self) -> f64 {
        PI * self.lambda * self.lambda * self.beta * self.a
    }

    /// `(Λa)²`.
    pub fn lambda_a_sq(&self) -> f64 {
        (self.lambda * self.a).powi(2)
    }

    /// Magnitude against which `V` is judged to vanish:
    /// `πΛ²βa ((Λa)² |∫ r h| + 2 |c_t| |∫ h|)`.
    pub fn potential_scale(&self) -> Result<f64> {
        let cf = connection_factor(self.t);
        Ok(self.prefactor()
            * (self.lambda_a_sq() * self.h.first_moment()?.abs() + 2.0 * cf.abs() * self.h.integral()?.abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Singular,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Singular => "singular",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlowRollPoint {
    pub x: f64,
    pub v: f64,
    pub vp: f64,
    pub vpp: f64,
    /// `None` where `status` is singular.
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub epsilon: Option<f64>,
    pub eta: Option<f64>,
    pub eta_conventional: Option<f64>,
    pub status: Status,
}

fn check_x(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(invalid("x", format!("must be non-negative, got {x}")))
    }
}

/// `(V, V′, V″) / πΛ²βa`. Ratios are formed from these so that β and the
/// other common factors cancel exactly.
fn reduced(cfg: &SlowRollConfig, x: f64) -> Result<(f64, f64, f64)> {
    cfg.validate()?;
    check_x(x)?;
    let cf = connection_factor(cfg.t);
    let la2 = cfg.lambda_a_sq();
    let h = &cfg.h;
    let mut u = la2 * h.potential_v(x)?;
    if cf != 0.0 {
        u -= 2.0 * cf * h.potential_w(x)?;
    }
    let up = -la2 * h.tail(x)? - 2.0 * cf * h.value(x);
    let upp = la2 * h.value(x) - 2.0 * cf * h.derivative(x);
    Ok((u, up, upp))
}

pub fn slow_roll_potential(cfg: &SlowRollConfig, x: f64) -> Result<f64> {
    Ok(cfg.prefactor() * reduced(cfg, x)?.0)
}

/// `(V′(x), V″(x))`.
pub fn slow_roll_derivatives(cfg: &SlowRollConfig, x: f64) -> Result<(f64, f64)> {
    let (_, up, upp) = reduced(cfg, x)?;
    Ok((cfg.prefactor() * up, cfg.prefactor() * upp))
}

/// ε and η from the displayed closed formulas, where the common factor
/// `πΛ²βa` has been cancelled and the denominator's `𝒱` is written as
/// `∫₀^∞ r h(r+x) dr − ∫₀^∞ r h(r) dr`.
pub fn displayed_formulas(cfg: &SlowRollConfig, x: f64) -> Result<(f64, f64)> {
    cfg.validate()?;
    check_x(x)?;
    let h = &cfg.h;
    let cf = connection_factor(cfg.t);
    let la2 = cfg.lambda_a_sq();
    let den = la2 * (h.shifted_moment(x)? - h.first_moment()?) - 2.0 * cf * h.cumulative(x)?;
    let first = (-la2 * h.tail(x)? - 2.0 * cf * h.value(x)) / den;
    let second = (la2 * h.value(x) - 2.0 * cf * h.derivative(x)) / den;
    let m2 = cfg.m_pl * cfg.m_pl;
    let epsilon = m2 / (16.0 * PI) * first * first;
    let eta = m2 / (8.0 * PI) * second * second - m2 / (16.0 * PI) * first * first;
    Ok((epsilon, eta))
}

/// Slow-roll quantities at `x`. Points where `V` vanishes relative to
/// [`SlowRollConfig::potential_scale`] are reported as singular.
pub fn slow_roll_params(cfg: &SlowRollConfig, x: f64) -> Result<SlowRollPoint> {
    let (u, up, upp) = reduced(cfg, x)?;
    let pre = cfg.prefactor();
    let mut point = SlowRollPoint {
        x,
        v: pre * u,
        vp: pre * up,
        vpp: pre * upp,
        a: None,
        b: None,
        epsilon: None,
        eta: None,
        eta_conventional: None,
        status: Status::Singular,
    };
    let scale = cfg.potential_scale()? / pre;
    if u.is_nan() || u == 0.0 || u.abs() < SINGULAR_REL * scale {
        return Ok(point);
    }
    let k = cfg.m_pl * cfg.m_pl / (8.0 * PI);
    let a = 0.5 * (up / u).powi(2);
    let b = (upp / u).powi(2);
    let epsilon = k * a;
    let eta = k * (b - a);

    let (eps_f, eta_f) = displayed_formulas(cfg, x)?;
    let eps_gap = (epsilon - eps_f).abs() / epsilon.abs().max(f64::MIN_POSITIVE);
    let eta_gap = (eta - eta_f).abs() / (k * (a + b)).max(f64::MIN_POSITIVE);
    if eps_gap.max(eta_gap) > ROUTE_TOL {
        return Err(Error::NumericalCheck(format!(
            "slow-roll routes disagree at x = {x}: epsilon {epsilon} vs {eps_f}, eta {eta} vs {eta_f}"
        )));
    }

    point.a = Some(a);
    point.b = Some(b);
    point.epsilon = Some(epsilon);
    point.eta = Some(eta);
    point.eta_conventional = Some(k * upp / u);
    point.status = Status::Ok;
    Ok(point)
}

/// One point per grid value, in grid order.
pub fn sweep(cfg: &SlowRollConfig) -> Result<Vec<SlowRollPoint>> {
    cfg.validate()?;
    cfg.x_grid.par_iter().map(|&x| slow_roll_params(cfg, x)).collect()
}

/// Slow-roll quantities at fixed `x` for each connection parameter in `ts`.
pub fn t_sweep(cfg: &SlowRollConfig, ts: &[f64], x: f64) -> Result<Vec<(f64, SlowRollPoint)>> {
    ts.par_iter()
        .map(|&t| {
            let c = SlowRollConfig { t, ..cfg.clone() };
            slow_roll_params(&c, x).map(|p| (t, p))
        })
        .collect()
}
