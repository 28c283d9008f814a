//! Cutoff functions for the spectral action and their integral services.
//!
//! Three families are supported:
//!
//! * `Gaussian`: `f(x) = e^{−x}`, so that `f(y²)` is a Gaussian;
//! * `PolyExp`: `h(x) = P(πx) e^{−πx}` with `P` given by its coefficients
//!   (constant term first);
//! * `Plateau`: equal to `height` on `[0, c]`, decaying to 0 on `[c, c+w]`
//!   through a `C^∞` smooth step, and 0 beyond.
//!
//! `Gaussian` and `PolyExp` services are closed forms built on integer-order
//! incomplete gamma functions; `Plateau` integrates the transition region
//! numerically.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::quadrature::integrate_interval;
use crate::sum::NeumaierSum;

/// Absolute tolerance for the numerical services of `Plateau`.
pub const SERVICE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum TestFunction {
    Gaussian,
    PolyExp { coeffs: Vec<f64> },
    Plateau { height: f64, c: f64, w: f64 },
}

impl TestFunction {
    pub fn gaussian() -> Self {
        TestFunction::Gaussian
    }

    pub fn poly_exp(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(invalid("coeffs", "polynomial needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(invalid("coeffs", "coefficients must be finite"));
        }
        Ok(TestFunction::PolyExp { coeffs })
    }

    /// `e^{−πx}`.
    pub fn exp_pi() -> Self {
        TestFunction::PolyExp { coeffs: vec![1.0] }
    }

    pub fn plateau(c: f64, w: f64) -> Result<Self> {
        Self::plateau_with_height(1.0, c, w)
    }

    pub fn plateau_with_height(height: f64, c: f64, w: f64) -> Result<Self> {
        if !height.is_finite() {
            return Err(invalid("height", "must be finite"));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(invalid("c", format!("plateau length must be positive, got {c}")));
        }
        if !(w > 0.0 && w.is_finite()) {
            return Err(invalid("w", format!("decay width must be positive, got {w}")));
        }
        Ok(TestFunction::Plateau { height, c, w })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            TestFunction::Gaussian => "gaussian",
            TestFunction::PolyExp { .. } => "polyexp",
            TestFunction::Plateau { .. } => "plateau",
        }
    }

    /// Multiplies the function by `k`.
    pub fn scaled(&self, k: f64) -> Result<Self> {
        match self {
            TestFunction::Gaussian => Err(Error::UnsupportedKind {
                kind: "gaussian",
                operation: "scaling",
            }),
            TestFunction::PolyExp { coeffs } => Self::poly_exp(coeffs.iter().map(|c| c * k).collect()),
            TestFunction::Plateau { height, c, w } => Self::plateau_with_height(height * k, *c, *w),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            TestFunction::Gaussian => (-x).exp(),
            TestFunction::PolyExp { coeffs } => {
                let e = (-PI * x).exp();
                if e == 0.0 {
                    return 0.0;
                }
                horner(coeffs, PI * x) * e
            }
            TestFunction::Plateau { height, c, w } => {
                if x <= *c {
                    *height
                } else if x >= c + w {
                    0.0
                } else {
                    height * smooth_step((c + w - x) / w)
                }
            }
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match self {
            TestFunction::Gaussian => -(-x).exp(),
            TestFunction::PolyExp { coeffs } => {
                let e = (-PI * x).exp();
                if e == 0.0 {
                    return 0.0;
                }
                let y = PI * x;
                PI * (horner(&poly_derivative(coeffs), y) - horner(coeffs, y)) * e
            }
            TestFunction::Plateau { height, c, w } => {
                if x <= *c || x >= c + w {
                    0.0
                } else {
                    -height * smooth_step_derivative((c + w - x) / w) / w
                }
            }
        }
    }

    /// Upper bound on `sup_{y ≥ x} |h(y)|`, non-increasing in `x`.
    pub fn envelope(&self, x: f64) -> f64 {
        let x = x.max(0.0);
        match self {
            TestFunction::Gaussian => (-x).exp(),
            TestFunction::PolyExp { coeffs } => {
                let y = PI * x;
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        let kf = k as f64;
                        let z = y.max(kf);
                        let log = if k == 0 { -z } else { kf * z.ln() - z };
                        c.abs() * log.exp()
                    })
                    .sum()
            }
            TestFunction::Plateau { height, c, w } => {
                if x < c + w {
                    height.abs()
                } else {
                    0.0
                }
            }
        }
    }

    /// `∫₀^x r^j h(r) dr`.
    pub fn partial_moment(&self, j: u32, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        match self {
            TestFunction::Gaussian => Ok(gamma_lower(j, x)),
            TestFunction::PolyExp { coeffs } => {
                let y = PI * x;
                let s: NeumaierSum = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * gamma_lower(j + k as u32, y))
                    .collect();
                Ok(s.value() / PI.powi(j as i32 + 1))
            }
            TestFunction::Plateau { height, c, w } => {
                let jf = j as f64;
                let flat = x.min(*c);
                let mut total = height * flat.powf(jf + 1.0) / (jf + 1.0);
                if x > *c {
                    let b = x.min(c + w);
                    total += integrate_interval(|r| r.powi(j as i32) * self.value(r), *c, b, SERVICE_TOL)?;
                }
                Ok(total)
            }
        }
    }

    /// `∫_x^∞ r^j h(r) dr`.
    pub fn tail_moment(&self, j: u32, x: f64) -> Result<f64> {
        let x = x.max(0.0);
        match self {
            TestFunction::Gaussian => Ok(gamma_upper(j, x)),
            TestFunction::PolyExp { coeffs } => {
                let y = PI * x;
                let s: NeumaierSum = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * gamma_upper(j + k as u32, y))
                    .collect();
                Ok(s.value() / PI.powi(j as i32 + 1))
            }
            TestFunction::Plateau { c, w, .. } => {
                let end = c + w;
                if x >= end {
                    return Ok(0.0);
                }
                let mut total = 0.0;
                if x < *c {
                    total += self.partial_moment(j, *c)? - self.partial_moment(j, x)?;
                }
                total += integrate_interval(|r| r.powi(j as i32) * self.value(r), x.max(*c), end, SERVICE_TOL)?;
                Ok(total)
            }
        }
    }

    /// `∫₀^∞ h(r) dr`.
    pub fn integral(&self) -> Result<f64> {
        match self {
            TestFunction::Plateau { height, c, w } => Ok(height * (c + 0.5 * w)),
            _ => self.tail_moment(0, 0.0),
        }
    }

    /// `∫₀^x h(r) dr`.
    pub fn cumulative(&self, x: f64) -> Result<f64> {
        self.partial_moment(0, x)
    }

    /// `∫_x^∞ h(r) dr`.
    pub fn tail(&self, x: f64) -> Result<f64> {
        self.tail_moment(0, x)
    }

    /// `∫₀^∞ r h(r) dr`.
    pub fn first_moment(&self) -> Result<f64> {
        self.tail_moment(1, 0.0)
    }

    /// `∫₀^∞ r h(r + x) dr = ∫_x^∞ (u − x) h(u) du`.
    pub fn shifted_moment(&self, x: f64) -> Result<f64> {
        Ok(self.tail_moment(1, x)? - x * self.tail_moment(0, x)?)
    }

    /// `𝒱(x) = ∫₀^∞ r (h(r+x) − h(r)) dr = −∫₀^x u h(u) du − x ∫_x^∞ h(u) du`.
    pub fn potential_v(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        Ok(-self.partial_moment(1, x)? - x * self.tail(x)?)
    }

    /// `𝒲(x) = ∫₀^x h(r) dr`.
    pub fn potential_w(&self, x: f64) -> Result<f64> {
        self.cumulative(x)
    }

    /// `∫₀^∞ r^k h(r²) dr`.
    pub fn square_moment(&self, k: u32) -> Result<f64> {
        match self {
            TestFunction::Gaussian => Ok(0.5 * gamma_half(k + 1)),
            TestFunction::PolyExp { coeffs } => {
                // ∫ r^{2j+k} e^{−πr²} dr = Γ(j + (k+1)/2) / (2 π^{j+(k+1)/2})
                let s: NeumaierSum = coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c * gamma_half(2 * j as u32 + k + 1))
                    .collect();
                Ok(s.value() / (2.0 * PI.powf((k as f64 + 1.0) / 2.0)))
            }
            TestFunction::Plateau { height, c, w } => {
                let kf = k as f64;
                let a = c.sqrt();
                let b = (c + w).sqrt();
                let flat = height * a.powf(kf + 1.0) / (kf + 1.0);
                let edge = integrate_interval(|r| r.powi(k as i32) * self.value(r * r), a, b, SERVICE_TOL)?;
                Ok(flat + edge)
            }
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Gaussian => f.write_str("gaussian"),
            TestFunction::PolyExp { coeffs } => {
                f.write_str("polyexp:")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            TestFunction::Plateau { height, c, w } => {
                if *height == 1.0 {
                    write!(f, "plateau:{c},{w}")
                } else {
                    write!(f, "plateau:{c},{w},{height}")
                }
            }
        }
    }
}

/// Parses `gaussian`, `polyexp:c0[,c1,…]`, or `plateau:c,w[,height]`.
impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, args) = match s.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a)),
            None => (s, None),
        };
        let numbers = |a: &str| -> Result<Vec<f64>> {
            a.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| invalid("test function", format!("`{x}` is not a number")))
                })
                .collect()
        };
        match (kind.to_ascii_lowercase().as_str(), args) {
            ("gaussian", None) => Ok(TestFunction::Gaussian),
            ("polyexp", Some(a)) => Self::poly_exp(numbers(a)?),
            ("polyexp", None) => Ok(Self::exp_pi()),
            ("plateau", None) => Self::plateau(1.0, 0.5),
            ("plateau", Some(a)) => match numbers(a)?.as_slice() {
                [c, w] => Self::plateau(*c, *w),
                [c, w, h] => Self::plateau_with_height(*h, *c, *w),
                _ => Err(invalid("test function", "plateau expects `plateau:c,w[,height]`")),
            },
            _ => Err(invalid(
                "test function",
                format!("unknown descriptor `{s}` (expected gaussian, polyexp:c0[,c1,...], plateau:c,w)"),
            )),
        }
    }
}

fn horner(coeffs: &[f64], y: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c)
}

fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect()
}

/// `C^∞` step: 0 for `u ≤ 0`, 1 for `u ≥ 1`, `S(u) + S(1−u) = 1`.
pub fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        1.0 / (1.0 + (1.0 / u - 1.0 / (1.0 - u)).exp())
    }
}

pub fn smooth_step_derivative(u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        return 0.0;
    }
    let s = smooth_step(u);
    s * (1.0 - s) * (1.0 / (u * u) + 1.0 / ((1.0 - u) * (1.0 - u)))
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// `∫_y^∞ u^n e^{−u} du = n! e^{−y} Σ_{i≤n} y^i / i!`.
pub fn gamma_upper(n: u32, y: f64) -> f64 {
    if y <= 0.0 {
        return ln_factorial(n).exp();
    }
    let ln_y = y.ln();
    let ln_nf = ln_factorial(n);
    let mut s = NeumaierSum::new();
    let mut ln_if = 0.0;
    for i in 0..=n {
        if i > 0 {
            ln_if += (i as f64).ln();
        }
        s.add((ln_nf - ln_if + i as f64 * ln_y - y).exp());
    }
    s.value()
}

/// `∫₀^y u^n e^{−u} du`.
pub fn gamma_lower(n: u32, y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    let nf = n as f64;
    if y >= nf + 1.0 {
        return ln_factorial(n).exp() - gamma_upper(n, y);
    }
    // e^{−y} Σ_{i>n} n! y^i / i!, first term y^{n+1}/(n+1), ratio y/(i+1)
    let mut term = ((nf + 1.0) * y.ln() - y).exp() / (nf + 1.0);
    let mut s = NeumaierSum::new();
    let mut i = n + 1;
    while term > 0.0 {
        s.add(term);
        if term < 1e-18 * s.value() {
            break;
        }
        term *= y / (i as f64 + 1.0);
        i += 1;
    }
    s.value()
}

/// `Γ(m/2)` for integer `m ≥ 1`.
pub fn gamma_half(m: u32) -> f64 {
    assert!(m >= 1);
    let (mut g, mut z) = if m.is_multiple_of(2) {
        (1.0, 1.0)
    } else {
        (PI.sqrt(), 0.5)
    };
    let target = m as f64 / 2.0;
    while z < target {
        g *= z;
        z += 1.0;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_semi_infinite, integrate_tail};

    fn grid() -> Vec<f64> {
        (0..20).map(|i| 0.05 + 0.2 * i as f64).collect()
    }

    #[test]
    fn incomplete_gamma_against_quadrature() {
        for n in 0..10 {
            for &y in &[0.0, 0.1, 0.5, 1.0, 3.0, 7.5, 15.0, 40.0] {
                let lo = integrate_interval(|u| u.powi(n as i32) * (-u).exp(), 0.0, y, 1e-15).unwrap();
                let hi = integrate_tail(|u| u.powi(n as i32) * (-u).exp(), y, 1e-15).unwrap();
                let scale = ln_factorial(n).exp();
                assert!((gamma_lower(n, y) - lo).abs() <= 1e-13 * scale, "lower n={n} y={y}");
                assert!((gamma_upper(n, y) - hi).abs() <= 1e-13 * scale, "upper n={n} y={y}");
            }
        }
    }

    #[test]
    fn gamma_half_values() {
        assert!((gamma_half(1) - PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma_half(2), 1.0);
        assert!((gamma_half(3) - PI.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(gamma_half(6), 2.0);
    }

    #[test]
    fn exp_pi_closed_forms() {
        let h = TestFunction::exp_pi();
        for x in grid() {
            let e = (-PI * x).exp();
            assert!((h.potential_v(x).unwrap() - (e - 1.0) / (PI * PI)).abs() < 1e-15);
            assert!((h.potential_w(x).unwrap() - (1.0 - e) / PI).abs() < 1e-15);
        }
        let v1 = h.potential_v(1.0).unwrap();
        assert!((v1 + 0.096_942_7).abs() < 1e-7);
        assert_eq!(h.potential_v(0.0).unwrap(), 0.0);
        assert_eq!(h.potential_w(0.0).unwrap(), 0.0);
    }

    fn services_vs_quadrature(h: &TestFunction, tol: f64) {
        let q = |g: &dyn Fn(f64) -> f64, a: f64, b: f64| integrate_interval(g, a, b, 1e-15).unwrap();
        let qt = |g: &dyn Fn(f64) -> f64, a: f64| integrate_tail(g, a, 1e-15).unwrap();
        let total = qt(&|r| h.value(r), 0.0);
        assert!((h.integral().unwrap() - total).abs() < tol);
        let m1 = qt(&|r| r * h.value(r), 0.0);
        assert!((h.first_moment().unwrap() - m1).abs() < tol);
        for x in grid() {
            let cum = q(&|r| h.value(r), 0.0, x);
            let tail = qt(&|r| h.value(r), x);
            let shifted = qt(&|r| r * h.value(r + x), 0.0);
            let v = qt(&|r| r * (h.value(r + x) - h.value(r)), 0.0);
            assert!((h.cumulative(x).unwrap() - cum).abs() < tol, "cumulative x={x}");
            assert!((h.potential_w(x).unwrap() - cum).abs() < tol);
            assert!((h.tail(x).unwrap() - tail).abs() < tol, "tail x={x}");
            assert!((h.shifted_moment(x).unwrap() - shifted).abs() < tol, "shifted x={x}");
            assert!((h.potential_v(x).unwrap() - v).abs() < tol, "V x={x}");
        }
        for k in 0..3 {
            let sq = qt(&|r| r.powi(k as i32) * h.value(r * r), 0.0);
            assert!((h.square_moment(k).unwrap() - sq).abs() < tol, "square moment {k}");
        }
    }

    #[test]
    fn polyexp_services_match_quadrature() {
        for coeffs in [
            vec![1.0],
            vec![1.0, 1.0],
            vec![2.0, -0.5, 0.25],
            vec![1.0, 0.0, 0.0, 0.3, 0.1],
        ] {
            services_vs_quadrature(&TestFunction::poly_exp(coeffs).unwrap(), 1e-11);
        }
    }

    #[test]
    fn gaussian_services_match_quadrature() {
        services_vs_quadrature(&TestFunction::Gaussian, 1e-12);
        let g = TestFunction::Gaussian;
        assert!((g.square_moment(0).unwrap() - PI.sqrt() / 2.0).abs() < 1e-15);
        assert!((g.square_moment(1).unwrap() - 0.5).abs() < 1e-15);
        assert!((g.square_moment(2).unwrap() - PI.sqrt() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn plateau_services() {
        let h = TestFunction::plateau(1.0, 0.5).unwrap();
        assert_eq!(h.value(0.3), 1.0);
        assert_eq!(h.value(1.0), 1.0);
        assert_eq!(h.value(1.5), 0.0);
        assert!((h.value(1.25) - 0.5).abs() < 1e-15);
        assert!((h.integral().unwrap() - 1.25).abs() < 1e-15);
        let cum = h.cumulative(1.5).unwrap();
        assert!((cum - 1.25).abs() < 1e-13);
        assert!((h.potential_v(0.4).unwrap() - (-0.4 * 1.25 + 0.5 * 0.16)).abs() < 1e-14);
    }

    #[test]
    fn derivatives_by_finite_differences() {
        let fs = [
            TestFunction::Gaussian,
            TestFunction::poly_exp(vec![1.0, 1.0, 0.5]).unwrap(),
            TestFunction::plateau(1.0, 0.5).unwrap(),
        ];
        let step = 1e-5;
        for h in &fs {
            for x in [0.1, 0.7, 1.1, 1.3, 2.0] {
                let fd = (h.value(x + step) - h.value(x - step)) / (2.0 * step);
                assert!((h.derivative(x) - fd).abs() < 1e-8, "{h} at {x}");
                let dw = (h.potential_w(x + step).unwrap() - h.potential_w(x - step).unwrap()) / (2.0 * step);
                assert!((dw - h.value(x)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn envelope_bounds_and_decay() {
        let fs = [
            TestFunction::Gaussian,
            TestFunction::poly_exp(vec![1.0, -2.0, 0.5, 0.1]).unwrap(),
            TestFunction::plateau(1.0, 0.5).unwrap(),
        ];
        for h in &fs {
            let mut prev = f64::INFINITY;
            for i in 0..400 {
                let x = i as f64 * 0.1;
                let env = h.envelope(x);
                assert!(env <= prev);
                prev = env;
                assert!(h.value(x).abs() <= env * (1.0 + 1e-12));
            }
            // Schwartz-type decay
            let c = (0..400).map(|i| {
                let x = i as f64 * 0.1;
                h.value(x).abs() / (-x / 2.0).exp()
            });
            assert!(c.fold(0.0, f64::max).is_finite());
        }
    }

    #[test]
    fn parse_descriptors() {
        assert_eq!("gaussian".parse::<TestFunction>().unwrap(), TestFunction::Gaussian);
        assert_eq!(
            "polyexp:1,0.5".parse::<TestFunction>().unwrap(),
            TestFunction::PolyExp { coeffs: vec![1.0, 0.5] }
        );
        assert_eq!(
            "plateau:1,0.5".parse::<TestFunction>().unwrap(),
            TestFunction::Plateau {
                height: 1.0,
                c: 1.0,
                w: 0.5
            }
        );
        for bad in ["", "polyexp:", "polyexp:a", "plateau:1", "plateau:-1,1", "cosine"] {
            assert!(bad.parse::<TestFunction>().is_err(), "{bad}");
        }
        for s in ["gaussian", "polyexp:1,0.5", "plateau:1,0.5"] {
            let f: TestFunction = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
    }

    #[test]
    fn moments_of_exp_pi() {
        let h = TestFunction::exp_pi();
        assert!((h.integral().unwrap() - 1.0 / PI).abs() < 1e-16);
        assert!((h.first_moment().unwrap() - 1.0 / (PI * PI)).abs() < 1e-16);
        let quad = integrate_semi_infinite(|r| (-PI * r * r).exp(), 1e-15).unwrap();
        assert!((h.square_moment(0).unwrap() - quad).abs() < 1e-15);
    }
}
