//! Double-exponential quadrature.
//!
//! `[0, ∞)` uses the exp-sinh map `x = exp(π/2 · sinh τ)`; finite intervals
//! use tanh-sinh. The trapezoidal step is halved until two successive levels
//! agree to the requested absolute tolerance.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

/// Finest level: `2^MAX_LEVEL` subdivisions of the unit step.
const MAX_LEVEL: u32 = 16;
const MIN_LEVEL: u32 = 3;
const SEMI_INFINITE_SPAN: f64 = 4.5;
const FINITE_SPAN: f64 = 4.0;

fn refine<F>(span: f64, tol: f64, mut node: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument {
            name: "tol",
            reason: format!("tolerance must be positive, got {tol}"),
        });
    }
    let mut acc = NeumaierSum::new();
    let n0 = span as i64;
    for j in -n0..=n0 {
        acc.add(node(j as f64)?);
    }
    let mut h = 1.0;
    let mut prev = h * acc.value();
    let mut last_diff = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let count = (span / h) as i64;
        // odd multiples of the new step
        let mut j = -count + if count % 2 == 0 { 1 } else { 0 };
        while j <= count {
            acc.add(node(j as f64 * h)?);
            j += 2;
        }
        let cur = h * acc.value();
        last_diff = (cur - prev).abs();
        if level >= MIN_LEVEL && last_diff <= tol {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureNoConvergence { diff: last_diff, tol })
}

/// `∫₀^∞ g(x) dx` for smooth, decaying `g`.
pub fn integrate_semi_infinite<G: Fn(f64) -> f64>(g: G, tol: f64) -> Result<f64> {
    refine(SEMI_INFINITE_SPAN, tol, |tau| {
        let s = FRAC_PI_2 * tau.sinh();
        let x = s.exp();
        let w = FRAC_PI_2 * tau.cosh() * x;
        let v = g(x);
        if v.is_nan() {
            return Err(Error::QuadratureNan(x));
        }
        if v == 0.0 || w == 0.0 {
            return Ok(0.0);
        }
        Ok(v * w)
    })
}

/// `∫_a^b g(x) dx` by tanh-sinh.
pub fn integrate_interval<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return integrate_interval(g, b, a, tol).map(|v| -v);
    }
    let half = 0.5 * (b - a);
    refine(FINITE_SPAN, tol, |tau| {
        let s = FRAC_PI_2 * tau.sinh();
        // distance to the nearer endpoint, without cancellation
        let e = 2.0 / ((2.0 * s.abs()).exp() + 1.0);
        let x = if tau >= 0.0 { b - half * e } else { a + half * e };
        let ch = s.cosh();
        let w = half * FRAC_PI_2 * tau.cosh() / (ch * ch);
        if w == 0.0 || !w.is_finite() {
            return Ok(0.0);
        }
        let v = g(x);
        if v.is_nan() {
            return Err(Error::QuadratureNan(x));
        }
        Ok(v * w)
    })
}

/// `∫_a^∞ g(x) dx`.
pub fn integrate_tail<G: Fn(f64) -> f64>(g: G, a: f64, tol: f64) -> Result<f64> {
    integrate_semi_infinite(|x| g(a + x), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_half_line() {
        let v = integrate_semi_infinite(|r| (-r * r).exp(), 1e-14).unwrap();
        assert!((v - PI.sqrt() / 2.0).abs() < 1e-14, "{v}");
        assert!((v - 0.886_226_925_5).abs() < 1e-10);
    }

    #[test]
    fn gaussian_first_moment() {
        let v = integrate_semi_infinite(|r| r * (-r * r).exp(), 1e-14).unwrap();
        assert!((v - 0.5).abs() < 1e-14);
    }

    #[test]
    fn zero_integrand() {
        assert_eq!(integrate_semi_infinite(|_| 0.0, 1e-12).unwrap(), 0.0);
        assert_eq!(integrate_interval(|_| 0.0, 0.0, 3.0, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn exponential_moments() {
        // ∫ x^k e^{-πx} = k!/π^{k+1}
        let mut fact = 1.0;
        for k in 0..8 {
            if k > 0 {
                fact *= k as f64;
            }
            let v = integrate_semi_infinite(|x| x.powi(k) * (-PI * x).exp(), 1e-15).unwrap();
            let exact = fact / PI.powi(k + 1);
            assert!((v - exact).abs() < 1e-13 * exact.max(1.0), "k={k}");
        }
    }

    #[test]
    fn finite_interval() {
        let v = integrate_interval(|x| x.sin(), 0.0, PI, 1e-14).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
        let v = integrate_interval(|x| x.sin(), PI, 0.0, 1e-14).unwrap();
        assert!((v + 2.0).abs() < 1e-14);
        // endpoint singularity
        let v = integrate_interval(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn tail_integral() {
        let v = integrate_tail(|x| (-x).exp(), 2.0, 1e-15).unwrap();
        assert!((v - (-2.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn nan_is_reported() {
        assert!(matches!(
            integrate_semi_infinite(|x| if x > 1.0 { f64::NAN } else { 1.0 }, 1e-10),
            Err(Error::QuadratureNan(_))
        ));
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(integrate_semi_infinite(|x| (-x).exp(), 0.0).is_err());
    }
}
