//! Spectral action `Tr h(D²/Λ²)` on SU(2) and on the product `S³ × S¹`,
//! by direct summation over the closed-form spectrum and by its
//! Poisson-summation expansion.
//!
//! The product-geometry expansion is
//!
//! ```text
//! πΛ⁴βa³ ∫₀^∞ r h(r) dr + 2π(3t−1)(3t−2) Λ²βa ∫₀^∞ h(r) dr
//! ```
//!
//! which is what polar coordinates give for `∫_{ℝ²} x² h(x²+y²)` and
//! `∫_{ℝ²} h(x²+y²)`. The often-quoted variant with `h(r²)` in both radial
//! integrals is kept as [`product_trace_asymptotic_printed`] for comparison;
//! it does not agree with the direct sum.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::quadrature::{integrate_interval, integrate_semi_infinite};
use crate::rep_theory::connection_factor;
use crate::sum::{compensated_sum, NeumaierSum};
use crate::test_function::TestFunction;

/// Absolute tolerance for the Fourier-side quadratures.
pub const FOURIER_TOL: f64 = 1e-14;
/// Default absolute truncation target for direct sums.
pub const DEFAULT_TAIL_EPS: f64 = 1e-16;
/// Extra radius, in units of the cutoff scale, summed beyond the point where
/// the envelope falls below `tail_eps`.
pub const SAFETY_MARGIN: f64 = 8.0;
/// Inclusive tolerance on the plateau precondition `φ²/Λ² ≤ c`.
const PLATEAU_EDGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActionResult {
    pub value: f64,
    pub method: Method,
    /// Bound on the omitted part of a direct sum; 0 for expansions.
    pub tail_bound: f64,
    /// Lattice points summed, or number of expansion terms.
    pub term_count: u64,
}

impl ActionResult {
    fn asymptotic(value: f64, terms: u64) -> Self {
        ActionResult {
            value,
            method: Method::Asymptotic,
            tail_bound: 0.0,
            term_count: terms,
        }
    }
}

/// `|x − y| / |x|`, or `|x − y|` when `x = 0`.
pub fn rel_diff(reference: f64, other: f64) -> f64 {
    let d = (reference - other).abs();
    if reference == 0.0 {
        d
    } else {
        d / reference.abs()
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {v}")))
    }
}

fn check_t(t: f64) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(invalid("t", format!("must be finite, got {t}")))
    }
}

fn check_tail_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(invalid("tail_eps", format!("must be positive, got {eps}")))
    }
}

/// `∫₀^∞ g(y) dy` where `g` vanishes beyond `√(c+w)` for plateau kinds.
fn half_line<G: Fn(f64) -> f64>(f: &TestFunction, g: G) -> Result<f64> {
    match f {
        TestFunction::Plateau { c, w, .. } => {
            let a = c.sqrt();
            let b = (c + w).sqrt();
            Ok(integrate_interval(&g, 0.0, a, FOURIER_TOL)? + integrate_interval(&g, a, b, FOURIER_TOL)?)
        }
        _ => integrate_semi_infinite(g, FOURIER_TOL),
    }
}

/// Fourier transform of `y^m f(y²)`: `∫_ℝ y^m f(y²) e^{−2πixy} dy`, by
/// quadrature. The odd case at `x = 0` is exactly zero.
pub fn fhat_m(f: &TestFunction, m: u32, x: f64) -> Result<Complex64> {
    if m > 2 {
        return Err(invalid("m", format!("moment order must be 0, 1 or 2, got {m}")));
    }
    if !x.is_finite() {
        return Err(invalid("x", "must be finite"));
    }
    let k = 2.0 * PI * x;
    if m.is_multiple_of(2) {
        let v = half_line(f, |y| y.powi(m as i32) * f.value(y * y) * (k * y).cos())?;
        Ok(Complex64::new(2.0 * v, 0.0))
    } else {
        if x == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let v = half_line(f, |y| y.powi(m as i32) * f.value(y * y) * (k * y).sin())?;
        Ok(Complex64::new(0.0, -2.0 * v))
    }
}

/// Smallest `R` (on a 1/4 grid) with `weight(R) · env(R²) < tail_eps`.
fn cutoff_radius<W: Fn(f64) -> f64>(f: &TestFunction, tail_eps: f64, weight: W) -> Result<f64> {
    let mut r = 0.0;
    while r <= 1e4 {
        if weight(r) * f.envelope(r * r) < tail_eps {
            return Ok(r);
        }
        r += 0.25;
    }
    Err(Error::NumericalCheck(format!(
        "{f} does not decay below tail_eps = {tail_eps} within the search range"
    )))
}

/// Sum of `term(n)` for `n` walking outward from `start` in direction
/// `step`, stopping once terms are negligible.
fn outward_sum<T: Fn(i64) -> f64>(start: i64, step: i64, term: T) -> f64 {
    let mut s = NeumaierSum::new();
    let mut n = start;
    for _ in 0..50_000_000u64 {
        let v = term(n);
        s.add(v);
        if v == 0.0 || v < 1e-30 * s.value() {
            break;
        }
        n += step;
    }
    s.value()
}

fn su2_multiplicity(n: i64) -> f64 {
    ((n + 1) * (n + 2)) as f64
}

/// `Σ_n (n+1)(n+2) f((n+3t)²/Λ²)` over the closed-form SU(2) spectrum.
pub fn trace_direct_su2(t: f64, lambda: f64, f: &TestFunction, tail_eps: f64) -> Result<ActionResult> {
    check_t(t)?;
    check_positive("lambda", lambda)?;
    check_tail_eps(tail_eps)?;
    let shift = 3.0 * t;
    let r = cutoff_radius(f, tail_eps, |r| (lambda * r + shift.abs() + 3.0).powi(2))?;
    let reach = lambda * (r + SAFETY_MARGIN);
    let lo = (-reach - shift).floor() as i64;
    let hi = (reach - shift).ceil() as i64;

    let term = |n: i64| {
        let u = (n as f64 + shift) / lambda;
        su2_multiplicity(n) * f.value(u * u)
    };
    let value = compensated_sum((lo..=hi).map(term));

    let bound = |n: i64| {
        let u = (n as f64 + shift) / lambda;
        su2_multiplicity(n).abs() * f.envelope(u * u)
    };
    let tail_bound = outward_sum(hi + 1, 1, bound) + outward_sum(lo - 1, -1, bound);
    Ok(ActionResult {
        value,
        method: Method::Direct,
        tail_bound,
        term_count: (hi - lo + 1) as u64,
    })
}

/// `Λ³ ∫_ℝ y² f(y²) dy + Λ (3t−1)(3t−2) ∫_ℝ f(y²) dy`.
pub fn trace_asymptotic_su2(t: f64, lambda: f64, f: &TestFunction) -> Result<ActionResult> {
    check_t(t)?;
    check_positive("lambda", lambda)?;
    let m2 = fhat_m(f, 2, 0.0)?.re;
    let m0 = fhat_m(f, 0, 0.0)?.re;
    let cf = connection_factor(t);
    let value = lambda.powi(3) * m2 + if cf == 0.0 { 0.0 } else { lambda * cf * m0 };
    Ok(ActionResult::asymptotic(value, 2))
}

/// `S³` of radius `a` times `S¹` of radius `β`, with line-bundle parameter
/// `s` (taken mod 1), connection parameter `t` and cutoff `Λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductGeometry {
    pub a: f64,
    pub beta: f64,
    pub s: f64,
    pub t: f64,
    pub lambda: f64,
}

impl ProductGeometry {
    pub fn new(a: f64, beta: f64, s: f64, t: f64, lambda: f64) -> Result<Self> {
        check_positive("a", a)?;
        check_positive("beta", beta)?;
        check_positive("lambda", lambda)?;
        check_t(t)?;
        if !s.is_finite() {
            return Err(invalid("s", format!("must be finite, got {s}")));
        }
        Ok(ProductGeometry {
            a,
            beta,
            s: s.rem_euclid(1.0),
            t,
            lambda,
        })
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.a, self.beta, self.s, self.t, self.lambda).map(|_| ())
    }

    /// `Λa`.
    pub fn lambda_a(&self) -> f64 {
        self.lambda * self.a
    }

    /// `Λβ`.
    pub fn lambda_beta(&self) -> f64 {
        self.lambda * self.beta
    }

    /// `φ²/Λ²`.
    pub fn shift_of(&self, phi: f64) -> f64 {
        (phi / self.lambda).powi(2)
    }
}

/// Direct 2D sum `Σ_{n,m} 2(n+1)(n+2) h((n+3t)²/(Λa)² + (m+s)²/(Λβ)²)`.
pub fn product_trace_direct(geom: &ProductGeometry, h: &TestFunction, tail_eps: f64) -> Result<ActionResult> {
    shifted_trace_direct(geom, h, 0.0, tail_eps)
}

/// Direct 2D sum for `D² + φ²`.
pub fn shifted_trace_direct(geom: &ProductGeometry, h: &TestFunction, phi: f64, tail_eps: f64) -> Result<ActionResult> {
    geom.validate()?;
    check_tail_eps(tail_eps)?;
    if !phi.is_finite() {
        return Err(invalid("phi", "must be finite"));
    }
    let x = geom.shift_of(phi);
    lattice_sum(geom, h, x, tail_eps, None)
}

/// As [`shifted_trace_direct`] with an explicit number of row chunks for the
/// parallel reduction. The result does not depend on the chunking.
pub fn shifted_trace_direct_chunked(
    geom: &ProductGeometry,
    h: &TestFunction,
    phi: f64,
    tail_eps: f64,
    chunks: usize,
) -> Result<ActionResult> {
    geom.validate()?;
    check_tail_eps(tail_eps)?;
    lattice_sum(geom, h, geom.shift_of(phi), tail_eps, Some(chunks.max(1)))
}

fn lattice_sum(
    geom: &ProductGeometry,
    h: &TestFunction,
    x: f64,
    tail_eps: f64,
    chunks: Option<usize>,
) -> Result<ActionResult> {
    let la = geom.lambda_a();
    let lb = geom.lambda_beta();
    let shift = 3.0 * geom.t;
    let s = geom.s;
    let r = cutoff_radius(h, tail_eps, |r| {
        2.0 * (la * r + shift.abs() + 3.0).powi(2) * (2.0 * lb * r + 3.0)
    })?;
    let reach = r + SAFETY_MARGIN;
    let n_lo = (-la * reach - shift).floor() as i64;
    let n_hi = (la * reach - shift).ceil() as i64;
    let m_lo = (-lb * reach - s).floor() as i64;
    let m_hi = (lb * reach - s).ceil() as i64;

    let row = |n: i64| -> f64 {
        let mult = 2.0 * su2_multiplicity(n);
        if mult == 0.0 {
            return 0.0;
        }
        let u = (n as f64 + shift) / la;
        let qu = u * u + x;
        let mut acc = NeumaierSum::new();
        for m in m_lo..=m_hi {
            let v = (m as f64 + s) / lb;
            acc.add(h.value(qu + v * v));
        }
        mult * acc.value()
    };

    let rows: Vec<f64> = match chunks {
        None => (n_lo..=n_hi).into_par_iter().map(row).collect(),
        Some(k) => {
            let len = (n_hi - n_lo + 1) as usize;
            let size = len.div_ceil(k).max(1);
            let starts: Vec<i64> = (0..len).step_by(size).map(|o| n_lo + o as i64).collect();
            starts
                .into_par_iter()
                .map(|start| {
                    let end = (start + size as i64 - 1).min(n_hi);
                    (start..=end).map(row).collect::<Vec<f64>>()
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        }
    };
    let value = compensated_sum(rows);

    // env(q_u + q_v + x) ≤ √(env(q_u)·env(q_v)) for a non-increasing envelope,
    // so the omitted region is bounded by products of 1D series.
    let root_env = |q: f64| h.envelope(q).sqrt();
    let n_term = |n: i64| {
        let u = (n as f64 + shift) / la;
        2.0 * su2_multiplicity(n).abs() * root_env(u * u)
    };
    let m_term = |m: i64| {
        let v = (m as f64 + s) / lb;
        root_env(v * v)
    };
    let n_out = outward_sum(n_hi + 1, 1, n_term) + outward_sum(n_lo - 1, -1, n_term);
    let m_out = outward_sum(m_hi + 1, 1, m_term) + outward_sum(m_lo - 1, -1, m_term);
    let n_in = compensated_sum((n_lo..=n_hi).map(n_term));
    let m_in = compensated_sum((m_lo..=m_hi).map(m_term));
    let tail_bound = n_out * (m_in + m_out) + n_in * m_out;

    Ok(ActionResult {
        value,
        method: Method::Direct,
        tail_bound,
        term_count: ((n_hi - n_lo + 1) * (m_hi - m_lo + 1)) as u64,
    })
}

/// Leading and subleading coefficients `(πΛ⁴βa³, 2π(3t−1)(3t−2)Λ²βa)`.
fn product_coefficients(geom: &ProductGeometry) -> (f64, f64) {
    let l = geom.lambda;
    (
        PI * l.powi(4) * geom.beta * geom.a.powi(3),
        2.0 * PI * connection_factor(geom.t) * l * l * geom.beta * geom.a,
    )
}

/// `πΛ⁴βa³ ∫₀^∞ r h(r) dr + 2π(3t−1)(3t−2) Λ²βa ∫₀^∞ h(r) dr`.
pub fn product_trace_asymptotic(geom: &ProductGeometry, h: &TestFunction) -> Result<ActionResult> {
    geom.validate()?;
    let (lead, sub) = product_coefficients(geom);
    let mut value = lead * h.first_moment()?;
    if sub != 0.0 {
        value += sub * h.integral()?;
    }
    Ok(ActionResult::asymptotic(value, 2))
}

/// The variant with `h(r²)` in both radial integrals:
/// `πΛ⁴βa³ ∫₀^∞ r h(r²) dr + 2π(3t−1)(3t−2) Λ²βa ∫₀^∞ h(r²) dr`.
pub fn product_trace_asymptotic_printed(geom: &ProductGeometry, h: &TestFunction) -> Result<ActionResult> {
    geom.validate()?;
    let (lead, sub) = product_coefficients(geom);
    let mut value = lead * h.square_moment(1)?;
    if sub != 0.0 {
        value += sub * h.square_moment(0)?;
    }
    Ok(ActionResult::asymptotic(value, 2))
}

/// `𝒱(x) = ∫₀^∞ r (h(r+x) − h(r)) dr`.
pub fn potential_v(h: &TestFunction, x: f64) -> Result<f64> {
    check_shift(x)?;
    h.potential_v(x)
}

/// `𝒲(x) = ∫₀^x h(r) dr`.
pub fn potential_w(h: &TestFunction, x: f64) -> Result<f64> {
    check_shift(x)?;
    h.potential_w(x)
}

fn check_shift(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(invalid("x", format!("must be non-negative, got {x}")))
    }
}

/// Expansion of `Tr h((D² + φ²)/Λ²)` for any kind; callers enforce the
/// kind restriction.
fn shifted_expansion(geom: &ProductGeometry, h: &TestFunction, phi: f64) -> Result<f64> {
    let base = product_trace_asymptotic(geom, h)?.value;
    let x = geom.shift_of(phi);
    if x == 0.0 {
        return Ok(base);
    }
    let (lead, sub) = product_coefficients(geom);
    let mut value = base + lead * h.potential_v(x)?;
    if sub != 0.0 {
        value -= sub * h.potential_w(x)?;
    }
    Ok(value)
}

/// Asymptotic `Tr h((D² + φ²)/Λ²)` for `h(x) = P(πx) e^{−πx}`:
/// the product expansion plus `πΛ⁴βa³ 𝒱(x) − 2πΛ²βa(3t−1)(3t−2) 𝒲(x)`
/// with `x = φ²/Λ²`.
pub fn shifted_trace_asymptotic(geom: &ProductGeometry, h: &TestFunction, phi: f64) -> Result<ActionResult> {
    geom.validate()?;
    if !matches!(h, TestFunction::PolyExp { .. }) {
        return Err(Error::UnsupportedKind {
            kind: h.kind_name(),
            operation: "shifted asymptotic expansion (needs polyexp)",
        });
    }
    if !(phi.is_finite() && phi >= 0.0) {
        return Err(invalid("phi", format!("must be non-negative, got {phi}")));
    }
    Ok(ActionResult::asymptotic(shifted_expansion(geom, h, phi)?, 4))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    pub name: &'static str,
    pub value: f64,
}

/// Plateau-cutoff expansion evaluated three ways.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlateauExpansion {
    /// The six-term expression as usually stated, evaluated as written.
    pub verbatim: f64,
    pub verbatim_terms: Vec<Term>,
    /// The expansion obtained by specializing the 𝒱/𝒲 form to a plateau.
    pub rederived: f64,
    pub rederived_terms: Vec<Term>,
    pub direct: ActionResult,
    pub verbatim_rel_diff: f64,
    pub rederived_rel_diff: f64,
}

/// Evaluates the plateau expansion (both the commonly stated and the
/// re-derived form) and the direct sum. Requires `φ²/Λ² ≤ c`.
///
/// Re-derived form, with `I = ∫₀^∞ h` and `h₀ = h(0)`:
///
/// ```text
/// πΛ⁴βa³ ∫₀^∞ r h(r) dr + 2π(3t−1)(3t−2) Λ²βa I
///   − πΛ²βa³ φ² I + (π/2) βa³ h₀ φ⁴ − 2πβa (3t−1)(3t−2) h₀ φ²
/// ```
pub fn plateau_expansion(
    geom: &ProductGeometry,
    h: &TestFunction,
    phi: f64,
    tail_eps: f64,
) -> Result<PlateauExpansion> {
    geom.validate()?;
    let (h0, c) = match h {
        TestFunction::Plateau { height, c, .. } => (*height, *c),
        _ => {
            return Err(Error::UnsupportedKind {
                kind: h.kind_name(),
                operation: "plateau expansion",
            })
        }
    };
    if !(phi.is_finite() && phi >= 0.0) {
        return Err(invalid("phi", format!("must be non-negative, got {phi}")));
    }
    let x = geom.shift_of(phi);
    if x > c * (1.0 + PLATEAU_EDGE_SLACK) {
        return Err(Error::Precondition(format!(
            "phi^2/lambda^2 = {x} exceeds the plateau length c = {c}"
        )));
    }
    let (l, a, b) = (geom.lambda, geom.a, geom.beta);
    let cf = connection_factor(geom.t);
    let phi2 = phi * phi;
    let integral = h.integral()?;

    let verbatim_terms = vec![
        Term {
            name: "pi L^4 b a^3 int r h(r^2)",
            value: PI * l.powi(4) * b * a.powi(3) * h.square_moment(1)?,
        },
        Term {
            name: "2pi cf L^2 b a int h(r^2)",
            value: 2.0 * PI * cf * l * l * b * a * h.square_moment(0)?,
        },
        Term {
            name: "-pi L^2 b a^3 int h",
            value: -PI * l * l * b * a.powi(3) * integral,
        },
        Term {
            name: "pi/2 b a h0 phi^2",
            value: 0.5 * PI * b * a * h0 * phi2,
        },
        Term {
            name: "pi/2 b a^3 h0 phi^4",
            value: 0.5 * PI * b * a.powi(3) * h0 * phi2 * phi2,
        },
        Term {
            name: "-2pi b a cf h0 phi^2",
            value: -2.0 * PI * b * a * cf * h0 * phi2,
        },
    ];
    let rederived_terms = vec![
        Term {
            name: "pi L^4 b a^3 int r h(r)",
            value: PI * l.powi(4) * b * a.powi(3) * h.first_moment()?,
        },
        Term {
            name: "2pi cf L^2 b a int h",
            value: 2.0 * PI * cf * l * l * b * a * integral,
        },
        Term {
            name: "-pi L^2 b a^3 phi^2 int h",
            value: -PI * l * l * b * a.powi(3) * phi2 * integral,
        },
        Term {
            name: "pi/2 b a^3 h0 phi^4",
            value: 0.5 * PI * b * a.powi(3) * h0 * phi2 * phi2,
        },
        Term {
            name: "-2pi b a cf h0 phi^2",
            value: -2.0 * PI * b * a * cf * h0 * phi2,
        },
    ];
    let verbatim = compensated_sum(verbatim_terms.iter().map(|t| t.value));
    let rederived = compensated_sum(rederived_terms.iter().map(|t| t.value));
    let direct = shifted_trace_direct(geom, h, phi, tail_eps)?;
    Ok(PlateauExpansion {
        verbatim,
        verbatim_terms,
        rederived,
        rederived_terms,
        verbatim_rel_diff: rel_diff(direct.value, verbatim),
        rederived_rel_diff: rel_diff(direct.value, rederived),
        direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_PI: f64 = 1.772_453_850_905_516;

    #[test]
    fn fhat_gaussian_at_zero() {
        let g = TestFunction::Gaussian;
        assert_eq!(fhat_m(&g, 1, 0.0).unwrap(), Complex64::new(0.0, 0.0));
        assert!((fhat_m(&g, 0, 0.0).unwrap().re - SQRT_PI).abs() < 1e-13);
        assert!((fhat_m(&g, 2, 0.0).unwrap().re - SQRT_PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn fhat_gaussian_off_zero() {
        // ∫ e^{−y²} e^{−2πixy} dy = √π e^{−π²x²}
        let g = TestFunction::Gaussian;
        for x in [0.1, 0.3, 0.7] {
            let v = fhat_m(&g, 0, x).unwrap();
            assert!((v.re - SQRT_PI * (-PI * PI * x * x).exp()).abs() < 1e-12);
            assert_eq!(v.im, 0.0);
            // y e^{−y²} ↦ −iπx √π e^{−π²x²}
            let v = fhat_m(&g, 1, x).unwrap();
            assert!((v.im + PI * x * SQRT_PI * (-PI * PI * x * x).exp()).abs() < 1e-12);
        }
        assert!(fhat_m(&g, 3, 0.0).is_err());
    }

    #[test]
    fn odd_moment_vanishes_for_every_kind() {
        for f in [
            TestFunction::Gaussian,
            TestFunction::poly_exp(vec![1.0, 2.0]).unwrap(),
            TestFunction::plateau(1.0, 0.5).unwrap(),
        ] {
            assert_eq!(fhat_m(&f, 1, 0.0).unwrap().norm(), 0.0);
        }
    }

    #[test]
    fn su2_levi_civita_value() {
        let g = TestFunction::Gaussian;
        let asym = trace_asymptotic_su2(0.5, 10.0, &g).unwrap().value;
        let exact = 1000.0 * SQRT_PI / 2.0 - 10.0 * 0.25 * SQRT_PI;
        assert!((asym - exact).abs() < 1e-10 * exact);
        assert!((asym - 881.795_790_9).abs() < 1e-6);
        let direct = trace_direct_su2(0.5, 10.0, &g, DEFAULT_TAIL_EPS).unwrap();
        assert!(rel_diff(direct.value, asym) < 1e-10);
        assert!(direct.tail_bound >= 0.0 && direct.tail_bound < 1e-12);
    }

    #[test]
    fn su2_cubic_has_no_linear_term() {
        let g = TestFunction::Gaussian;
        let asym = trace_asymptotic_su2(1.0 / 3.0, 3.0, &g).unwrap().value;
        assert!((asym - 27.0 * SQRT_PI / 2.0).abs() < 1e-12);
        assert!((asym - 23.928_127).abs() < 1e-6);
        let direct = trace_direct_su2(1.0 / 3.0, 5.0, &g, DEFAULT_TAIL_EPS).unwrap();
        assert!(rel_diff(125.0 * SQRT_PI / 2.0, direct.value) < 1e-10);
    }

    #[test]
    fn su2_zero_function() {
        let zero = TestFunction::poly_exp(vec![0.0]).unwrap();
        let r = trace_direct_su2(0.3, 0.5, &zero, DEFAULT_TAIL_EPS).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn su2_t_symmetry() {
        let g = TestFunction::Gaussian;
        for t in [0.0, 0.1, 0.25, 0.4] {
            let a = trace_direct_su2(t, 4.0, &g, DEFAULT_TAIL_EPS).unwrap().value;
            let b = trace_direct_su2(1.0 - t, 4.0, &g, DEFAULT_TAIL_EPS).unwrap().value;
            assert!(rel_diff(a, b) < 1e-13);
            let a = trace_asymptotic_su2(t, 4.0, &g).unwrap().value;
            let b = trace_asymptotic_su2(1.0 - t, 4.0, &g).unwrap().value;
            assert!(rel_diff(a, b) < 1e-13);
        }
    }

    #[test]
    fn product_gaussian_poisson() {
        let g = TestFunction::Gaussian;
        let geom = ProductGeometry::new(1.0, 1.0, 0.0, 0.5, 5.0).unwrap();
        let d = product_trace_direct(&geom, &g, DEFAULT_TAIL_EPS).unwrap();
        let a = product_trace_asymptotic(&geom, &g).unwrap();
        assert!(rel_diff(d.value, a.value) < 1e-8, "{} vs {}", d.value, a.value);
        // Gaussian radial integrals are both 1 in the corrected form
        let expect = PI * 625.0 + 2.0 * PI * (-0.25) * 25.0;
        assert!(rel_diff(expect, a.value) < 1e-14);
        let printed = product_trace_asymptotic_printed(&geom, &g).unwrap();
        let expect = PI * 625.0 * 0.5 + 2.0 * PI * (-0.25) * 25.0 * SQRT_PI / 2.0;
        assert!(rel_diff(expect, printed.value) < 1e-14);
        assert!(rel_diff(d.value, printed.value) > 0.1);
    }

    #[test]
    fn product_linear_in_beta_and_cubic_drop() {
        let g = TestFunction::Gaussian;
        let g1 = ProductGeometry::new(1.3, 0.7, 0.2, 0.5, 3.0).unwrap();
        let g2 = ProductGeometry { beta: 1.4, ..g1 };
        let a1 = product_trace_asymptotic(&g1, &g).unwrap().value;
        let a2 = product_trace_asymptotic(&g2, &g).unwrap().value;
        assert_eq!(2.0 * a1, a2);
        let cubic = ProductGeometry { t: 1.0 / 3.0, ..g1 };
        let v = product_trace_asymptotic(&cubic, &g).unwrap().value;
        assert_eq!(v, PI * 81.0 * 0.7 * 1.3f64.powi(3));
    }

    #[test]
    fn s_is_reduced_mod_one() {
        let g = ProductGeometry::new(1.0, 1.0, 1.25, 0.5, 3.0).unwrap();
        assert_eq!(g.s, 0.25);
        let g = ProductGeometry::new(1.0, 1.0, -0.25, 0.5, 3.0).unwrap();
        assert_eq!(g.s, 0.75);
        assert!(ProductGeometry::new(0.0, 1.0, 0.0, 0.5, 3.0).is_err());
        assert!(ProductGeometry::new(1.0, -1.0, 0.0, 0.5, 3.0).is_err());
        assert!(ProductGeometry::new(1.0, 1.0, 0.0, 0.5, f64::NAN).is_err());
    }

    #[test]
    fn chunking_does_not_change_the_sum() {
        let h = TestFunction::exp_pi();
        let geom = ProductGeometry::new(1.0, 1.0, 0.3, 0.4, 4.0).unwrap();
        let base = shifted_trace_direct(&geom, &h, 2.0, DEFAULT_TAIL_EPS).unwrap().value;
        for k in [1, 2, 3, 7, 64] {
            let v = shifted_trace_direct_chunked(&geom, &h, 2.0, DEFAULT_TAIL_EPS, k)
                .unwrap()
                .value;
            assert_eq!(v, base);
        }
    }

    #[test]
    fn shifted_matches_direct_for_exp_pi() {
        let h = TestFunction::exp_pi();
        let geom = ProductGeometry::new(1.0, 1.0, 0.0, 0.5, 4.0).unwrap();
        let phi = 4.0; // x = 1
        let a = shifted_trace_asymptotic(&geom, &h, phi).unwrap().value;
        let d = shifted_trace_direct(&geom, &h, phi, DEFAULT_TAIL_EPS).unwrap().value;
        assert!(rel_diff(d, a) < 1e-6, "{d} vs {a}");
        let a0 = shifted_trace_asymptotic(&geom, &h, 0.0).unwrap().value;
        assert_eq!(a0, product_trace_asymptotic(&geom, &h).unwrap().value);
        assert!(shifted_trace_asymptotic(&geom, &TestFunction::Gaussian, 1.0).is_err());
    }

    #[test]
    fn plateau_rederived_agrees_with_general_form() {
        let h = TestFunction::plateau(1.0, 0.5).unwrap();
        let geom = ProductGeometry::new(1.0, 1.0, 0.0, 0.5, 6.0).unwrap();
        for phi in [0.0, 1.0, 3.0, 6.0] {
            let p = plateau_expansion(&geom, &h, phi, DEFAULT_TAIL_EPS).unwrap();
            let general = shifted_expansion(&geom, &h, phi).unwrap();
            assert!(rel_diff(general, p.rederived) < 1e-12);
        }
        assert!(plateau_expansion(&geom, &h, 6.1, DEFAULT_TAIL_EPS).is_err());
        assert!(plateau_expansion(&geom, &TestFunction::Gaussian, 1.0, DEFAULT_TAIL_EPS).is_err());
    }

    #[test]
    fn degenerate_plateau() {
        let h = TestFunction::plateau_with_height(0.0, 1.0, 0.5).unwrap();
        let geom = ProductGeometry::new(1.0, 1.0, 0.0, 0.5, 3.0).unwrap();
        let p = plateau_expansion(&geom, &h, 2.0, DEFAULT_TAIL_EPS).unwrap();
        assert_eq!(p.verbatim, 0.0);
        assert_eq!(p.rederived, 0.0);
        assert_eq!(p.direct.value, 0.0);
    }
}
