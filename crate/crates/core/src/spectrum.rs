//! Closed-form spectra of `D_t²`.
//!
//! On SU(2) the plus branch of block `m` and the minus branch of block
//! `m = −n − 2` combine into a single stream indexed by `n ∈ ℤ`:
//! eigenvalue `(n + 3t)²` with multiplicity `(n+1)(n+2)` (zero for
//! `n ∈ {−1, −2}`, which are skipped). The spinor module is a single copy of
//! `V_1`, so no extra global factor enters.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::rep_theory::{cg_branches, tt_eigenvalue, Shift, Sign, Weight};

/// Largest `|n|` accepted by the SU(2) stream; keeps `(n+1)(n+2)` in `u64`.
pub const MAX_INDEX: i64 = 2_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Provenance {
    /// Stream index `n`, with the Peter–Weyl block and branch it comes from.
    Su2 {
        n: i64,
        block: u32,
        sign: Sign,
    },
    Su3 {
        weight: Weight,
        gamma: Shift,
        sign: Sign,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralLine {
    pub eigenvalue: f64,
    pub multiplicity: u64,
    pub provenance: Provenance,
}

impl SpectralLine {
    /// Stream index for SU(2) lines.
    pub fn index(&self) -> Option<i64> {
        match self.provenance {
            Provenance::Su2 { n, .. } => Some(n),
            Provenance::Su3 { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumQuery {
    /// Inclusive index window.
    Window { n_min: i64, n_max: i64 },
    /// All lines with eigenvalue `≤ e_max`.
    Cutoff { e_max: f64 },
}

impl SpectrumQuery {
    pub fn window(n_min: i64, n_max: i64) -> Result<Self> {
        let q = SpectrumQuery::Window { n_min, n_max };
        q.validate()?;
        Ok(q)
    }

    pub fn cutoff(e_max: f64) -> Result<Self> {
        let q = SpectrumQuery::Cutoff { e_max };
        q.validate()?;
        Ok(q)
    }

    /// Window covering every line of the Peter–Weyl blocks `m ≤ m_max`:
    /// `n ∈ [−(m_max+2), m_max]`.
    pub fn blocks(m_max: u32) -> Self {
        SpectrumQuery::Window {
            n_min: -(m_max as i64) - 2,
            n_max: m_max as i64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SpectrumQuery::Window { n_min, n_max } => {
                if n_min > n_max {
                    return Err(invalid("window", format!("empty window [{n_min}, {n_max}]")));
                }
                if n_min.abs() > MAX_INDEX || n_max.abs() > MAX_INDEX {
                    return Err(invalid("window", format!("|n| must not exceed {MAX_INDEX}")));
                }
            }
            SpectrumQuery::Cutoff { e_max } => {
                if !(e_max > 0.0 && e_max.is_finite()) {
                    return Err(invalid(
                        "e_max",
                        format!("cutoff must be positive and finite, got {e_max}"),
                    ));
                }
                if e_max.sqrt() + 3.0 > MAX_INDEX as f64 {
                    return Err(invalid("e_max", "cutoff too large"));
                }
            }
        }
        Ok(())
    }
}

fn validate_t(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(invalid("t", format!("must be finite, got {t}")));
    }
    Ok(())
}

/// The SU(2) line with index `n`, or `None` for `n ∈ {−1, −2}`.
pub fn su2_line(t: f64, n: i64) -> Option<SpectralLine> {
    if n == -1 || n == -2 {
        return None;
    }
    let u = n as f64 + 3.0 * t;
    let (block, sign) = if n >= 0 {
        (n as u32, Sign::Plus)
    } else {
        ((-n - 2) as u32, Sign::Minus)
    };
    let multiplicity = ((n + 1) as i128 * (n + 2) as i128) as u64;
    Some(SpectralLine {
        eigenvalue: u * u,
        multiplicity,
        provenance: Provenance::Su2 { n, block, sign },
    })
}

/// Lazy stream of SU(2) lines `((n+3t)², (n+1)(n+2))`, ascending in `n`.
pub fn su2_spectrum(t: f64, query: SpectrumQuery) -> Result<impl Iterator<Item = SpectralLine>> {
    validate_t(t)?;
    query.validate()?;
    let (lo, hi, cutoff) = match query {
        SpectrumQuery::Window { n_min, n_max } => (n_min, n_max, None),
        SpectrumQuery::Cutoff { e_max } => {
            let r = e_max.sqrt();
            let lo = (-r - 3.0 * t).floor() as i64 - 1;
            let hi = (r - 3.0 * t).ceil() as i64 + 1;
            (lo, hi, Some(e_max))
        }
    };
    Ok((lo..=hi)
        .filter_map(move |n| su2_line(t, n))
        .filter(move |l| cutoff.is_none_or(|e| l.eigenvalue <= e)))
}

/// Lines of the Peter–Weyl block `V_m ⊗ V_m*`: the plus branch
/// `((m+3t)², (m+2)(m+1))` and, for `m ≥ 1`, the minus branch
/// `((m+2−3t)², m(m+1))`.
pub fn su2_block_lines(t: f64, m: u32) -> Vec<SpectralLine> {
    let w = Weight::su2(m);
    cg_branches(w)
        .into_iter()
        .filter(|b| b.is_present())
        .map(|b| {
            let n = match b.sign {
                Sign::Plus => m as i64,
                Sign::Minus => -(m as i64) - 2,
            };
            SpectralLine {
                eigenvalue: tt_eigenvalue(t, w, &b).expect("SU(2) branch"),
                multiplicity: b.multiplicity,
                provenance: Provenance::Su2 {
                    n,
                    block: m,
                    sign: b.sign,
                },
            }
        })
        .collect()
}

/// `T_t` eigenvalues on `V_ρ ⊗ V_λ` for SU(3), one line per present branch.
pub fn su3_tt_lines(t: f64, weight: Weight) -> Result<Vec<SpectralLine>> {
    validate_t(t)?;
    if !matches!(weight, Weight::Su3 { .. }) {
        return Err(crate::Error::WrongGroup {
            weight: weight.to_string(),
            group: "SU(3)",
        });
    }
    cg_branches(weight)
        .into_iter()
        .filter(|b| b.is_present())
        .map(|b| {
            Ok(SpectralLine {
                eigenvalue: tt_eigenvalue(t, weight, &b)?,
                multiplicity: b.multiplicity,
                provenance: Provenance::Su3 {
                    weight,
                    gamma: b.gamma,
                    sign: b.sign,
                },
            })
        })
        .collect()
}
