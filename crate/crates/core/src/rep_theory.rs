//! Closed-form representation theory of SU(2) and SU(3).
//!
//! Weights are written in the fundamental-weight basis. The invariant metric
//! on weight space is normalized so that the Casimir `-Σ X_i²` of an
//! orthonormal basis acts on `V_m` (SU(2)) as `m(m+2)`; the SU(3) metric uses
//! the analogous basis `X_a = -i λ_a` built from the Gell-Mann matrices.
//!
//! The Dirac Laplacian restricted to `V_ρ ⊗ V_λ` is a polynomial in Casimirs,
//! so its eigenvalue on each Clebsch–Gordan component `V_{λ±γ}` is
//!
//! ```text
//! |λ + ρ ± (3t−1)γ|² + (3t−1)(3t−2)(|ρ|² − |γ|²)
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scale of the SU(3) weight metric relative to the Gram matrix
/// `(1/3)[[2,1],[1,2]]` of the fundamental weights (roots of length² 2).
///
/// With `X_a = -i λ_a` the Casimir on the defining representation is `16/3`,
/// whereas the unscaled form gives `⟨(3,2),(1,0)⟩ = 8/3`.
pub const SU3_METRIC_SCALE: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    SU2,
    SU3,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::SU2 => "SU(2)",
            Group::SU3 => "SU(3)",
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Group::SU2 => 1,
            Group::SU3 => 2,
        }
    }

    /// Real dimension of the Lie algebra.
    pub fn algebra_dim(self) -> usize {
        match self {
            Group::SU2 => 3,
            Group::SU3 => 8,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Highest weight of an irreducible representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Weight {
    Su2 { m: u32 },
    Su3 { p: u32, q: u32 },
}

impl Weight {
    pub fn su2(m: u32) -> Self {
        Weight::Su2 { m }
    }

    pub fn su3(p: u32, q: u32) -> Self {
        Weight::Su3 { p, q }
    }

    pub fn group(self) -> Group {
        match self {
            Weight::Su2 { .. } => Group::SU2,
            Weight::Su3 { .. } => Group::SU3,
        }
    }

    /// Coordinates in the fundamental-weight basis (second entry 0 for SU(2)).
    pub fn coords(self) -> [f64; 2] {
        match self {
            Weight::Su2 { m } => [m as f64, 0.0],
            Weight::Su3 { p, q } => [p as f64, q as f64],
        }
    }

    /// Dimension of `V_λ` (Weyl dimension formula).
    pub fn dimension(self) -> u64 {
        match self {
            Weight::Su2 { m } => m as u64 + 1,
            Weight::Su3 { p, q } => {
                let (p, q) = (p as u64, q as u64);
                (p + 1) * (q + 1) * (p + q + 2) / 2
            }
        }
    }

    /// Shift by an integral weight; `None` when the result leaves the
    /// dominant chamber.
    pub fn shifted(self, shift: Shift, sign: Sign) -> Option<Weight> {
        let s = sign.factor();
        match (self, shift) {
            (Weight::Su2 { m }, Shift::Su2(g)) => {
                let v = m as i64 + s * g as i64;
                (v >= 0).then_some(Weight::Su2 { m: v as u32 })
            }
            (Weight::Su3 { p, q }, Shift::Su3(a, b)) => {
                let np = p as i64 + s * a as i64;
                let nq = q as i64 + s * b as i64;
                (np >= 0 && nq >= 0).then_some(Weight::Su3 {
                    p: np as u32,
                    q: nq as u32,
                })
            }
            _ => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Su2 { m } => write!(f, "{m}"),
            Weight::Su3 { p, q } => write!(f, "({p},{q})"),
        }
    }
}

/// Weight-shaped shift `γ`; components may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shift {
    Su2(i32),
    Su3(i32, i32),
}

impl Shift {
    pub fn coords(self) -> [f64; 2] {
        match self {
            Shift::Su2(g) => [g as f64, 0.0],
            Shift::Su3(a, b) => [a as f64, b as f64],
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shift::Su2(g) => write!(f, "{g}"),
            Shift::Su3(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Weyl vector `ρ`, half the sum of the positive roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylVector(pub Weight);

impl WeylVector {
    pub fn weight(self) -> Weight {
        self.0
    }

    pub fn norm_sq(self) -> f64 {
        let m = WeightMetric::for_group(self.0.group());
        let c = self.0.coords();
        m.inner(c, c)
    }
}

pub fn weyl_vector(group: Group) -> WeylVector {
    match group {
        Group::SU2 => WeylVector(Weight::su2(1)),
        Group::SU3 => WeylVector(Weight::su3(1, 1)),
    }
}

/// Invariant bilinear form on weight space, in fundamental-weight coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightMetric {
    gram: [[f64; 2]; 2],
}

impl WeightMetric {
    pub fn for_group(group: Group) -> Self {
        match group {
            Group::SU2 => WeightMetric {
                gram: [[1.0, 0.0], [0.0, 0.0]],
            },
            Group::SU3 => {
                let k = SU3_METRIC_SCALE / 3.0;
                WeightMetric {
                    gram: [[2.0 * k, k], [k, 2.0 * k]],
                }
            }
        }
    }

    pub fn gram(&self) -> [[f64; 2]; 2] {
        self.gram
    }

    pub fn inner(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        let g = &self.gram;
        a[0] * (g[0][0] * b[0] + g[0][1] * b[1]) + a[1] * (g[1][0] * b[0] + g[1][1] * b[1])
    }

    pub fn norm_sq(&self, a: [f64; 2]) -> f64 {
        self.inner(a, a)
    }
}

/// Scalar by which the Casimir `-Σ X_i²` acts on `V_λ`: `⟨λ+2ρ, λ⟩`.
pub fn casimir_scalar(weight: Weight) -> f64 {
    let group = weight.group();
    let metric = WeightMetric::for_group(group);
    let l = weight.coords();
    let r = weyl_vector(group).0.coords();
    metric.inner([l[0] + 2.0 * r[0], l[1] + 2.0 * r[1]], l)
}

/// The factor `(3t−1)(3t−2)` multiplying the subleading terms of the
/// spectral action. Vanishes at `t = 1/3` and `t = 2/3`.
pub fn connection_factor(t: f64) -> f64 {
    (3.0 * t - 1.0) * (3.0 * t - 2.0)
}

/// One Clebsch–Gordan component `V_{λ±γ}` of `V_ρ ⊗ V_λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub gamma: Shift,
    pub sign: Sign,
    /// `None` when the component is absent.
    pub target: Option<Weight>,
    /// Dimension of the target block inside `V_ρ ⊗ V_λ`.
    pub block_dim: u64,
    /// Multiplicity in `S ⊗ L²(G)`, i.e. `block_dim · dim V_λ`.
    pub multiplicity: u64,
}

impl Branch {
    pub fn is_present(&self) -> bool {
        self.target.is_some()
    }
}

fn su3_shifts() -> [Shift; 4] {
    // lexicographic in (a, b)
    [Shift::Su3(-1, 2), Shift::Su3(0, 0), Shift::Su3(1, 1), Shift::Su3(2, -1)]
}

/// `¼(p+1±a)(p+1)(q+1±b)(q+1)(p+q+2±(a+b))(p+q+2)`.
pub fn su3_branch_multiplicity(p: u32, q: u32, gamma: Shift, sign: Sign) -> i64 {
    let (a, b) = match gamma {
        Shift::Su3(a, b) => (a as i64, b as i64),
        Shift::Su2(_) => return 0,
    };
    let s = sign.factor();
    let (p, q) = (p as i64, q as i64);
    (p + 1 + s * a) * (p + 1) * (q + 1 + s * b) * (q + 1) * (p + q + 2 + s * (a + b)) * (p + q + 2) / 4
}

/// Clebsch–Gordan decomposition of `V_ρ ⊗ V_λ`.
///
/// Ordering is deterministic: all `+` branches first, then `−`, each in
/// lexicographic order of `γ`. Absent components are kept with
/// multiplicity 0.
///
/// For SU(3) the zero weight of the adjoint contributes `V_λ` once per
/// nonzero Dynkin label of `λ`; the first copy is labelled `+`, the second `−`.
pub fn cg_branches(weight: Weight) -> Vec<Branch> {
    match weight {
        Weight::Su2 { m } => [Sign::Plus, Sign::Minus]
            .into_iter()
            .map(|sign| {
                let gamma = Shift::Su2(1);
                let target = weight.shifted(gamma, sign);
                let block_dim = target.map_or(0, Weight::dimension);
                Branch {
                    gamma,
                    sign,
                    target,
                    block_dim,
                    multiplicity: block_dim * (m as u64 + 1),
                }
            })
            .collect(),
        Weight::Su3 { p, q } => {
            let dim = weight.dimension();
            let mut out = Vec::with_capacity(8);
            for sign in [Sign::Plus, Sign::Minus] {
                for gamma in su3_shifts() {
                    let target = if gamma == Shift::Su3(0, 0) {
                        let copies = (p > 0) as u32 + (q > 0) as u32;
                        let needed = if sign == Sign::Plus { 1 } else { 2 };
                        (copies >= needed).then_some(weight)
                    } else {
                        weight.shifted(gamma, sign)
                    };
                    let (block_dim, multiplicity) = match target {
                        Some(tw) => {
                            let mult = su3_branch_multiplicity(p, q, gamma, sign);
                            debug_assert_eq!(mult as u64, tw.dimension() * dim);
                            (tw.dimension(), mult as u64)
                        }
                        None => (0, 0),
                    };
                    out.push(Branch {
                        gamma,
                        sign,
                        target,
                        block_dim,
                        multiplicity,
                    });
                }
            }
            out
        }
    }
}

/// Eigenvalue of `T_t` (hence of `D_t²`) on the branch `V_{λ±γ}`.
pub fn tt_eigenvalue(t: f64, weight: Weight, branch: &Branch) -> Result<f64> {
    let group = weight.group();
    let metric = WeightMetric::for_group(group);
    let gamma = branch.gamma.coords();
    match (weight, branch.gamma) {
        (Weight::Su2 { .. }, Shift::Su2(_)) | (Weight::Su3 { .. }, Shift::Su3(..)) => {}
        _ => {
            return Err(Error::WrongGroup {
                weight: branch.gamma.to_string(),
                group: group.name(),
            })
        }
    }
    let l = weight.coords();
    let r = weyl_vector(group).0.coords();
    let k = branch.sign.factor() as f64 * (3.0 * t - 1.0);
    let v = [l[0] + r[0] + k * gamma[0], l[1] + r[1] + k * gamma[1]];
    let rho_sq = metric.norm_sq(r);
    let gamma_sq = metric.norm_sq(gamma);
    Ok(metric.norm_sq(v) + connection_factor(t) * (rho_sq - gamma_sq))
}
