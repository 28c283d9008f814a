//! Brute-force matrix oracle for the Dirac family.
//!
//! Builds explicit Clifford generators, representation matrices of `su(2)` and
//! `su(3)`, the cubic element `H`, the map `π : g → Cl(g)` and the assembled
//! operator `D_t = Σ c_i ⊗ ρ(X_i) + t H ⊗ 1` on `S ⊗ V_λ`, then checks the
//! algebraic identities numerically.
//!
//! Conventions: `su(2)` uses the orthonormal basis with `[X_1, X_2] = 2 X_3`
//! (cyclic), realized as `c_k = −i σ_k` in `Cl(3)` and as `−2i J_k` on the
//! spin-`m/2` representation. `su(3)` uses `X_a = −i λ_a` with the Gell-Mann
//! matrices `λ_a`. In both cases `⟨X, Y⟩ = −½ tr(XY)` on the defining
//! representation.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    self, c, commutator, eigenvalues_hermitian, frobenius, group_degenerate, hermitian_defect, identity, max_abs,
    zeros, DenseMatrix,
};
use crate::rep_theory::{self, casimir_scalar, cg_branches, tt_eigenvalue, Group, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LieAlgebra {
    Su2,
    Su3,
    Abelian(usize),
}

/// Orthonormal basis of a Lie algebra, stored as structure constants
/// `f_{ijk} = ⟨X_i, [X_j, X_k]⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieBasis {
    algebra: LieAlgebra,
    dim: usize,
    f: Vec<f64>,
}

impl LieBasis {
    fn from_constants(algebra: LieAlgebra, dim: usize, entries: &[((usize, usize, usize), f64)]) -> Self {
        let mut b = LieBasis {
            algebra,
            dim,
            f: vec![0.0; dim * dim * dim],
        };
        for &((i, j, k), v) in entries {
            // all permutations with sign
            for (p, s) in [
                ((i, j, k), 1.0),
                ((j, k, i), 1.0),
                ((k, i, j), 1.0),
                ((j, i, k), -1.0),
                ((i, k, j), -1.0),
                ((k, j, i), -1.0),
            ] {
                let idx = b.index(p.0, p.1, p.2);
                b.f[idx] = s * v;
            }
        }
        b
    }

    /// `f_{ijk} = 2 ε_{ijk}`.
    pub fn su2() -> Self {
        Self::from_constants(LieAlgebra::Su2, 3, &[((0, 1, 2), 2.0)])
    }

    /// Twice the Gell-Mann structure constants.
    pub fn su3() -> Self {
        let h = 0.5;
        let r = 3f64.sqrt() / 2.0;
        let table = [
            ((0, 1, 2), 1.0),
            ((0, 3, 6), h),
            ((1, 3, 5), h),
            ((1, 4, 6), h),
            ((2, 3, 4), h),
            ((0, 4, 5), -h),
            ((2, 5, 6), -h),
            ((3, 4, 7), r),
            ((5, 6, 7), r),
        ]
        .map(|(ijk, v)| (ijk, 2.0 * v));
        Self::from_constants(LieAlgebra::Su3, 8, &table)
    }

    pub fn abelian(dim: usize) -> Self {
        LieBasis {
            algebra: LieAlgebra::Abelian(dim),
            dim,
            f: vec![0.0; dim * dim * dim],
        }
    }

    pub fn for_group(group: Group) -> Self {
        match group {
            Group::SU2 => Self::su2(),
            Group::SU3 => Self::su3(),
        }
    }

    /// Negative-control hook: adds `delta` to the single entry `f_{ijk}`,
    /// breaking antisymmetry.
    pub fn with_perturbed_constant(mut self, i: usize, j: usize, k: usize, delta: f64) -> Self {
        let idx = self.index(i, j, k);
        self.f[idx] += delta;
        self
    }

    #[inline]
    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn algebra(&self) -> LieAlgebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn structure(&self, i: usize, j: usize, k: usize) -> f64 {
        self.f[self.index(i, j, k)]
    }

    /// `|ρ|²` as given by representation theory (0 for abelian algebras).
    pub fn weyl_norm_sq(&self) -> f64 {
        match self.algebra {
            LieAlgebra::Su2 => rep_theory::weyl_vector(Group::SU2).norm_sq(),
            LieAlgebra::Su3 => rep_theory::weyl_vector(Group::SU3).norm_sq(),
            LieAlgebra::Abelian(_) => 0.0,
        }
    }

    /// Largest deviation from total antisymmetry of `f`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.structure(i, j, k);
                    worst = worst
                        .max((v + self.structure(i, k, j)).abs())
                        .max((v - self.structure(j, k, i)).abs());
                }
            }
        }
        worst
    }

    /// Largest Jacobi-identity residual over all basis triples.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.dim;
        // [X_i, X_j] = Σ_m f_{mij} X_m
        let br = |i, j, m| self.structure(m, i, j);
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = 0.0;
                        for m in 0..n {
                            s += br(i, j, m) * br(m, k, l) + br(j, k, m) * br(m, i, l) + br(k, i, m) * br(m, j, l);
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Matrix of `ad(X_i)` in the basis: `(ad X_i)_{kj} = f_{kij}`.
    pub fn ad(&self, i: usize) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.dim, self.dim, |k, j| self.structure(k, i, j))
    }
}

/// Complex Clifford generators with `c_i c_j + c_j c_i = −2 δ_ij`.
#[derive(Debug, Clone)]
pub struct CliffordRep {
    pub gens: Vec<DenseMatrix>,
}

impl CliffordRep {
    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn spinor_dim(&self) -> usize {
        self.gens.first().map_or(1, |g| g.nrows())
    }

    /// Largest entry of `c_i c_j + c_j c_i + 2 δ_ij I` over all pairs.
    pub fn relation_defect(&self) -> f64 {
        let d = self.spinor_dim();
        let id = identity(d);
        let mut worst = 0.0f64;
        for (i, a) in self.gens.iter().enumerate() {
            for (j, b) in self.gens.iter().enumerate() {
                let mut m = a * b + b * a;
                if i == j {
                    m += &id * c(2.0, 0.0);
                }
                worst = worst.max(max_abs(&m));
            }
        }
        worst
    }
}

fn pauli() -> [DenseMatrix; 3] {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        DenseMatrix::from_row_slice(2, 2, &[o, one, one, o]),
        DenseMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
        DenseMatrix::from_row_slice(2, 2, &[one, o, o, -one]),
    ]
}

fn kron_chain(factors: &[&DenseMatrix]) -> DenseMatrix {
    factors.iter().fold(identity(1), |acc, f| acc.kronecker(*f))
}

/// Generators of `Cl(n)` on spinors of dimension `2^⌊n/2⌋`, built from
/// Jordan–Wigner strings of Pauli matrices and multiplied by `−i`.
pub fn clifford_generators(n: usize) -> Result<CliffordRep> {
    if !(1..=10).contains(&n) {
        return Err(Error::CliffordDimension(n));
    }
    let k = n / 2;
    let [x, y, z] = pauli();
    let id2 = identity(2);
    let minus_i = c(0.0, -1.0);
    let mut gens = Vec::with_capacity(n);
    for j in 0..k {
        for p in [&x, &y] {
            let mut factors: Vec<&DenseMatrix> = Vec::with_capacity(k);
            factors.extend(std::iter::repeat_n(&z, j));
            factors.push(p);
            factors.extend(std::iter::repeat_n(&id2, k - j - 1));
            gens.push(kron_chain(&factors) * minus_i);
        }
    }
    if n % 2 == 1 {
        let factors: Vec<&DenseMatrix> = std::iter::repeat_n(&z, k).collect();
        gens.push(kron_chain(&factors) * minus_i);
    }
    Ok(CliffordRep { gens })
}

fn check_dims(basis: &LieBasis, cl: &CliffordRep) -> Result<()> {
    if basis.dim() != cl.n() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            got: cl.n(),
        });
    }
    Ok(())
}

/// `H = ¼ Σ f_{jkl} c_j c_k c_l`.
pub fn assemble_h(basis: &LieBasis, cl: &CliffordRep) -> Result<DenseMatrix> {
    check_dims(basis, cl)?;
    let n = basis.dim();
    let mut h = zeros(cl.spinor_dim());
    for j in 0..n {
        for k in 0..n {
            let f_jk: Vec<f64> = (0..n).map(|l| basis.structure(j, k, l)).collect();
            if f_jk.iter().all(|&v| v == 0.0) {
                continue;
            }
            let cjk = &cl.gens[j] * &cl.gens[k];
            for (l, &v) in f_jk.iter().enumerate() {
                if v != 0.0 {
                    h += &cjk * &cl.gens[l] * c(0.25 * v, 0.0);
                }
            }
        }
    }
    Ok(h)
}

/// `π(X_i) = ¼ Σ_{k,l} f_{ikl} c_k c_l`.
pub fn pi_map(basis: &LieBasis, cl: &CliffordRep, i: usize) -> Result<DenseMatrix> {
    check_dims(basis, cl)?;
    if i >= basis.dim() {
        return Err(Error::InvalidArgument {
            name: "i",
            reason: format!("index {i} out of range for a {}-dimensional algebra", basis.dim()),
        });
    }
    let n = basis.dim();
    let mut out = zeros(cl.spinor_dim());
    for k in 0..n {
        for l in 0..n {
            let v = basis.structure(i, k, l);
            if v != 0.0 {
                out += &cl.gens[k] * &cl.gens[l] * c(0.25 * v, 0.0);
            }
        }
    }
    Ok(out)
}

/// Largest `‖[π(X_i), π(X_j)] − Σ_k f_{kij} π(X_k)‖` (max entry).
pub fn pi_homomorphism_defect(basis: &LieBasis, cl: &CliffordRep) -> Result<f64> {
    let n = basis.dim();
    let pis = (0..n).map(|i| pi_map(basis, cl, i)).collect::<Result<Vec<_>>>()?;
    Ok(commutator_defect(basis, &pis))
}

/// Largest entry of `[M_i, M_j] − Σ_k f_{kij} M_k` over all pairs.
pub fn commutator_defect(basis: &LieBasis, mats: &[DenseMatrix]) -> f64 {
    let n = basis.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut r = commutator(&mats[i], &mats[j]);
            for (k, mk) in mats.iter().enumerate() {
                let v = basis.structure(k, i, j);
                if v != 0.0 {
                    r -= mk * c(v, 0.0);
                }
            }
            worst = worst.max(max_abs(&r));
        }
    }
    worst
}

/// Representation matrices `ρ_λ(X_i)` (anti-Hermitian).
#[derive(Debug, Clone)]
pub struct SpinRep {
    pub weight: Weight,
    pub matrices: Vec<DenseMatrix>,
}

impl SpinRep {
    /// Spin-`m/2` representation from ladder operators, `ρ(X_k) = −2i J_k`.
    pub fn su2(m: u32) -> Self {
        let d = m as usize + 1;
        let j = m as f64 / 2.0;
        let mut jz = zeros(d);
        let mut jp = zeros(d);
        for a in 0..d {
            let mu = j - a as f64;
            jz[(a, a)] = c(mu, 0.0);
            if a > 0 {
                // J_+ |μ⟩ = √(j(j+1) − μ(μ+1)) |μ+1⟩, |μ+1⟩ has index a−1
                jp[(a - 1, a)] = c((j * (j + 1.0) - mu * (mu + 1.0)).sqrt(), 0.0);
            }
        }
        let jm = jp.adjoint();
        let jx = (&jp + &jm) * c(0.5, 0.0);
        let jy = (&jp - &jm) * c(0.0, -0.5);
        let f = c(0.0, -2.0);
        SpinRep {
            weight: Weight::su2(m),
            matrices: vec![jx * f, jy * f, jz * f],
        }
    }

    /// Gell-Mann matrices.
    pub fn gell_mann() -> [DenseMatrix; 8] {
        let o = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let i = c(0.0, 1.0);
        let s = c(1.0 / 3f64.sqrt(), 0.0);
        let m = |v: [num_complex::Complex64; 9]| DenseMatrix::from_row_slice(3, 3, &v);
        [
            m([o, one, o, one, o, o, o, o, o]),
            m([o, -i, o, i, o, o, o, o, o]),
            m([one, o, o, o, -one, o, o, o, o]),
            m([o, o, one, o, o, o, one, o, o]),
            m([o, o, -i, o, o, o, i, o, o]),
            m([o, o, o, o, o, one, o, one, o]),
            m([o, o, o, o, o, -i, o, i, o]),
            m([s, o, o, o, s, o, o, o, s * c(-2.0, 0.0)]),
        ]
    }

    /// Defining representation `(1,0)`: `X_a = −i λ_a`.
    pub fn su3_defining() -> Self {
        SpinRep {
            weight: Weight::su3(1, 0),
            matrices: Self::gell_mann().into_iter().map(|l| l * c(0.0, -1.0)).collect(),
        }
    }

    /// Dual representation `(0,1)`: complex conjugate of the defining one.
    pub fn su3_dual() -> Self {
        let d = Self::su3_defining();
        SpinRep {
            weight: Weight::su3(0, 1),
            matrices: d.matrices.iter().map(|m| m.map(|z| z.conj())).collect(),
        }
    }

    /// Adjoint representation `(1,1)` from the structure constants.
    pub fn su3_adjoint() -> Self {
        let b = LieBasis::su3();
        SpinRep {
            weight: Weight::su3(1, 1),
            matrices: (0..8).map(|i| b.ad(i).map(|x| c(x, 0.0))).collect(),
        }
    }

    pub fn for_weight(weight: Weight) -> Result<Self> {
        match weight {
            Weight::Su2 { m } => Ok(Self::su2(m)),
            Weight::Su3 { p: 1, q: 0 } => Ok(Self::su3_defining()),
            Weight::Su3 { p: 0, q: 1 } => Ok(Self::su3_dual()),
            Weight::Su3 { p: 1, q: 1 } => Ok(Self::su3_adjoint()),
            Weight::Su3 { p: 0, q: 0 } => Ok(SpinRep {
                weight,
                matrices: vec![zeros(1); 8],
            }),
            w => Err(Error::InvalidArgument {
                name: "weight",
                reason: format!("no explicit SU(3) matrices for {w}"),
            }),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrices.first().map_or(1, |m| m.nrows())
    }

    /// `−Σ ρ(X_i)²`.
    pub fn casimir_matrix(&self) -> DenseMatrix {
        let mut out = zeros(self.dim());
        for m in &self.matrices {
            out -= m * m;
        }
        out
    }
}

/// `D_t = Σ c_i ⊗ ρ(X_i) + t (H ⊗ 1)` on `S ⊗ V_λ`.
pub fn assemble_dirac(t: f64, basis: &LieBasis, cl: &CliffordRep, rep: &SpinRep) -> Result<DenseMatrix> {
    check_dims(basis, cl)?;
    if rep.matrices.len() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            got: rep.matrices.len(),
        });
    }
    let h = assemble_h(basis, cl)?;
    let mut d = (h * c(t, 0.0)).kronecker(&identity(rep.dim()));
    for (ci, ri) in cl.gens.iter().zip(&rep.matrices) {
        d += ci.kronecker(ri);
    }
    Ok(d)
}

fn su2_dirac_square(t: f64, m: u32, basis: &LieBasis) -> Result<DenseMatrix> {
    let cl = clifford_generators(3)?;
    let rep = SpinRep::su2(m);
    let d = assemble_dirac(t, basis, &cl, &rep)?;
    Ok(&d * &d)
}

/// Eigenvalues of `D_t²` on the SU(2) block `S ⊗ V_m`, grouped with their
/// degeneracies.
pub fn oracle_block_spectrum(t: f64, m: u32) -> Result<Vec<(f64, usize)>> {
    oracle_block_spectrum_with(t, m, &LieBasis::su2())
}

pub fn oracle_block_spectrum_with(t: f64, m: u32, basis: &LieBasis) -> Result<Vec<(f64, usize)>> {
    let d2 = su2_dirac_square(t, m, basis)?;
    let ev = eigenvalues_hermitian(&d2)?;
    Ok(group_degenerate(&ev))
}

/// Closed-form block spectrum from representation theory, grouped the same
/// way as the oracle.
pub fn closed_form_block_spectrum(t: f64, m: u32) -> Vec<(f64, usize)> {
    let w = Weight::su2(m);
    let mut ev: Vec<f64> = Vec::new();
    for br in cg_branches(w).iter().filter(|b| b.is_present()) {
        let e = tt_eigenvalue(t, w, br).expect("SU(2) branch of an SU(2) weight");
        ev.extend(std::iter::repeat_n(e, br.block_dim as usize));
    }
    ev.sort_by(f64::total_cmp);
    group_degenerate(&ev)
}

/// Frobenius norm of
/// `D_t² − [1⊗Cas + (1−3t)·½Σ c_k c_l ⊗ [ρ(X_k), ρ(X_l)] + 9t²|ρ|²]`.
pub fn dsquared_identity_check(t: f64, m: u32) -> Result<f64> {
    dsquared_identity_check_with(t, m, &LieBasis::su2())
}

pub fn dsquared_identity_check_with(t: f64, m: u32, basis: &LieBasis) -> Result<f64> {
    let cl = clifford_generators(3)?;
    let rep = SpinRep::su2(m);
    let d = assemble_dirac(t, basis, &cl, &rep)?;
    let d2 = &d * &d;

    let ds = cl.spinor_dim();
    let dv = rep.dim();
    let mut rhs = identity(ds).kronecker(&rep.casimir_matrix());
    let coeff = c(0.5 * (1.0 - 3.0 * t), 0.0);
    for k in 0..3 {
        for l in 0..3 {
            let ckl = &cl.gens[k] * &cl.gens[l];
            let br = commutator(&rep.matrices[k], &rep.matrices[l]);
            rhs += ckl.kronecker(&br) * coeff;
        }
    }
    let scalar = 9.0 * t * t * rep_theory::weyl_vector(Group::SU2).norm_sq();
    rhs += identity(ds * dv) * c(scalar, 0.0);
    Ok(frobenius(&(d2 - rhs)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrangeFormula {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// `(1/24) tr(ad_Cas)` from the structure constants against `|ρ|²`.
pub fn strange_formula_check(basis: &LieBasis) -> StrangeFormula {
    let n = basis.dim();
    let mut ad_cas = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let a = basis.ad(i);
        ad_cas -= &a * &a;
    }
    let lhs = ad_cas.trace() / 24.0;
    let rhs = basis.weyl_norm_sq();
    StrangeFormula {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    }
}

/// Outcome of one verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.into(),
            residual,
            threshold,
            passed: residual.is_finite() && residual <= threshold,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub m_max: u32,
    pub ts: Vec<f64>,
    pub basis: LieBasis,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            m_max: 12,
            ts: vec![0.0, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0],
            basis: LieBasis::su2(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const TOL_EXACT_ALGEBRA: f64 = 1e-13;
pub const TOL_DSQUARED_IDENTITY: f64 = 1e-11;
pub const TOL_STRANGE_SU2: f64 = 1e-12;
pub const TOL_STRANGE_SU3: f64 = 1e-10;
pub const TOL_SPECTRUM: f64 = 1e-9;
pub const TOL_CASIMIR: f64 = 1e-10;
/// Largest block for which the `D_t²` matrix identity is checked.
pub const DSQUARED_M_MAX: u32 = 8;

/// Compares an oracle block spectrum with the closed form: returns the max
/// eigenvalue error, or infinity when the degeneracy patterns differ.
pub fn spectrum_mismatch(oracle: &[(f64, usize)], closed: &[(f64, usize)]) -> f64 {
    if oracle.len() != closed.len() {
        return f64::INFINITY;
    }
    let mut worst = 0.0f64;
    for (o, e) in oracle.iter().zip(closed) {
        if o.1 != e.1 {
            return f64::INFINITY;
        }
        worst = worst.max((o.0 - e.0).abs());
    }
    worst
}

/// Runs the full oracle suite on SU(2) blocks `m ≤ m_max` for every `t`.
pub fn run_verification(opts: &VerifyOptions) -> Result<VerifyReport> {
    let basis = &opts.basis;
    let mut checks = Vec::new();

    checks.push(CheckResult::new(
        "structure constants: total antisymmetry",
        basis.antisymmetry_defect(),
        TOL_EXACT_ALGEBRA,
    ));
    checks.push(CheckResult::new(
        "structure constants: Jacobi identity",
        basis.jacobi_defect(),
        TOL_EXACT_ALGEBRA,
    ));

    let cl = clifford_generators(basis.dim())?;
    checks.push(CheckResult::new(
        format!("Clifford relations Cl({})", cl.n()),
        cl.relation_defect(),
        TOL_EXACT_ALGEBRA,
    ));
    checks.push(CheckResult::new(
        "pi is a Lie algebra homomorphism",
        pi_homomorphism_defect(basis, &cl)?,
        TOL_EXACT_ALGEBRA,
    ));
    let h = assemble_h(basis, &cl)?;
    checks.push(CheckResult::new(
        "H is Hermitian",
        hermitian_defect(&h),
        TOL_EXACT_ALGEBRA,
    ));

    let sf = strange_formula_check(basis);
    checks.push(CheckResult::new(
        format!("strange formula (lhs {:.15}, rhs {:.15})", sf.lhs, sf.rhs),
        sf.residual,
        TOL_STRANGE_SU2,
    ));
    let sf3 = strange_formula_check(&LieBasis::su3());
    checks.push(CheckResult::new(
        format!("strange formula su(3) (lhs {:.15}, rhs {:.15})", sf3.lhs, sf3.rhs),
        sf3.residual,
        TOL_STRANGE_SU3,
    ));

    let reps: Vec<SpinRep> = (0..=opts.m_max).map(SpinRep::su2).collect();
    let (comm, cas) = reps
        .par_iter()
        .map(|rep| {
            let comm = commutator_defect(basis, &rep.matrices);
            let target = casimir_scalar(rep.weight);
            let ev = eigenvalues_hermitian(&rep.casimir_matrix())
                .map(|ev| ev.iter().map(|e| (e - target).abs()).fold(0.0, f64::max))
                .unwrap_or(f64::INFINITY);
            (comm, ev)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    checks.push(CheckResult::new(
        format!(
            "spin representations reproduce structure constants (m <= {})",
            opts.m_max
        ),
        comm,
        TOL_EXACT_ALGEBRA,
    ));
    checks.push(CheckResult::new(
        format!("Casimir scalar m(m+2) (m <= {})", opts.m_max),
        cas,
        TOL_CASIMIR,
    ));

    let jobs: Vec<(f64, u32)> = opts
        .ts
        .iter()
        .flat_map(|&t| (0..=opts.m_max).map(move |m| (t, m)))
        .collect();
    let per_block = jobs
        .par_iter()
        .map(|&(t, m)| -> Result<(f64, f64, f64)> {
            let d2 = su2_dirac_square(t, m, basis)?;
            let herm = hermitian_defect(&d2);
            let oracle = match linalg::eigenvalues_hermitian(&d2) {
                Ok(ev) => group_degenerate(&ev),
                Err(Error::NotHermitian(_)) => return Ok((herm, f64::INFINITY, f64::INFINITY)),
                Err(e) => return Err(e),
            };
            let spec = spectrum_mismatch(&oracle, &closed_form_block_spectrum(t, m));
            let ident = if m <= DSQUARED_M_MAX {
                dsquared_identity_check_with(t, m, basis)?
            } else {
                0.0
            };
            Ok((herm, spec, ident))
        })
        .collect::<Result<Vec<_>>>()?;
    let fold = |k: usize| {
        per_block
            .iter()
            .map(|r| [r.0, r.1, r.2][k])
            .fold(0.0, |a: f64, b| if b.is_nan() { f64::INFINITY } else { a.max(b) })
    };
    checks.push(CheckResult::new(
        "D_t^2 blocks are Hermitian",
        fold(0),
        TOL_EXACT_ALGEBRA,
    ));
    checks.push(CheckResult::new(
        format!(
            "oracle spectrum equals closed form (m <= {}, {} values of t)",
            opts.m_max,
            opts.ts.len()
        ),
        fold(1),
        TOL_SPECTRUM,
    ));
    checks.push(CheckResult::new(
        format!("D_t^2 matrix identity (m <= {})", opts.m_max.min(DSQUARED_M_MAX)),
        fold(2),
        TOL_DSQUARED_IDENTITY,
    ));

    Ok(VerifyReport { checks })
}
