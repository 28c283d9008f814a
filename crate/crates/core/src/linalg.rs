//! Dense complex matrices and a self-contained Hermitian eigensolver.
//!
//! Hermitian matrices `A + iB` are diagonalized through the real symmetric
//! embedding `[[A, −B], [B, A]]`, whose spectrum is that of the original
//! matrix with every eigenvalue doubled. The embedded matrix is reduced by
//! cyclic Jacobi rotations.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type DenseMatrix = DMatrix<Complex64>;

pub const JACOBI_MAX_SWEEPS: usize = 100;
pub const JACOBI_OFF_DIAGONAL_REL: f64 = 1e-14;
pub const HERMITIAN_TOL: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> DenseMatrix {
    DenseMatrix::identity(n, n)
}

pub fn zeros(n: usize) -> DenseMatrix {
    DenseMatrix::zeros(n, n)
}

pub fn commutator(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    a * b - b * a
}

pub fn frobenius(m: &DenseMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(m: &DenseMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest elementwise `|M − M†|`.
pub fn hermitian_defect(m: &DenseMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Unit eigenvectors, column `k` belongs to `values[k]`.
    pub vectors: DenseMatrix,
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn eigenvalues_hermitian(m: &DenseMatrix) -> Result<Vec<f64>> {
    Ok(eigh(m)?.values)
}

pub fn eigh(m: &DenseMatrix) -> Result<HermitianEigen> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m.ncols(),
        });
    }
    if n == 0 {
        return Ok(HermitianEigen {
            values: vec![],
            vectors: zeros(0),
        });
    }
    let defect = hermitian_defect(m);
    if defect > HERMITIAN_TOL * max_abs(m).max(1.0) {
        return Err(Error::NotHermitian(defect));
    }

    let mut r = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            // symmetrize while embedding
            let z = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            r[(i, j)] = z.re;
            r[(i + n, j + n)] = z.re;
            r[(i, j + n)] = -z.im;
            r[(i + n, j)] = z.im;
        }
    }
    let (vals, vecs) = jacobi_symmetric(r)?;

    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));

    // Each eigenvalue appears twice; keep every other one.
    let mut values = Vec::with_capacity(n);
    let mut vectors = zeros(n);
    for (k, &idx) in order.iter().step_by(2).enumerate() {
        values.push(vals[idx]);
        let mut norm = 0.0;
        for i in 0..n {
            let z = c(vecs[(i, idx)], vecs[(i + n, idx)]);
            vectors[(i, k)] = z;
            norm += z.norm_sqr();
        }
        let norm = norm.sqrt();
        for i in 0..n {
            vectors[(i, k)] /= norm;
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Cyclic Jacobi on a real symmetric matrix. Returns unsorted eigenvalues and
/// the orthogonal matrix of eigenvectors (columns).
pub fn jacobi_symmetric(mut a: DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = JACOBI_OFF_DIAGONAL_REL * scale;

    let off_norm = |a: &DMatrix<f64>| {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[(i, j)] * a[(i, j)];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= threshold || scale == 0.0 {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::EigenNoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                let tau = sn / (1.0 + cs);

                a[(p, p)] -= t * apq;
                a[(q, q)] += t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    if k != p && k != q {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        let new_kp = akp - sn * (akq + tau * akp);
                        let new_kq = akq + sn * (akp - tau * akq);
                        a[(k, p)] = new_kp;
                        a[(p, k)] = new_kp;
                        a[(k, q)] = new_kq;
                        a[(q, k)] = new_kq;
                    }
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp - sn * (vkq + tau * vkp);
                    v[(k, q)] = vkq + sn * (vkp - tau * vkq);
                }
            }
        }
    }
    let vals = (0..n).map(|i| a[(i, i)]).collect();
    Ok((vals, v))
}

/// Groups sorted eigenvalues whose distance is within `1e-7·(1+|λ|)`.
/// Returns `(mean value, count)` pairs.
pub fn group_degenerate(sorted: &[f64]) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for &x in sorted {
        match out.last_mut() {
            Some((_, count, sum)) if (x - *sum / *count as f64).abs() <= 1e-7 * (1.0 + x.abs()) => {
                *count += 1;
                *sum += x;
            }
            _ => out.push((x, 1, x)),
        }
    }
    out.into_iter()
        .map(|(_, count, sum)| (sum / count as f64, count))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[f64]]) -> DenseMatrix {
        let n = rows.len();
        DenseMatrix::from_fn(n, n, |i, j| c(rows[i][j], 0.0))
    }

    #[test]
    fn identity_spectrum() {
        assert_eq!(eigenvalues_hermitian(&identity(4)).unwrap(), vec![1.0; 4]);
    }

    #[test]
    fn diagonal_is_sorted() {
        let m = real(&[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]);
        assert_eq!(eigenvalues_hermitian(&m).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x() {
        let m = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let ev = eigenvalues_hermitian(&m).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_y_is_complex_hermitian() {
        let m = DenseMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        let e = eigh(&m).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
        for k in 0..2 {
            let v = e.vectors.column(k);
            let r = &m * v - v * c(e.values[k], 0.0);
            assert!(r.norm() < 1e-13);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(eigh(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn residuals_on_random_hermitian() {
        // deterministic pseudo-random Hermitian matrix
        let n = 12;
        let mut seed = 12345u64;
        let mut rnd = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut m = zeros(n);
        for i in 0..n {
            m[(i, i)] = c(rnd(), 0.0);
            for j in (i + 1)..n {
                let z = c(rnd(), rnd());
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        let e = eigh(&m).unwrap();
        let norm = frobenius(&m);
        for k in 0..n {
            let v = e.vectors.column(k);
            let r = &m * v - v * c(e.values[k], 0.0);
            assert!(r.norm() <= 1e-9 * norm, "residual {}", r.norm());
        }
        let trace: f64 = (0..n).map(|i| m[(i, i)].re).sum();
        let sum: f64 = e.values.iter().sum();
        assert!((trace - sum).abs() < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn grouping() {
        let g = group_degenerate(&[1.0, 1.0 + 1e-12, 2.0, 2.0, 2.0, 5.0]);
        assert_eq!(g.len(), 3);
        assert_eq!(g[0].1, 2);
        assert_eq!(g[1], (2.0, 3));
        assert_eq!(g[2], (5.0, 1));
    }
}
