//! Dense symmetric linear algebra sized for markets of a few hundred
//! participants.
//!
//! Matrices are flat row-major `Vec<f64>`. The interaction matrices this
//! crate meets are symmetric and usually positive definite, so
//! [`DenseSolver`] first attempts a Cholesky factorization (which succeeds
//! exactly when the matrix is numerically positive definite) and falls back
//! to partially pivoted LU otherwise. Eigenvalues for definiteness reports
//! come from a cyclic Jacobi iteration, which is robust for symmetric
//! matrices at these sizes.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{MarketError, Result};
use crate::math::sqrt;

/// y = M x for a dense row-major n-by-n matrix.
pub fn mat_vec(n: usize, m: &[f64], x: &[f64]) -> Vec<f64> {
    debug_assert_eq!(m.len(), n * n);
    debug_assert_eq!(x.len(), n);
    let mut y = vec![0.0; n];
    for i in 0..n {
        let row = &m[i * n..(i + 1) * n];
        let mut acc = 0.0;
        for j in 0..n {
            acc += row[j] * x[j];
        }
        y[i] = acc;
    }
    y
}

/// Largest absolute difference between two equally sized vectors.
pub fn linf_diff(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut d = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        d = d.max((x - y).abs());
    }
    d
}

/// Sum of absolute differences between two equally sized vectors.
pub fn l1_diff(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Lower-triangular Cholesky factor of a symmetric matrix, or the index of
/// the first nonpositive pivot (meaning: not numerically positive definite).
fn cholesky_factor(n: usize, m: &[f64]) -> core::result::Result<Vec<f64>, usize> {
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        for i in j..n {
            let mut sum = m[i * n + j];
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if sum <= 0.0 || !sum.is_finite() {
                    return Err(j);
                }
                l[j * n + j] = sqrt(sum);
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    Ok(l)
}

fn cholesky_solve(n: usize, l: &[f64], b: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut sum = b[i];
        for k in 0..i {
            sum -= l[i * n + k] * y[k];
        }
        y[i] = sum / l[i * n + i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut sum = y[i];
        for k in i + 1..n {
            sum -= l[k * n + i] * x[k];
        }
        x[i] = sum / l[i * n + i];
    }
    x
}

/// In-place LU with partial pivoting. Returns the row permutation, or the
/// column index where no usable pivot exists.
fn lu_factor(n: usize, lu: &mut [f64]) -> core::result::Result<Vec<usize>, usize> {
    let scale = lu.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let tiny = if scale > 0.0 { scale * 1e-14 } else { f64::MIN_POSITIVE };
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let mut best = col;
        let mut best_abs = lu[perm[col] * n + col].abs();
        for row in col + 1..n {
            let cand = lu[perm[row] * n + col].abs();
            if cand > best_abs {
                best = row;
                best_abs = cand;
            }
        }
        if !(best_abs > tiny) || !best_abs.is_finite() {
            return Err(col);
        }
        perm.swap(col, best);
        let pivot_row = perm[col];
        let pivot = lu[pivot_row * n + col];
        for row in col + 1..n {
            let r = perm[row];
            let factor = lu[r * n + col] / pivot;
            lu[r * n + col] = factor;
            for k in col + 1..n {
                lu[r * n + k] -= factor * lu[pivot_row * n + k];
            }
        }
    }
    Ok(perm)
}

fn lu_solve(n: usize, lu: &[f64], perm: &[usize], b: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; n];
    for i in 0..n {
        let r = perm[i];
        let mut sum = b[r];
        for k in 0..i {
            sum -= lu[r * n + k] * y[k];
        }
        y[i] = sum;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let r = perm[i];
        let mut sum = y[i];
        for k in i + 1..n {
            sum -= lu[r * n + k] * x[k];
        }
        x[i] = sum / lu[r * n + i];
    }
    x
}

#[derive(Debug)]
enum Factorization {
    Cholesky(Vec<f64>),
    Lu { lu: Vec<f64>, perm: Vec<usize> },
}

/// A factored dense system, reusable across right-hand sides.
#[derive(Debug)]
pub struct DenseSolver {
    n: usize,
    factorization: Factorization,
}

impl DenseSolver {
    /// Factor a symmetric matrix: Cholesky when positive definite, pivoted
    /// LU otherwise. Fails only on a singular system.
    pub fn new(n: usize, m: &[f64]) -> Result<Self> {
        debug_assert_eq!(m.len(), n * n);
        match cholesky_factor(n, m) {
            Ok(l) => Ok(DenseSolver {
                n,
                factorization: Factorization::Cholesky(l),
            }),
            Err(_) => {
                let mut lu = m.to_vec();
                let perm = lu_factor(n, &mut lu).map_err(|pivot| MarketError::Singular {
                    factorization: "LU",
                    pivot,
                })?;
                Ok(DenseSolver {
                    n,
                    factorization: Factorization::Lu { lu, perm },
                })
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// True when the positive-definite (Cholesky) path was taken.
    pub fn used_cholesky(&self) -> bool {
        matches!(self.factorization, Factorization::Cholesky(_))
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        debug_assert_eq!(rhs.len(), self.n);
        match &self.factorization {
            Factorization::Cholesky(l) => cholesky_solve(self.n, l, rhs),
            Factorization::Lu { lu, perm } => lu_solve(self.n, lu, perm, rhs),
        }
    }
}

/// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi.
pub fn symmetric_eigenvalues(n: usize, m: &[f64]) -> Vec<f64> {
    debug_assert_eq!(m.len(), n * n);
    if n == 0 {
        return Vec::new();
    }
    let mut a = m.to_vec();
    let frob: f64 = sqrt(a.iter().map(|v| v * v).sum::<f64>());
    let stop = (frob * 1e-14).max(f64::MIN_POSITIVE);

    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if sqrt(2.0 * off) <= stop {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= stop / (n as f64 * n as f64) {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    eigs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_solver_matches_cramer_on_2x2() {
        // [[2, -0.5], [-0.5, 2]] x = [2.5, 2.5]  =>  x = [5/3, 5/3]
        let m = vec![2.0, -0.5, -0.5, 2.0];
        let solver = DenseSolver::new(2, &m).unwrap();
        assert!(solver.used_cholesky());
        let x = solver.solve(&[2.5, 2.5]);
        assert!((x[0] - 5.0 / 3.0).abs() < 1e-14);
        assert!((x[1] - 5.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn indefinite_system_falls_back_to_lu() {
        // [[0, 1], [1, 0]] is symmetric but not positive definite.
        let m = vec![0.0, 1.0, 1.0, 0.0];
        let solver = DenseSolver::new(2, &m).unwrap();
        assert!(!solver.used_cholesky());
        let x = solver.solve(&[1.0, 2.0]);
        assert!((x[0] - 2.0).abs() < 1e-14);
        assert!((x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn singular_system_is_reported() {
        let m = vec![1.0, 2.0, 2.0, 4.0];
        let err = DenseSolver::new(2, &m).unwrap_err();
        assert!(matches!(err, MarketError::Singular { .. }), "got {err:?}");
    }

    #[test]
    fn solve_residual_is_small_on_a_dense_spd_system() {
        // A = I + v v^T is positive definite.
        let n = 6;
        let v: Vec<f64> = (0..n).map(|i| 0.3 + 0.1 * i as f64).collect();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = v[i] * v[j] + if i == j { 1.0 } else { 0.0 };
            }
        }
        let rhs: Vec<f64> = (0..n).map(|i| 1.0 - 0.05 * i as f64).collect();
        let solver = DenseSolver::new(n, &m).unwrap();
        let x = solver.solve(&rhs);
        let back = mat_vec(n, &m, &x);
        assert!(linf_diff(&back, &rhs) < 1e-12);
    }

    #[test]
    fn jacobi_matches_analytic_2x2_eigenvalues() {
        // [[2, -0.5], [-0.5, 2]] has eigenvalues 1.5 and 2.5.
        let eigs = symmetric_eigenvalues(2, &[2.0, -0.5, -0.5, 2.0]);
        assert!((eigs[0] - 1.5).abs() < 1e-12, "eigs = {eigs:?}");
        assert!((eigs[1] - 2.5).abs() < 1e-12, "eigs = {eigs:?}");
    }

    #[test]
    fn jacobi_preserves_trace_and_determinant() {
        // Fixed symmetric 3x3; det via cofactor expansion by hand = 20.
        let m = vec![4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0];
        let eigs = symmetric_eigenvalues(3, &m);
        let trace: f64 = eigs.iter().sum();
        let det: f64 = eigs.iter().product();
        assert!((trace - 9.0).abs() < 1e-10);
        assert!((det - (4.0 * (3.0 * 2.0 - 1.0) - 1.0 * (1.0 * 2.0 - 0.0))).abs() < 1e-10);
    }

    #[test]
    fn jacobi_handles_diagonal_input() {
        let eigs = symmetric_eigenvalues(3, &[3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0]);
        assert_eq!(eigs, vec![1.0, 2.0, 3.0]);
    }
}
