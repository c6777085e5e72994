//! Small dense square solves on row-major buffers.

use alloc::vec;
use alloc::vec::Vec;

/// LU factorization with partial pivoting of an `n x n` row-major matrix.
#[derive(Debug, Clone)]
pub(crate) struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    /// Factors `a`. Returns `None` when a pivot is exactly zero or below
    /// `pivot_floor` in magnitude.
    pub(crate) fn factor(a: &[f64], n: usize, pivot_floor: f64) -> Option<Self> {
        debug_assert_eq!(a.len(), n * n);
        let mut lu = a.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|r| (r, lu[r * n + k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pivot > pivot_floor) {
                return None;
            }
            if p != k {
                for c in 0..n {
                    lu.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            let d = lu[k * n + k];
            for r in k + 1..n {
                let f = lu[r * n + k] / d;
                lu[r * n + k] = f;
                if f != 0.0 {
                    for c in k + 1..n {
                        lu[r * n + c] -= f * lu[k * n + c];
                    }
                }
            }
        }
        Some(Self { n, lu, perm })
    }

    pub(crate) fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            let s: f64 = (0..r).map(|c| self.lu[r * n + c] * x[c]).sum();
            x[r] -= s;
        }
        for r in (0..n).rev() {
            let s: f64 = (r + 1..n).map(|c| self.lu[r * n + c] * x[c]).sum();
            x[r] = (x[r] - s) / self.lu[r * n + r];
        }
        x
    }

    pub(crate) fn inverse(&self) -> Vec<f64> {
        let n = self.n;
        let mut inv = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for c in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[c] = 1.0;
            let col = self.solve(&e);
            for r in 0..n {
                inv[r * n + c] = col[r];
            }
        }
        inv
    }
}

/// Induced 1-norm (max column sum).
pub(crate) fn norm1(a: &[f64], n: usize) -> f64 {
    (0..n)
        .map(|c| (0..n).map(|r| a[r * n + c].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Inverse and 1-norm condition number, or `None` for a numerically singular matrix.
pub(crate) fn invert(a: &[f64], n: usize) -> Option<(Vec<f64>, f64)> {
    let floor = norm1(a, n) * f64::EPSILON * 1e-3;
    let lu = Lu::factor(a, n, floor)?;
    let inv = lu.inverse();
    if inv.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let cond = norm1(a, n) * norm1(&inv, n);
    Some((inv, cond))
}

/// Solves the regularized normal equations `(J^T J + mu I) d = J^T b`.
pub(crate) fn damped_least_squares(j: &[f64], b: &[f64], n: usize, mu: f64) -> Option<Vec<f64>> {
    let mut normal = vec![0.0; n * n];
    let mut rhs = vec![0.0; n];
    for r in 0..n {
        for c in 0..n {
            normal[r * n + c] = (0..n).map(|k| j[k * n + r] * j[k * n + c]).sum();
        }
        normal[r * n + r] += mu;
        rhs[r] = (0..n).map(|k| j[k * n + r] * b[k]).sum();
    }
    Lu::factor(&normal, n, 0.0).map(|lu| lu.solve(&rhs))
}
