//! Reference implementations written straight from the definitions, with
//! plain loops over multi-indices and no shared code with the library.

#![allow(dead_code)]

use centro_core::DenseTensor;

/// Every multi-index of the given shape in row-major order.
pub fn indices(order: usize, dim: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..order {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..dim).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn flip(x: &[f64]) -> Vec<f64> {
    x.iter().rev().copied().collect()
}

pub fn reverse_index(idx: &[usize], dim: usize) -> Vec<usize> {
    idx.iter().map(|i| dim - 1 - i).collect()
}

/// `(A x^{m-1})_i = Σ a_{i i2..im} x_{i2}..x_{im}`.
pub fn apply(a: &DenseTensor, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.dim()];
    for idx in indices(a.order(), a.dim()) {
        let p: f64 = idx[1..].iter().map(|&j| x[j]).product();
        out[idx[0]] += a.get(&idx) * p;
    }
    out
}

/// `f(x) = A x^m`.
pub fn poly(a: &DenseTensor, x: &[f64]) -> f64 {
    apply_full(a, x)
}

fn apply_full(a: &DenseTensor, x: &[f64]) -> f64 {
    indices(a.order(), a.dim())
        .into_iter()
        .map(|idx| a.get(&idx) * idx.iter().map(|&j| x[j]).product::<f64>())
        .sum()
}

pub fn residual(a: &DenseTensor, lambda: f64, x: &[f64]) -> f64 {
    let ax = apply(a, x);
    let p = (a.order() - 1) as i32;
    ax.iter()
        .zip(x)
        .map(|(l, xi)| (l - lambda * xi.powi(p)).abs())
        .fold(0.0, f64::max)
}

pub fn row_sums(a: &DenseTensor) -> Vec<f64> {
    let mut out = vec![0.0; a.dim()];
    for idx in indices(a.order(), a.dim()) {
        out[idx[0]] += a.get(&idx);
    }
    out
}

/// `max |a_idx - s a_rev(idx)|`.
pub fn mirror_violation(a: &DenseTensor, sign: f64) -> f64 {
    indices(a.order(), a.dim())
        .into_iter()
        .map(|idx| (a.get(&idx) - sign * a.get(&reverse_index(&idx, a.dim()))).abs())
        .fold(0.0, f64::max)
}

/// The general product from its definition:
/// `c_{i α1..α(m-1)} = Σ a_{i i2..im} b_{i2 α1} .. b_{im α(m-1)}`, each `α`
/// a block of `k - 1` indices.
pub fn shao(a: &DenseTensor, b: &DenseTensor) -> DenseTensor {
    let (m, k, n) = (a.order(), b.order(), a.dim());
    let order = (m - 1) * (k - 1) + 1;
    let inner = indices(m - 1, n);
    DenseTensor::from_fn(order, n, |idx| {
        let i = idx[0];
        inner
            .iter()
            .map(|tail| {
                let mut head = vec![i];
                head.extend_from_slice(tail);
                let mut term = a.get(&head);
                for (j, &t) in tail.iter().enumerate() {
                    let alpha = &idx[1 + j * (k - 1)..1 + (j + 1) * (k - 1)];
                    let mut bi = vec![t];
                    bi.extend_from_slice(alpha);
                    term *= b.get(&bi);
                }
                term
            })
            .sum()
    })
    .unwrap()
}

pub fn identity_gap(c: &DenseTensor) -> f64 {
    indices(c.order(), c.dim())
        .into_iter()
        .map(|idx| {
            let delta = if idx.iter().all(|&i| i == idx[0]) { 1.0 } else { 0.0 };
            (c.get(&idx) - delta).abs()
        })
        .fold(0.0, f64::max)
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `min(|x - y|, |x + y|)`.
pub fn distance_up_to_sign(x: &[f64], y: &[f64]) -> f64 {
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let s: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    norm(&d).min(norm(&s))
}

pub fn to_matrix(a: &DenseTensor) -> nalgebra::DMatrix<f64> {
    let n = a.dim();
    nalgebra::DMatrix::from_fn(n, n, |i, j| a.get(&[i, j]))
}

pub fn from_matrix(m: &nalgebra::DMatrix<f64>) -> DenseTensor {
    DenseTensor::from_fn(2, m.nrows(), |idx| m[(idx[0], idx[1])]).unwrap()
}

/// 1-norm condition number.
pub fn cond1(m: &nalgebra::DMatrix<f64>) -> Option<f64> {
    let inv = m.clone().try_inverse()?;
    let n1 = |a: &nalgebra::DMatrix<f64>| {
        (0..a.ncols())
            .map(|j| a.column(j).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    Some(n1(m) * n1(&inv))
}
