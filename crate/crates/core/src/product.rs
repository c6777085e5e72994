//! The general tensor product and the exchange matrix.
//!
//! For `A` of order `m >= 2` and `B` of order `k >= 1`, both of dimension `n`,
//! the product `C = AB` has order `(m-1)(k-1)+1` and entries
//!
//! ```text
//! c_{i α1 .. α(m-1)} = sum_{i2..im} a_{i i2..im} b_{i2 α1} .. b_{im α(m-1)}
//! ```
//!
//! where each `α` is a `(k-1)`-multi-index. Viewing `B` as an
//! `n x n^(k-1)` matrix, this is `A` with every trailing mode multiplied by
//! that matrix, which is how it is evaluated here.

use alloc::vec;
use alloc::vec::Vec;

use crate::structure::Parity;
use crate::tensor::DenseTensor;
use crate::{Error, Result};

/// Default cap on the number of entries a product may produce (2^26).
pub const DEFAULT_MAX_ENTRIES: usize = 1 << 26;

/// Orders and dimension of a product `AB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductShape {
    pub left_order: usize,
    pub right_order: usize,
    pub result_order: usize,
    pub dim: usize,
}

impl ProductShape {
    pub fn new(left_order: usize, right_order: usize, dim: usize) -> Result<Self> {
        if left_order < 2 {
            return Err(Error::OrderTooSmall {
                required: 2,
                found: left_order,
            });
        }
        if right_order < 1 || dim < 1 {
            return Err(Error::InvalidShape {
                order: right_order,
                dim,
            });
        }
        Ok(Self {
            left_order,
            right_order,
            result_order: (left_order - 1) * (right_order - 1) + 1,
            dim,
        })
    }

    /// `n^result_order`, saturating at `u128::MAX`.
    pub fn result_entries(&self) -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..self.result_order {
            acc = acc.saturating_mul(self.dim as u128);
        }
        acc
    }
}

/// `AB` with the default entry cap.
pub fn shao_product(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    shao_product_capped(a, b, DEFAULT_MAX_ENTRIES)
}

/// `AB`, refusing results with more than `max_entries` entries.
pub fn shao_product_capped(a: &DenseTensor, b: &DenseTensor, max_entries: usize) -> Result<DenseTensor> {
    let shape = ProductShape::new(a.order(), b.order(), a.dim())?;
    if b.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let entries = shape.result_entries();
    if entries > max_entries as u128 {
        return Err(Error::TooLarge {
            entries,
            cap: max_entries,
        });
    }

    let n = a.dim();
    // B as an n x width matrix, width = n^(k-1).
    let width = b.len() / n;
    let mut data = a.entries().to_vec();
    let mut outer = n;
    let mut inner = a.len() / n;
    for _ in 1..a.order() {
        inner /= n;
        data = multiply_mode(&data, outer, n, inner, b.entries(), width);
        outer *= width;
    }
    Ok(DenseTensor::from_parts_unchecked(shape.result_order, n, data))
}

/// `out[o, β, r] = sum_j t[o, j, r] * mat[j, β]` for `t` of shape `(outer, n, inner)`.
fn multiply_mode(t: &[f64], outer: usize, n: usize, inner: usize, mat: &[f64], width: usize) -> Vec<f64> {
    let mut out = vec![0.0; outer * width * inner];
    for o in 0..outer {
        for j in 0..n {
            let src = &t[(o * n + j) * inner..(o * n + j + 1) * inner];
            if src.iter().all(|&v| v == 0.0) {
                continue;
            }
            for beta in 0..width {
                let m = mat[j * width + beta];
                if m == 0.0 {
                    continue;
                }
                let dst = &mut out[(o * width + beta) * inner..(o * width + beta + 1) * inner];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d += s * m;
                }
            }
        }
    }
    out
}

/// `BA` for an `n x n` matrix `B`: `(BA)_{i i2..im} = sum_j b_{ij} a_{j i2..im}`.
pub fn matrix_times_tensor(b: &DenseTensor, a: &DenseTensor) -> Result<DenseTensor> {
    require_matrix(b)?;
    shao_product(b, a)
}

/// `AB` for an `n x n` matrix `B`: every trailing index of `A` is multiplied by `B`.
pub fn tensor_times_matrix(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    require_matrix(b)?;
    shao_product(a, b)
}

fn require_matrix(b: &DenseTensor) -> Result<()> {
    if b.order() == 2 {
        Ok(())
    } else {
        Err(Error::Precondition(alloc::format!(
            "expected an order-2 tensor, found order {}",
            b.order()
        )))
    }
}

/// Structure of `AB` given the structures of `A` (order `m`) and `B`.
///
/// | A      | B      | AB                          |
/// |--------|--------|-----------------------------|
/// | centro | centro | centro                      |
/// | skew   | centro | skew                        |
/// | centro | skew   | centro if m odd, else skew  |
/// | skew   | skew   | centro if m even, else skew |
pub fn product_parity(left: Parity, right: Parity, left_order: usize) -> Parity {
    // Reversing every index of AB picks up the sign of A once and the sign of
    // B once per trailing slot of A.
    let mut negative = left == Parity::Skew;
    if right == Parity::Skew && (left_order - 1) % 2 == 1 {
        negative = !negative;
    }
    if negative {
        Parity::Skew
    } else {
        Parity::Centro
    }
}

/// Left-associated product `((A1 A2) A3) ..`.
pub fn chain_product(tensors: &[DenseTensor]) -> Result<DenseTensor> {
    chain_product_capped(tensors, DEFAULT_MAX_ENTRIES)
}

pub fn chain_product_capped(tensors: &[DenseTensor], max_entries: usize) -> Result<DenseTensor> {
    let (first, rest) = match tensors {
        [first, rest @ ..] if !rest.is_empty() => (first, rest),
        _ => {
            return Err(Error::Precondition(alloc::format!(
                "a chain product needs at least two tensors, found {}",
                tensors.len()
            )))
        }
    };
    rest.iter()
        .try_fold(first.clone(), |acc, t| shao_product_capped(&acc, t, max_entries))
}

/// The exchange matrix `J` with `J_{ij} = δ_{i, n-j+1}`.
pub fn exchange_matrix(n: usize) -> Result<DenseTensor> {
    DenseTensor::from_fn(2, n, |idx| if idx[0] + idx[1] == n - 1 { 1.0 } else { 0.0 })
}

/// `JAJ`, evaluated as `J (A J)`. Order-1 tensors have no trailing slots, so
/// for them this is `JA`.
pub fn j_sandwich(a: &DenseTensor) -> Result<DenseTensor> {
    let j = exchange_matrix(a.dim())?;
    if a.order() == 1 {
        return shao_product(&j, a);
    }
    shao_product(&j, &shao_product(a, &j)?)
}
