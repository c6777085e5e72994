//! Dense hypercubic tensors and vectors.
//!
//! Entries are stored row-major with the last index varying fastest, so the
//! 0-based index `(i1, .., im)` lives at offset `sum_j i_j * n^(m-j)`.
//!
//! Reversing every index maps offset `o` to `n^m - 1 - o`, which makes the
//! reversal operator a plain reversal of the entry buffer.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::num::{powi, CompensatedSum};
use crate::{Error, Result};

/// Number of entries of an order-`order` dimension-`dim` tensor, or `None` on
/// overflow of `usize`.
pub fn entry_count(order: usize, dim: usize) -> Option<usize> {
    let order = u32::try_from(order).ok()?;
    dim.checked_pow(order)
}

/// A real order-`m` dimension-`n` tensor with finite entries.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawTensor"))]
pub struct DenseTensor {
    order: usize,
    dim: usize,
    entries: Vec<f64>,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTensor {
    order: usize,
    dim: usize,
    entries: Vec<f64>,
}

#[cfg(feature = "serde")]
impl TryFrom<RawTensor> for DenseTensor {
    type Error = Error;

    fn try_from(raw: RawTensor) -> Result<Self> {
        DenseTensor::new(raw.order, raw.dim, raw.entries)
    }
}

impl DenseTensor {
    /// Builds a tensor from row-major entries. Requires `order >= 1`,
    /// `dim >= 1`, exactly `dim^order` entries, all finite.
    pub fn new(order: usize, dim: usize, entries: Vec<f64>) -> Result<Self> {
        let expected = checked_len(order, dim)?;
        if entries.len() != expected {
            return Err(Error::EntryCount {
                expected,
                found: entries.len(),
            });
        }
        if let Some(offset) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { offset });
        }
        Ok(Self {
            order,
            dim,
            entries,
        })
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        Self::filled(order, dim, 0.0)
    }

    pub fn ones(order: usize, dim: usize) -> Result<Self> {
        Self::filled(order, dim, 1.0)
    }

    fn filled(order: usize, dim: usize, value: f64) -> Result<Self> {
        let len = checked_len(order, dim)?;
        Ok(Self {
            order,
            dim,
            entries: vec![value; len],
        })
    }

    /// The identity tensor `I = (δ_{i1..im})`.
    pub fn identity(order: usize, dim: usize) -> Result<Self> {
        let mut t = Self::zeros(order, dim)?;
        let stride = diagonal_stride(order, dim);
        for i in 0..dim {
            t.entries[i * stride] = 1.0;
        }
        Ok(t)
    }

    /// Builds a tensor by evaluating `f` on every 0-based multi-index.
    pub fn from_fn(order: usize, dim: usize, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let len = checked_len(order, dim)?;
        let mut index = vec![0; order];
        let mut entries = Vec::with_capacity(len);
        for offset in 0..len {
            unravel_into(offset, dim, &mut index);
            entries.push(f(&index));
        }
        Self::new(order, dim, entries)
    }

    /// Builds an `n x n` matrix (order-2 tensor) from its rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(2, dim, entries)
    }

    /// Diagonal tensor with `diagonal[i]` at `(i, i, .., i)`.
    pub fn diagonal(order: usize, diagonal: &[f64]) -> Result<Self> {
        let dim = diagonal.len();
        let mut t = Self::zeros(order, dim)?;
        let stride = diagonal_stride(order, dim);
        for (i, &d) in diagonal.iter().enumerate() {
            t.entries[i * stride] = d;
        }
        t.check_finite()?;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.order == other.order && self.dim == other.dim
    }

    /// Offset of a 0-based multi-index. Panics if the index has the wrong
    /// length or a component is out of range.
    pub fn offset(&self, index: &[usize]) -> usize {
        assert_eq!(index.len(), self.order, "index length must equal the order");
        index.iter().fold(0, |acc, &i| {
            assert!(i < self.dim, "index component {i} out of range");
            acc * self.dim + i
        })
    }

    /// 0-based multi-index stored at `offset`.
    pub fn unravel(&self, offset: usize) -> Vec<usize> {
        let mut index = vec![0; self.order];
        unravel_into(offset, self.dim, &mut index);
        index
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        self.entries[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::NonFinite {
                offset: self.offset(index),
            });
        }
        let offset = self.offset(index);
        self.entries[offset] = value;
        Ok(())
    }

    pub fn max_abs(&self) -> f64 {
        crate::num::max_abs(&self.entries)
    }

    /// `max(1, max|a|)`, the scale all absolute tolerances are multiplied by.
    pub fn scale(&self) -> f64 {
        crate::num::scale_of(&self.entries)
    }

    /// Offset of the reversed index `(n-i1+1, .., n-im+1)`.
    pub fn reversed_offset(&self, offset: usize) -> usize {
        self.entries.len() - 1 - offset
    }

    /// Offset of `(i, i, .., i)`.
    pub fn diagonal_offset(&self, i: usize) -> usize {
        i * diagonal_stride(self.order, self.dim)
    }

    /// Row `i` as the flat block of entries whose leading index is `i`.
    pub fn row(&self, i: usize) -> &[f64] {
        let width = self.entries.len() / self.dim;
        &self.entries[i * width..(i + 1) * width]
    }

    /// `max |a - b|` over entries, with the 0-based offset attaining it.
    pub fn max_abs_diff(&self, other: &Self) -> Result<(f64, usize)> {
        self.require_same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .enumerate()
            .fold((0.0, 0), |best, (o, d)| if d > best.0 { (d, o) } else { best }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale_by(&self, t: f64) -> Result<Self> {
        Self::new(self.order, self.dim, self.entries.iter().map(|a| a * t).collect())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    /// Elementwise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// The reversed tensor `A^c` with `a^c_{i1..im} = a_{n-i1+1..n-im+1}`.
    pub fn reversed(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        Self {
            order: self.order,
            dim: self.dim,
            entries,
        }
    }

    pub(crate) fn from_parts_unchecked(order: usize, dim: usize, entries: Vec<f64>) -> Self {
        debug_assert_eq!(Some(entries.len()), entry_count(order, dim));
        Self {
            order,
            dim,
            entries,
        }
    }

    pub(crate) fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            order: self.order,
            dim: self.dim,
            entries: self.entries.iter().map(|&a| f(a)).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.require_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::new(self.order, self.dim, entries)
    }

    pub(crate) fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left_order: self.order,
                left_dim: self.dim,
                right_order: other.order,
                right_dim: other.dim,
            })
        }
    }

    fn check_finite(&self) -> Result<()> {
        match self.entries.iter().position(|v| !v.is_finite()) {
            Some(offset) => Err(Error::NonFinite { offset }),
            None => Ok(()),
        }
    }
}

impl Index<usize> for DenseTensor {
    type Output = f64;

    fn index(&self, offset: usize) -> &f64 {
        &self.entries[offset]
    }
}

impl IndexMut<usize> for DenseTensor {
    fn index_mut(&mut self, offset: usize) -> &mut f64 {
        &mut self.entries[offset]
    }
}

fn checked_len(order: usize, dim: usize) -> Result<usize> {
    if order == 0 || dim == 0 {
        return Err(Error::InvalidShape { order, dim });
    }
    entry_count(order, dim).ok_or(Error::InvalidShape { order, dim })
}

/// Offset distance between consecutive diagonal entries: `1 + n + .. + n^(m-1)`.
fn diagonal_stride(order: usize, dim: usize) -> usize {
    (0..order).fold(0, |acc, _| acc * dim + 1)
}

pub(crate) fn unravel_into(mut offset: usize, dim: usize, index: &mut [usize]) {
    for slot in index.iter_mut().rev() {
        *slot = offset % dim;
        offset /= dim;
    }
}

/// A real vector with finite components.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawVector", into = "RawVector"))]
pub struct Vector {
    components: Vec<f64>,
}

#[cfg(feature = "serde")]
#[derive(serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVector {
    dim: usize,
    components: Vec<f64>,
}

#[cfg(feature = "serde")]
impl TryFrom<RawVector> for Vector {
    type Error = Error;

    fn try_from(raw: RawVector) -> Result<Self> {
        if raw.components.len() != raw.dim {
            return Err(Error::EntryCount {
                expected: raw.dim,
                found: raw.components.len(),
            });
        }
        Vector::new(raw.components)
    }
}

#[cfg(feature = "serde")]
impl From<Vector> for RawVector {
    fn from(v: Vector) -> Self {
        RawVector {
            dim: v.dim(),
            components: v.components,
        }
    }
}

impl Vector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidShape { order: 1, dim: 0 });
        }
        if let Some(offset) = components.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { offset });
        }
        Ok(Self { components })
    }

    pub fn ones(dim: usize) -> Self {
        Self {
            components: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn into_components(self) -> Vec<f64> {
        self.components
    }

    pub fn dot(&self, other: &Self) -> Result<f64> {
        require_dim(other.dim(), self.dim())?;
        let mut s = CompensatedSum::default();
        for (a, b) in self.components.iter().zip(&other.components) {
            s.add(a * b);
        }
        Ok(s.total())
    }

    pub fn norm(&self) -> f64 {
        crate::num::sqrt(self.components.iter().map(|v| v * v).sum())
    }

    pub fn max_abs(&self) -> f64 {
        crate::num::max_abs(&self.components)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&v| v == 0.0)
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self {
            components: self.components.iter().map(|v| v * t).collect(),
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            components: self.components.iter().map(|v| v.abs()).collect(),
        }
    }

    /// `max |x - y|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .fold(0.0, |m, (a, b)| f64::max(m, (a - b).abs()))
    }

    pub(crate) fn from_vec_unchecked(components: Vec<f64>) -> Self {
        Self { components }
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.components[i]
    }
}

pub(crate) fn require_dim(found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `Jx`: the vector with its components in reverse order.
pub fn flip_vector(x: &Vector) -> Vector {
    let mut components = x.components.clone();
    components.reverse();
    Vector { components }
}

/// `A^c`: every index of `A` reversed.
pub fn reverse_tensor(a: &DenseTensor) -> DenseTensor {
    a.reversed()
}

/// `A x^{m-1}`, the vector with components `sum a_{i i2..im} x_{i2}..x_{im}`.
///
/// Terms are accumulated in storage order with compensated summation, so with
/// `x` all ones this reproduces [`row_sums`] bit for bit.
pub fn apply(a: &DenseTensor, x: &Vector) -> Result<Vector> {
    if a.order() < 2 {
        return Err(Error::OrderTooSmall {
            required: 2,
            found: a.order(),
        });
    }
    require_dim(x.dim(), a.dim())?;
    let n = a.dim();
    let trailing = a.order() - 1;
    let mut index = vec![0; trailing];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut sum = CompensatedSum::default();
        for (t, &entry) in a.row(i).iter().enumerate() {
            unravel_into(t, n, &mut index);
            let term = index.iter().fold(entry, |p, &j| p * x[j]);
            sum.add(term);
        }
        out.push(sum.total());
    }
    Ok(Vector::from_vec_unchecked(out))
}

/// `f(x) = A x^m = sum a_{i1..im} x_{i1}..x_{im}`.
pub fn poly_eval(a: &DenseTensor, x: &Vector) -> Result<f64> {
    require_dim(x.dim(), a.dim())?;
    let mut index = vec![0; a.order()];
    let mut sum = CompensatedSum::default();
    for (offset, &entry) in a.entries().iter().enumerate() {
        unravel_into(offset, a.dim(), &mut index);
        sum.add(index.iter().fold(entry, |p, &j| p * x[j]));
    }
    Ok(sum.total())
}

/// `x^{[p]}`, componentwise `p`-th power.
pub fn power_vector(x: &Vector, p: u32) -> Vector {
    Vector::from_vec_unchecked(x.components.iter().map(|&v| powi(v, p)).collect())
}

/// Elementwise product `A ∘ B`.
pub fn hadamard(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    a.hadamard(b)
}

/// Row sums `r_i = sum_{i2..im} a_{i i2..im}`. For order 1 this is the tensor itself.
pub fn row_sums(a: &DenseTensor) -> Vector {
    let out = (0..a.dim())
        .map(|i| {
            let mut sum = CompensatedSum::default();
            for &v in a.row(i) {
                sum.add(v);
            }
            sum.total()
        })
        .collect();
    Vector::from_vec_unchecked(out)
}
