//! Cauchy tensors `c_{i1..im} = 1 / (c_{i1} + .. + c_{im})`.
//!
//! A Cauchy tensor is centrosymmetric exactly when its generating vector is
//! symmetric (`Jc = c`). For even dimension it is skew-centrosymmetric exactly
//! when `Jc = -c`; for odd dimension it never is, since the central diagonal
//! entry `1/(m c_i)` would have to vanish.

use alloc::vec;
use alloc::vec::Vec;

use crate::product::{exchange_matrix, shao_product};
use crate::tensor::{unravel_into, DenseTensor, Vector};
use crate::{Error, Result};

/// Index sums with magnitude below this times `max(1, max|c_i|)` are treated as zero.
pub const SINGULAR_SUM_REL: f64 = 1e-14;

/// A Cauchy tensor described by its order and generating vector.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawSpec", into = "RawSpec"))]
pub struct CauchySpec {
    order: usize,
    generating: Vector,
}

#[cfg(feature = "serde")]
#[derive(serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    order: usize,
    generating: Vec<f64>,
}

#[cfg(feature = "serde")]
impl TryFrom<RawSpec> for CauchySpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        CauchySpec::new(raw.order, Vector::new(raw.generating)?)
    }
}

#[cfg(feature = "serde")]
impl From<CauchySpec> for RawSpec {
    fn from(s: CauchySpec) -> Self {
        RawSpec {
            order: s.order,
            generating: s.generating.into_components(),
        }
    }
}

impl CauchySpec {
    /// Shape-checks the spec. Vanishing index sums are detected by
    /// [`CauchySpec::validate`] and [`materialize`].
    pub fn new(order: usize, generating: Vector) -> Result<Self> {
        if order == 0 || crate::tensor::entry_count(order, generating.dim()).is_none() {
            return Err(Error::InvalidShape {
                order,
                dim: generating.dim(),
            });
        }
        Ok(Self { order, generating })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.generating.dim()
    }

    pub fn generating(&self) -> &Vector {
        &self.generating
    }

    /// Scans every multiset of `order` indices and rejects the spec if one of
    /// them has a (near-)zero sum. The error names the first such multiset,
    /// 1-based and sorted.
    pub fn validate(&self) -> Result<()> {
        let c = self.generating.components();
        let threshold = SINGULAR_SUM_REL * f64::max(1.0, self.generating.max_abs());
        let n = c.len();
        // Nondecreasing index tuples enumerate the multisets.
        let mut idx = vec![0usize; self.order];
        loop {
            let sum = sorted_sum(idx.iter().map(|&i| c[i]));
            if sum.abs() < threshold {
                return Err(Error::SingularCauchy {
                    indices: idx.iter().map(|i| i + 1).collect(),
                });
            }
            let Some(pos) = idx.iter().rposition(|&i| i + 1 < n) else {
                return Ok(());
            };
            let next = idx[pos] + 1;
            idx[pos..].iter_mut().for_each(|i| *i = next);
        }
    }
}

/// Sum of the values in ascending order, so the result depends only on the
/// multiset of values.
fn sorted_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.iter().sum()
}

/// Builds the dense Cauchy tensor. Entries are exactly invariant under index
/// permutations, and exactly centrosymmetric when `c` is exactly symmetric.
pub fn materialize(spec: &CauchySpec) -> Result<DenseTensor> {
    spec.validate()?;
    let c = spec.generating.components();
    let n = c.len();
    let len = crate::tensor::entry_count(spec.order, n).ok_or(Error::InvalidShape {
        order: spec.order,
        dim: n,
    })?;
    let mut idx = vec![0; spec.order];
    let mut entries = Vec::with_capacity(len);
    for o in 0..len {
        unravel_into(o, n, &mut idx);
        entries.push(1.0 / sorted_sum(idx.iter().map(|&i| c[i])));
    }
    DenseTensor::new(spec.order, n, entries)
}

/// Tests the generating vector: `max|c_i - c_{n-i+1}| <= tol * max(1, max|c|)`.
pub fn cauchy_is_centro(spec: &CauchySpec, rel_tol: f64) -> bool {
    mirror_gap(&spec.generating, 1.0) <= rel_tol * f64::max(1.0, spec.generating.max_abs())
}

/// `Jc = -c` within tolerance, and `false` for every odd dimension.
pub fn cauchy_is_skew(spec: &CauchySpec, rel_tol: f64) -> bool {
    if spec.dim() % 2 == 1 {
        return false;
    }
    mirror_gap(&spec.generating, -1.0) <= rel_tol * f64::max(1.0, spec.generating.max_abs())
}

fn mirror_gap(c: &Vector, sign: f64) -> f64 {
    let c = c.components();
    let n = c.len();
    (0..n).fold(0.0, |m, i| f64::max(m, (c[i] - sign * c[n - 1 - i]).abs()))
}

/// Whether both `JC = C` and `CJ = C` hold within `rel_tol * max(1, max|C|)`.
pub fn cauchy_check_jc(spec: &CauchySpec, rel_tol: f64) -> Result<bool> {
    let tensor = materialize(spec)?;
    let j = exchange_matrix(spec.dim())?;
    let tol = rel_tol * tensor.scale();
    let jc = shao_product(&j, &tensor)?;
    if jc.max_abs_diff(&tensor)?.0 > tol {
        return Ok(false);
    }
    if tensor.order() == 1 {
        return Ok(true);
    }
    let cj = shao_product(&tensor, &j)?;
    Ok(cj.max_abs_diff(&tensor)?.0 <= tol)
}

/// Mirrors the first `ceil(n/2)` entries onto the tail, producing a symmetric vector.
pub fn palindromize(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    (0..n).map(|i| values[i.min(n - 1 - i)]).collect()
}
