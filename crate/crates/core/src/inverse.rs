//! Left and right inverses under the general tensor product.
//!
//! If `AB = I` then `A` is a left inverse of `B` and `B` is a right inverse
//! of `A`. Diagonal centrosymmetric tensors get explicit diagonal inverses of
//! any order `k >= 2`. For a general centrosymmetric tensor the only candidate
//! order-2 inverse can be read off its entries `a_{ij..j}`; recovery builds
//! that candidate and verifies it.

use alloc::format;
use alloc::vec::Vec;

use crate::linalg;
use crate::num::{powi, real_root};
use crate::product::shao_product;
use crate::structure::{check_structure, DEFAULT_REL_TOL};
use crate::tensor::DenseTensor;
use crate::{Error, Result};

/// Off-diagonal entries up to this times the tensor scale count as zero.
pub const DIAGONAL_REL_TOL: f64 = 1e-14;

/// Largest residual accepted from a diagonal construction.
pub const DIAGONAL_RESIDUAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Side {
    Left,
    Right,
}

/// A verified inverse.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InverseResult {
    pub inverse: DenseTensor,
    pub side: Side,
    pub order: usize,
    /// `max |(product - I)|` over entries.
    pub residual: f64,
    pub centro_verdict: bool,
    /// 1-norm condition number of the order-2 candidate's inverse; absent for
    /// diagonal constructions.
    pub condition: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum NoInverseReason {
    /// The matrix read off `a_{ij..j}` is singular.
    Singular,
    /// The candidate is too badly conditioned to trust.
    IllConditioned,
    /// The candidate does not satisfy the defining product.
    ResidualTooLarge,
}

/// Result of an order-2 inverse recovery. A missing inverse is an answer,
/// not an error.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "status", rename_all = "snake_case"))]
pub enum Recovery {
    Found(InverseResult),
    NoInverse {
        side: Side,
        reason: NoInverseReason,
        condition: Option<f64>,
        residual: Option<f64>,
    },
}

impl Recovery {
    pub fn found(&self) -> Option<&InverseResult> {
        match self {
            Recovery::Found(r) => Some(r),
            Recovery::NoInverse { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryOptions {
    /// Candidates whose 1-norm condition number exceeds this are rejected.
    pub max_condition: f64,
    /// Accept when `residual <= residual_rel_tol * max(1, max|A|)`.
    pub residual_rel_tol: f64,
    /// Relative tolerance for the centrosymmetry verdict on the recovered matrix.
    pub centro_rel_tol: f64,
}

impl Default for RecoveryOptions {
    fn default() -> Self {
        Self {
            max_condition: 1e12,
            residual_rel_tol: 1e-10,
            centro_rel_tol: 1e-10,
        }
    }
}

/// `max |(AB)_{..} - δ_{..}|`: zero exactly when `A` is a left inverse of `B`
/// (equivalently, `B` a right inverse of `A`).
pub fn verify_inverse(a: &DenseTensor, b: &DenseTensor) -> Result<f64> {
    let product = shao_product(a, b)?;
    let identity = DenseTensor::identity(product.order(), product.dim())?;
    Ok(product.max_abs_diff(&identity)?.0)
}

fn diagonal_entries(a: &DenseTensor) -> Result<Vec<f64>> {
    let tol = DIAGONAL_REL_TOL * a.scale();
    let diag: Vec<usize> = (0..a.dim()).map(|i| a.diagonal_offset(i)).collect();
    let off_diagonal = a
        .entries()
        .iter()
        .enumerate()
        .filter(|(o, _)| !diag.contains(o))
        .fold(0.0, |m, (_, v)| f64::max(m, v.abs()));
    if off_diagonal > tol {
        return Err(Error::Precondition(format!(
            "tensor is not diagonal: off-diagonal magnitude {off_diagonal:e}"
        )));
    }
    if !check_structure(a, DEFAULT_REL_TOL).verdict.is_centro() {
        return Err(Error::Precondition("tensor is not centrosymmetric".into()));
    }
    let diagonal: Vec<f64> = diag.iter().map(|&o| a[o]).collect();
    if let Some(i) = diagonal.iter().position(|d| d.abs() <= tol) {
        return Err(Error::ZeroDiagonal { index: i + 1 });
    }
    Ok(diagonal)
}

fn require_inverse_order(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::OrderTooSmall { required: 2, found: k });
    }
    Ok(())
}

fn finish(inverse: DenseTensor, side: Side, residual: f64, condition: Option<f64>, centro_rel_tol: f64) -> InverseResult {
    InverseResult {
        order: inverse.order(),
        centro_verdict: check_structure(&inverse, centro_rel_tol).verdict.is_centro(),
        inverse,
        side,
        residual,
        condition,
    }
}

/// Order-`k` diagonal `B` with `BA = I`: `b_{i..i} = 1 / a_{i..i}^(k-1)`.
pub fn diagonal_left_inverse(a: &DenseTensor, k: usize) -> Result<InverseResult> {
    require_inverse_order(k)?;
    let diagonal = diagonal_entries(a)?;
    let exponent = (k - 1) as u32;
    let b: Vec<f64> = diagonal.iter().map(|&d| 1.0 / powi(d, exponent)).collect();
    let inverse = DenseTensor::diagonal(k, &b)?;
    let residual = verify_inverse(&inverse, a)?;
    check_diagonal_residual(residual)?;
    Ok(finish(inverse, Side::Left, residual, None, DEFAULT_REL_TOL))
}

/// Order-`k` diagonal `B` with `AB = I`: `b_{i..i} = (1/a_{i..i})^(1/(m-1))`.
///
/// For even `m` the odd root is real for either sign; for odd `m` every
/// diagonal entry must be positive.
pub fn diagonal_right_inverse(a: &DenseTensor, k: usize) -> Result<InverseResult> {
    require_inverse_order(k)?;
    if a.order() < 2 {
        return Err(Error::OrderTooSmall {
            required: 2,
            found: a.order(),
        });
    }
    let diagonal = diagonal_entries(a)?;
    let root = (a.order() - 1) as u32;
    if root.is_multiple_of(2) {
        if let Some(i) = diagonal.iter().position(|&d| d < 0.0) {
            return Err(Error::NoRealRoot { index: i + 1 });
        }
    }
    let b: Vec<f64> = diagonal.iter().map(|&d| real_root(1.0 / d, root)).collect();
    let inverse = DenseTensor::diagonal(k, &b)?;
    let residual = verify_inverse(a, &inverse)?;
    check_diagonal_residual(residual)?;
    Ok(finish(inverse, Side::Right, residual, None, DEFAULT_REL_TOL))
}

fn check_diagonal_residual(residual: f64) -> Result<()> {
    if residual > DIAGONAL_RESIDUAL_TOL {
        return Err(Error::Consistency(format!(
            "diagonal inverse has residual {residual:e}"
        )));
    }
    Ok(())
}

fn require_centro(a: &DenseTensor) -> Result<()> {
    if a.order() < 2 {
        return Err(Error::OrderTooSmall {
            required: 2,
            found: a.order(),
        });
    }
    if !check_structure(a, DEFAULT_REL_TOL).verdict.is_centro() {
        return Err(Error::Precondition("tensor is not centrosymmetric".into()));
    }
    Ok(())
}

/// `M_{ij} = f(a_{ij..j})` as a row-major `n x n` buffer.
fn read_candidate(a: &DenseTensor, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let n = a.dim();
    let mut index = alloc::vec![0; a.order()];
    let mut m = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            index[0] = i;
            index[1..].iter_mut().for_each(|v| *v = j);
            m.push(f(a.get(&index)));
        }
    }
    m
}

fn recover(a: &DenseTensor, side: Side, candidate: Vec<f64>, opts: &RecoveryOptions) -> Result<Recovery> {
    let n = a.dim();
    let Some((inv, condition)) = linalg::invert(&candidate, n) else {
        return Ok(Recovery::NoInverse {
            side,
            reason: NoInverseReason::Singular,
            condition: None,
            residual: None,
        });
    };
    if !(condition <= opts.max_condition) {
        return Ok(Recovery::NoInverse {
            side,
            reason: NoInverseReason::IllConditioned,
            condition: Some(condition),
            residual: None,
        });
    }
    let b = DenseTensor::new(2, n, inv)?;
    let residual = match side {
        Side::Left => verify_inverse(&b, a)?,
        Side::Right => verify_inverse(a, &b)?,
    };
    if !(residual <= opts.residual_rel_tol * a.scale()) {
        return Ok(Recovery::NoInverse {
            side,
            reason: NoInverseReason::ResidualTooLarge,
            condition: Some(condition),
            residual: Some(residual),
        });
    }
    Ok(Recovery::Found(finish(b, side, residual, Some(condition), opts.centro_rel_tol)))
}

/// Recovers the order-2 `B` with `BA = I`, if there is one.
///
/// Such a `B` forces `A = B^{-1} I`, so `a_{ij..j} = (B^{-1})_{ij}`: the
/// candidate is the inverse of that matrix.
pub fn recover_order2_left_inverse(a: &DenseTensor, opts: &RecoveryOptions) -> Result<Recovery> {
    require_centro(a)?;
    let candidate = read_candidate(a, |v| v);
    recover(a, Side::Left, candidate, opts)
}

/// Recovers the order-2 `B` with `AB = I` for even order `m`.
///
/// Such a `B` forces `A = I B^{-1}`, so `a_{ij..j} = ((B^{-1})_{ij})^(m-1)`;
/// `m - 1` is odd, so the real root is unique.
pub fn recover_order2_right_inverse(a: &DenseTensor, opts: &RecoveryOptions) -> Result<Recovery> {
    if a.order() % 2 == 1 {
        return Err(Error::Precondition(format!(
            "order-2 right inverse recovery needs an even order, found {}",
            a.order()
        )));
    }
    require_centro(a)?;
    let root = (a.order() - 1) as u32;
    let candidate = read_candidate(a, |v| real_root(v, root));
    recover(a, Side::Right, candidate, opts)
}

/// Whether every off-diagonal entry is within [`DIAGONAL_REL_TOL`] of zero.
pub fn is_diagonal(a: &DenseTensor) -> bool {
    let tol = DIAGONAL_REL_TOL * a.scale();
    a.entries()
        .iter()
        .enumerate()
        .all(|(o, v)| v.abs() <= tol || (0..a.dim()).any(|i| a.diagonal_offset(i) == o))
}

/// Looks for an order-`k` inverse of `a` on the given side: the diagonal
/// construction for diagonal `a`, order-2 recovery otherwise.
pub fn find_inverse(a: &DenseTensor, side: Side, k: usize, opts: &RecoveryOptions) -> Result<Recovery> {
    if is_diagonal(a) {
        let found = match side {
            Side::Left => diagonal_left_inverse(a, k)?,
            Side::Right => diagonal_right_inverse(a, k)?,
        };
        return Ok(Recovery::Found(found));
    }
    if k != 2 {
        return Err(Error::Precondition(format!(
            "only order-2 inverses can be recovered for a non-diagonal tensor, requested order {k}"
        )));
    }
    match side {
        Side::Left => recover_order2_left_inverse(a, opts),
        Side::Right => recover_order2_right_inverse(a, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{random_structured, Kind};

    #[test]
    fn find_inverse_dispatches_on_shape() {
        let d = DenseTensor::diagonal(3, &[2.0, 2.0]).unwrap();
        assert!(is_diagonal(&d));
        let r = find_inverse(&d, Side::Left, 3, &RecoveryOptions::default()).unwrap();
        assert_eq!(r.found().unwrap().order, 3);
        let c = DenseTensor::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        assert!(!is_diagonal(&c));
        assert!(find_inverse(&c, Side::Right, 2, &RecoveryOptions::default()).unwrap().found().is_some());
        assert!(matches!(
            find_inverse(&c, Side::Left, 3, &RecoveryOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn identity_inverts_identity() {
        let i = DenseTensor::identity(2, 3).unwrap();
        assert_eq!(verify_inverse(&i, &i).unwrap(), 0.0);
    }

    #[test]
    fn generic_pair_is_not_inverse() {
        let a = random_structured(2, 3, Kind::General, 1).unwrap();
        let b = random_structured(2, 3, Kind::General, 2).unwrap();
        assert!(verify_inverse(&a, &b).unwrap() > 0.1);
    }

    #[test]
    fn diagonal_left_example() {
        let a = DenseTensor::diagonal(3, &[2.0, 2.0]).unwrap();
        let r = diagonal_left_inverse(&a, 2).unwrap();
        assert_eq!(r.inverse, DenseTensor::diagonal(2, &[0.5, 0.5]).unwrap());
        assert_eq!(r.residual, 0.0);
        assert!(r.centro_verdict);
        assert_eq!(r.side, Side::Left);
    }

    #[test]
    fn diagonal_zero_entry_is_rejected() {
        let a = DenseTensor::diagonal(3, &[2.0, 0.0, 2.0]).unwrap();
        assert_eq!(diagonal_left_inverse(&a, 2), Err(Error::ZeroDiagonal { index: 2 }));
        assert_eq!(diagonal_right_inverse(&a, 3), Err(Error::ZeroDiagonal { index: 2 }));
    }

    #[test]
    fn identity_inverses_are_identity() {
        for m in 2..5 {
            let i = DenseTensor::identity(m, 3).unwrap();
            for k in 2..4 {
                assert_eq!(diagonal_left_inverse(&i, k).unwrap().inverse, DenseTensor::identity(k, 3).unwrap());
                assert_eq!(diagonal_right_inverse(&i, k).unwrap().inverse, DenseTensor::identity(k, 3).unwrap());
            }
        }
    }

    #[test]
    fn diagonal_right_cube_root() {
        let a = DenseTensor::diagonal(4, &[16.0, 16.0]).unwrap();
        let r = diagonal_right_inverse(&a, 2).unwrap();
        assert!((r.inverse.get(&[0, 0]) - 0.396_850_262_992_049_9).abs() < 1e-15);
        assert!(r.residual <= 1e-12);
        // Even order: negative diagonal entries have real odd roots.
        let neg = DenseTensor::diagonal(4, &[-8.0, 3.0, -8.0]).unwrap();
        let r = diagonal_right_inverse(&neg, 3).unwrap();
        assert!((r.inverse.get(&[0, 0, 0]) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn odd_order_right_inverse_needs_positive_diagonal() {
        let a = DenseTensor::diagonal(3, &[-1.0, -1.0]).unwrap();
        assert_eq!(diagonal_right_inverse(&a, 2), Err(Error::NoRealRoot { index: 1 }));
    }

    #[test]
    fn non_diagonal_or_non_centro_is_a_precondition_error() {
        let c = random_structured(3, 2, Kind::Centro, 3).unwrap();
        assert!(matches!(diagonal_left_inverse(&c, 2), Err(Error::Precondition(_))));
        let d = DenseTensor::diagonal(3, &[1.0, 2.0]).unwrap();
        assert!(matches!(diagonal_left_inverse(&d, 2), Err(Error::Precondition(_))));
        assert!(matches!(diagonal_left_inverse(&DenseTensor::identity(3, 2).unwrap(), 1), Err(Error::OrderTooSmall { .. })));
    }

    #[test]
    fn recovery_of_identity() {
        for m in [2, 3, 4] {
            let i = DenseTensor::identity(m, 3).unwrap();
            let r = recover_order2_left_inverse(&i, &RecoveryOptions::default()).unwrap();
            let r = r.found().unwrap();
            assert_eq!(r.inverse, DenseTensor::identity(2, 3).unwrap());
            assert_eq!(r.residual, 0.0);
        }
        let i = DenseTensor::identity(4, 2).unwrap();
        let r = recover_order2_right_inverse(&i, &RecoveryOptions::default()).unwrap();
        assert_eq!(r.found().unwrap().inverse, DenseTensor::identity(2, 2).unwrap());
    }

    #[test]
    fn recovery_reports_missing_inverse() {
        let a = random_structured(3, 3, Kind::Centro, 21).unwrap();
        let r = recover_order2_left_inverse(&a, &RecoveryOptions::default()).unwrap();
        assert!(matches!(
            r,
            Recovery::NoInverse {
                reason: NoInverseReason::ResidualTooLarge,
                ..
            }
        ));
        let z = DenseTensor::zeros(3, 2).unwrap();
        let r = recover_order2_left_inverse(&z, &RecoveryOptions::default()).unwrap();
        assert!(matches!(
            r,
            Recovery::NoInverse {
                reason: NoInverseReason::Singular,
                ..
            }
        ));
    }

    #[test]
    fn right_recovery_needs_even_order() {
        let i = DenseTensor::identity(3, 2).unwrap();
        assert!(matches!(
            recover_order2_right_inverse(&i, &RecoveryOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn recovery_rejects_unstructured_input() {
        let g = random_structured(3, 3, Kind::General, 5).unwrap();
        assert!(matches!(
            recover_order2_left_inverse(&g, &RecoveryOptions::default()),
            Err(Error::Precondition(_))
        ));
    }
}
