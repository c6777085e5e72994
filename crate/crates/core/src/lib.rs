//! Centrosymmetric and skew-centrosymmetric tensors.
//!
//! A real tensor `A = (a_{i1..im})` of order `m` and dimension `n` is
//! *centrosymmetric* when every entry equals the entry at the fully reversed
//! index, `a_{i1..im} = a_{n-i1+1 .. n-im+1}`, and *skew-centrosymmetric* when
//! it equals the negation of that entry. This crate provides:
//!
//! * [`tensor`]: dense hypercubic storage, the flip/reversal operators,
//!   contractions `A x^{m-1}` and `A x^m`, and elementwise algebra.
//! * [`structure`]: structure predicates (three independent routes), the
//!   centro + skew split, row-sum and polynomial reflection checks, and seeded
//!   generators.
//! * [`product`]: the general tensor product of an order-`m` and an order-`k`
//!   tensor (order `(m-1)(k-1)+1`) with the exchange matrix `J`.
//! * [`cauchy`]: Cauchy tensors `1/(c_{i1}+..+c_{im})` from a generating vector.
//! * [`inverse`]: left/right inverses of diagonal tensors and order-2 inverse
//!   recovery for general centrosymmetric tensors.
//! * [`eigen`]: real H-eigenpairs `A x^{m-1} = λ x^{[m-1]}`, closed forms for
//!   dimensions 2 and 3, a multistart Newton solver, and vector symmetry
//!   classification.
//!
//! Indices are 0-based in the API; reports that name an index (worst entries,
//! witnesses, singular multisets) use 1-based indices.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(missing_debug_implementations)]
// `!(x > 0.0)` style tests are used on purpose so NaN takes the failing branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod cauchy;
pub mod eigen;
mod error;
pub mod inverse;
mod linalg;
mod num;
pub mod product;
pub mod structure;
pub mod tensor;

pub use crate::error::{Error, ErrorKind, Result};
pub use crate::tensor::{DenseTensor, Vector};
