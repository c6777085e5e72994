use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Broad category of an [`Error`], used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input: bad shapes, mismatched dimensions, violated preconditions.
    Input,
    /// A well-formed question whose answer is negative (no inverse, singular spec).
    Domain,
    /// The request would exceed a configured resource cap.
    Resource,
    /// A verified identity failed to hold. Always a bug or a numerical breakdown.
    Consistency,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid shape: order {order}, dim {dim}")]
    InvalidShape { order: usize, dim: usize },

    #[error("expected {expected} entries for the given shape, found {found}")]
    EntryCount { expected: usize, found: usize },

    #[error("entry at offset {offset} is not finite")]
    NonFinite { offset: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape mismatch: order {left_order} dim {left_dim} vs order {right_order} dim {right_dim}")]
    ShapeMismatch {
        left_order: usize,
        left_dim: usize,
        right_order: usize,
        right_dim: usize,
    },

    #[error("operation requires order at least {required}, found {found}")]
    OrderTooSmall { required: usize, found: usize },

    #[error("result would hold {entries} entries, above the cap of {cap}")]
    TooLarge { entries: u128, cap: usize },

    #[error("the zero vector is not allowed here")]
    ZeroVector,

    #[error("tensor is neither centrosymmetric nor skew-centrosymmetric")]
    Unstructured,

    #[error("{0}")]
    Precondition(String),

    #[error("generating vector has a vanishing index sum over the multiset {indices:?}")]
    SingularCauchy { indices: Vec<usize> },

    #[error("no inverse: diagonal entry {index} is zero")]
    ZeroDiagonal { index: usize },

    #[error("no real inverse: diagonal entry {index} is not positive and the order is odd")]
    NoRealRoot { index: usize },

    #[error("consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::TooLarge { .. } => ErrorKind::Resource,
            Error::SingularCauchy { .. } | Error::ZeroDiagonal { .. } | Error::NoRealRoot { .. } => {
                ErrorKind::Domain
            }
            Error::Consistency(_) => ErrorKind::Consistency,
            _ => ErrorKind::Input,
        }
    }
}
