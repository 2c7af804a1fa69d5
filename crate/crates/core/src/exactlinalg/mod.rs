//! Exact field arithmetic and sparse matrices.
//!
//! Everything downstream is discrete (ranks, kernel dimensions, identity
//! checks), so there is no floating point anywhere in the crate. Two fields are
//! supported: [`Field::Rationals`] and prime fields [`Field::Prime`].

mod field;
mod matrix;
mod rational;

pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("{0} is not a prime below 2^31")]
    NotAPrime(u64),
    #[error("{value} has no image in {field}")]
    NotInField { value: String, field: Field },
    #[error("malformed scalar literal {0:?}")]
    BadLiteral(String),
}
