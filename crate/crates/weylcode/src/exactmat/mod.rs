//! Exact linear algebra over cyclotomic integers.
//!
//! Three representations cover everything the rest of the crate needs:
//!
//! * [`MonomialMatrix`]: one nonzero root-of-unity entry per row and column,
//!   stored as a permutation plus phase exponents. Products, adjoints, traces,
//!   determinants and tensor products stay in this compressed form.
//! * [`DenseMatrix`]: full matrices of [`CycInt`] entries, used for operators
//!   that are not monomial (the unnormalized Fourier matrix, operator sums)
//!   and as the oracle the monomial fast paths are checked against.
//! * [`StateVector`]: sparse states over a tensor product of small systems,
//!   with exact amplitudes and no stored zeros.

mod dense;
mod monomial;
mod state;

pub use dense::DenseMatrix;
pub use monomial::MonomialMatrix;
pub use state::{decode_index, encode_index, StateVector};

use thiserror::Error;

/// Validation failures for matrix and state construction or application.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("permutation is not a bijection on 0..{dim}")]
    BadPermutation { dim: usize },
    #[error("phase exponent {phase} is out of range for order {order}")]
    PhaseOutOfRange { phase: u64, order: u64 },
    #[error("expected {expected} site operators, got {got}")]
    SiteCount { expected: usize, got: usize },
    #[error("basis index digit {digit} is out of range for a dimension-{dim} site")]
    DigitOutOfRange { digit: u32, dim: u32 },
}
