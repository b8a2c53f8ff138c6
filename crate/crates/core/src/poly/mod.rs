//! Exact arithmetic: prime-field scalars, sparse bivariate polynomials and
//! degree-labelled Hilbert-Burch matrices.

mod bipoly;
mod field;
mod matrix;
mod parse;

pub use bipoly::{BiPoly, Monomial};
pub use field::{Fp, PrimeField};
pub use matrix::{HilbertBurchMatrix, MatrixJson, MatrixMode};
pub use parse::parse_poly;

use thiserror::Error;

use crate::cancel::Cancellation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("{0} is not a prime in (3, 2^31)")]
    BadPrime(u32),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed Hilbert-Burch matrix: {0}")]
    Malformed(String),
    #[error("no free matrix slot realizes the cancellation {0}")]
    NoSlot(Cancellation),
}
