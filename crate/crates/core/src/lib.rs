//! Leading ideals of height-two ideals in `k[[x, y]]`.
//!
//! From a Hilbert function `h` this crate computes the lex-segment ideal and
//! its Betti table, the Betti tables reachable by cancellations, and the
//! invariant sequences of complete intersections. It then builds concrete
//! ideals by perturbing Hilbert-Burch matrices and certifies their Hilbert
//! function, generator counts and leading ideal by exact linear algebra over
//! a prime field.
//!
//! ```
//! use tclab::oseq::OSequence;
//! let h = OSequence::from_values(&[1, 2, 3, 4, 4, 3, 3, 3, 2, 2, 2, 1]).unwrap();
//! assert_eq!(h.nu_star_lower(), 4);
//! assert!(h.is_ci_admissible());
//! ```

pub mod cancel;
pub mod lexseg;
pub mod localring;
pub mod oseq;
pub mod par;
pub mod pipeline;
pub mod poly;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    OSeq(#[from] oseq::OSeqError),
    #[error(transparent)]
    Cancel(#[from] cancel::CancelError),
    #[error(transparent)]
    Poly(#[from] poly::PolyError),
    #[error(transparent)]
    LocalRing(#[from] localring::LocalRingError),
}
