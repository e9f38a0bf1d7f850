//! Words in noncommuting letters, their cyclic orbits, and the trace
//! calculus on the free algebra they span.
//!
//! The commutator subspace is exactly the set of elements whose coefficients
//! sum to zero within every rotation orbit; its complement is spanned by the
//! family built from shifted Chebyshev polynomials (powers of one letter) and
//! alternating second-kind products (one per non-singleton orbit). This
//! module provides the orbit enumeration, the membership test, the basis and
//! decomposition, trace evaluation against matrix tuples, the randomized
//! kernel-rank probe at fixed matrix size, and the random search for a matrix
//! pair separating a given element from the commutator subspace.

mod basis;
mod eval;
mod poly;
mod word;

pub use basis::{decompose_ij, xi_basis, xi_element_for_class, XiElement, XiLabel};
pub use eval::{find_separating_pair, kernel_rank, trace_eval, SeparationResult};
pub use poly::{is_commutator_element, NCPoly};
pub use word::{cyclic_classes, CyclicClass, SForm, Word, WordShape};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WordError {
    #[error("letters are 1-based; 0 is not a valid letter")]
    ZeroLetter,
    #[error("word uses letter {letter} but only {provided} matrices were provided")]
    LetterOutOfRange { letter: u8, provided: usize },
    #[error("the empty word has no block form")]
    EmptyWord,
    #[error("matrices must share one dimension: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid interval: require {lo} < {hi}")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("element lies in the commutator subspace; every trace evaluation vanishes")]
    CommutatorElement,
    #[error("rank certification needs at least as many trials as classes: {trials} < {classes}")]
    InsufficientTrials { trials: usize, classes: usize },
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
}
