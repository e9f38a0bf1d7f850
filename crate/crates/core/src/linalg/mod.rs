//! Dense complex linear algebra substrate.
//!
//! Square complex matrices with Hermitian/unitary wrappers, a cyclic Jacobi
//! eigensolver for complex Hermitian matrices, Kronecker products, and the
//! random ensembles (GUE, Haar unitaries) the sampling modules are built on.

mod eigen;
mod matrix;
mod random;

pub use eigen::{eig_hermitian, eigenvalues};
pub use matrix::{kron, kron_hermitian, CMatrix, EigenvalueSequence, HermitianMatrix, UnitaryMatrix};
pub use random::{haar_unitary, sample_gue, shifted_gue};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not Hermitian: max |A - A*| deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("matrix is not unitary: max |U*U - I| deviation {deviation:e}")]
    NotUnitary { deviation: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("eigenvalue sequence is not nonincreasing at position {position}")]
    NotSorted { position: usize },
    #[error("Jacobi sweep limit reached after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("invalid interval: require {lo} < {hi}")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("cannot parse {token:?} as a finite number")]
    ParseNumber { token: String },
}
