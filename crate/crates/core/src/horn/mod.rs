//! Horn inequality systems and the convex bodies they cut out.
//!
//! The triple sets are generated by the classical recursion: `U^n_r` collects
//! the index triples whose sums satisfy `ΣI + ΣJ = ΣK + r(r+1)/2`, `T^n_1 =
//! U^n_1`, and for `r ≥ 2` a triple of `U^n_r` survives when its positions
//! satisfy every lower-order inequality indexed by `T^r_p`. Membership of an
//! eigenvalue triple in the Horn body is the trace equality plus one linear
//! inequality per triple; the eigenvalue-function variant integrates over the
//! interval unions `σ_F^N` instead of summing entries.

mod eigfun;
mod membership;
mod triples;

pub use eigfun::EigenvalueFunction;
pub use membership::{default_tolerance, fuv_membership, horn_membership, FuvOutcome, HornMembership};
pub use triples::{horn_triples, horn_triples_with_cache, HornSystem, HornTriple};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HornError {
    #[error("eigenvalue sequences must share one length: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid Horn triple: {reason}")]
    InvalidTriple { reason: String },
    #[error("index set contains {index}, outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid step function: {reason}")]
    InvalidStepFunction { reason: String },
    #[error("cache io: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache parse: {0}")]
    Parse(#[from] serde_json::Error),
}
