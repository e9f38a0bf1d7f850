//! Seeded Monte Carlo experiments for the trace fluctuation laws of GUE
//! matrices: the CLT for Chebyshev linear statistics, second-order covariance
//! of mixed words, fluctuations of the spanning family, the elementary
//! anti-concentration bound, and spectral edge containment.
//!
//! Every experiment is deterministic given its `RngState`: sample loops run
//! in parallel over per-index substreams and reduce in index order.
//! Pass/fail gates use fixed tolerance bands or 3-standard-error bands; both
//! are recorded in the emitted report.

mod anticonc;
mod clt;
mod edge;
mod report;
mod sof;
pub mod stats;
mod traces;
mod xi;

pub use anticonc::anticoncentration_w;
pub use clt::clt_johansson;
pub use edge::edge_containment;
pub use report::{ExperimentReport, GateCheck};
pub use sof::{sof_experiment, sof_limit_formula};
pub use traces::{apply_poly, cheb_traces_via_eigen, cheb_traces_via_powers, power_traces};
pub use xi::xi_fluctuations;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FluctError {
    #[error("polynomial {index} is not centered: τ(p(s)) = {tau:e}")]
    Uncentered { index: usize, tau: f64 },
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
    #[error(transparent)]
    Word(#[from] crate::ncwords::WordError),
    #[error(transparent)]
    Cheb(#[from] crate::chebyshev::ChebError),
}
