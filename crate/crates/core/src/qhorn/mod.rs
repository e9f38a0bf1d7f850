//! Quantum Horn bodies: Monte Carlo sampling of the matrix-coefficient sum
//! `a_1 ⊗ U(diag(α)⊗1_d)U* + a_2 ⊗ V(diag(β)⊗1_d)V*`, the worked 4×4 example
//! with closed-form spectrum, the block-scaling/spectral-cutting
//! construction, classical-containment checks and microstate defects.

mod blocks;
mod example_k;
mod sample;

pub use blocks::{block_scale_construction, spectral_window_cut};
pub use example_k::{branch_crossing_t, example_k, figure1_curve, Figure1Row};
pub use sample::{
    inclusion_check, microstate_defect, moment_table_to_json, moments_of, parse_cloud_jsonl, parse_moment_table,
    qhorn_sample, sample_with_unitaries, CloudSample, InclusionOutcome, MomentTable, QuantumHornSpec, SampleCloud,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QhornError {
    #[error("coefficient matrices must share one dimension: {left} vs {right}")]
    CoefficientDimMismatch { left: usize, right: usize },
    #[error("alpha and beta must share one length: {left} vs {right}")]
    SequenceLengthMismatch { left: usize, right: usize },
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("total dimension {size} exceeds the feasibility guard {limit}; pass allow_large to override")]
    FeasibilityExceeded { size: usize, limit: usize },
    #[error("block {index} of pair {side} has spectrum [{min}, {max}] outside [{lo}, {hi}]")]
    SpectrumOutOfWindow { index: usize, side: usize, min: f64, max: f64, lo: f64, hi: f64 },
    #[error("target table is missing the moment for word {word}")]
    MissingMoment { word: String },
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
    #[error(transparent)]
    Horn(#[from] crate::horn::HornError),
}
