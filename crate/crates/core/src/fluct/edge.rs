use rayon::prelude::*;

use super::report::ExperimentReport;
use super::FluctError;
use crate::linalg::{eigenvalues, shifted_gue};
use crate::rng::RngState;

/// Empirical probability that the spectrum of a shifted GUE draw on `[u, v]`
/// lies inside `[u − margin, v + margin]`; tends to 1 as `N` grows.
pub fn edge_containment(
    n_dim: usize,
    u: f64,
    v: f64,
    margin: f64,
    samples: usize,
    rng: RngState,
) -> Result<ExperimentReport, FluctError> {
    if !(u < v) {
        return Err(FluctError::Domain(format!("require u < v, got [{u}, {v}]")));
    }
    if !(margin > 0.0) {
        return Err(FluctError::Domain(format!("require margin > 0, got {margin}")));
    }
    assert!(samples >= 2, "require samples ≥ 2");

    let hits: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|idx| {
            let mut gen = rng.substream(idx).rng();
            let a = shifted_gue(n_dim, u, v, &mut gen)?;
            let spectrum = eigenvalues(&a)?;
            let max = spectrum.values().first().copied().unwrap_or(0.0);
            let min = spectrum.values().last().copied().unwrap_or(0.0);
            Ok(if min >= u - margin && max <= v + margin { 1.0 } else { 0.0 })
        })
        .collect::<Result<_, FluctError>>()?;

    let p = hits.iter().sum::<f64>() / samples as f64;
    // Binomial SE with a half-count floor so the degenerate p ∈ {0, 1} case
    // still reports a positive width.
    let se = ((p * (1.0 - p) / samples as f64).sqrt()).max(0.5 / samples as f64);
    let mut report = ExperimentReport::new("edge_containment", rng.seed, n_dim, samples);
    report.estimate_with_se("containment_probability", p, se);
    Ok(report)
}
