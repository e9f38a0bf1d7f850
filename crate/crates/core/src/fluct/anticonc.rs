use super::FluctError;

/// The elementary anti-concentration bound: for a nonnegative variable with
/// first and second moments `m₁ > 0`, `m₂ ≥ m₁²`, and any
/// `0 ≤ δ < min(m₂/(2m₁), m₁)`,
///
/// ```text
/// Prob(y ≤ δ) ≤ w = (−m₂ + 2δm₁ + √(m₂² − 4δm₂(m₁−δ)))/(2δ²)    (δ > 0)
///                w = 1 − m₁²/m₂                                   (δ = 0)
/// ```
///
/// and `w ∈ [0, 1)`, continuous in all three arguments.
pub fn anticoncentration_w(m1: f64, m2: f64, delta: f64) -> Result<f64, FluctError> {
    if !(m1 > 0.0) {
        return Err(FluctError::Domain(format!("require m1 > 0, got {m1}")));
    }
    if m2 < m1 * m1 {
        return Err(FluctError::Domain(format!("require m2 ≥ m1² (Cauchy–Schwarz), got m2 = {m2} < {}", m1 * m1)));
    }
    let delta_max = (m2 / (2.0 * m1)).min(m1);
    if !(0.0..delta_max).contains(&delta) {
        return Err(FluctError::Domain(format!("require 0 ≤ δ < min(m2/(2m1), m1) = {delta_max}, got {delta}")));
    }
    if delta == 0.0 {
        return Ok(1.0 - m1 * m1 / m2);
    }
    // Larger root of δ²x² + (m₂−2δm₁)x + (m₁²−m₂), written in the
    // rationalized form −2c/(b + √(b²−4ac)) so small δ does not cancel.
    let b = m2 - 2.0 * delta * m1;
    let disc = (m2 * m2 - 4.0 * delta * m2 * (m1 - delta)).max(0.0);
    Ok(2.0 * (m2 - m1 * m1) / (b + disc.sqrt()))
}
