use serde::{Deserialize, Serialize};

use super::HornError;
use crate::linalg::EigenvalueSequence;

/// Right-continuous nonincreasing step function on `[0, 1)`.
///
/// Piece `i` takes `values[i]` on `[breakpoints[i], breakpoints[i+1])` (the
/// last piece extends to 1). Canonical form merges adjacent pieces with equal
/// values, so two functions are equal as functions iff they are equal as
/// values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl EigenvalueFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self, HornError> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(HornError::InvalidStepFunction {
                reason: format!("{} breakpoints vs {} values", breakpoints.len(), values.len()),
            });
        }
        if breakpoints[0] != 0.0 {
            return Err(HornError::InvalidStepFunction { reason: "first breakpoint must be 0".into() });
        }
        for w in breakpoints.windows(2) {
            if !(w[0] < w[1]) {
                return Err(HornError::InvalidStepFunction { reason: "breakpoints must be strictly increasing".into() });
            }
        }
        if breakpoints.last().is_some_and(|&t| t >= 1.0) {
            return Err(HornError::InvalidStepFunction { reason: "breakpoints must lie in [0, 1)".into() });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(HornError::InvalidStepFunction { reason: "values must be finite".into() });
        }
        for w in values.windows(2) {
            if w[1] > w[0] {
                return Err(HornError::InvalidStepFunction { reason: "values must be nonincreasing".into() });
            }
        }
        let mut merged_b = Vec::with_capacity(breakpoints.len());
        let mut merged_v: Vec<f64> = Vec::with_capacity(values.len());
        for (b, v) in breakpoints.into_iter().zip(values) {
            if merged_v.last() == Some(&v) {
                continue;
            }
            merged_b.push(b);
            merged_v.push(v);
        }
        Ok(Self { breakpoints: merged_b, values: merged_v })
    }

    pub fn constant(c: f64) -> Self {
        Self { breakpoints: vec![0.0], values: vec![c] }
    }

    /// The step function of a sequence: `λ(t) = α_j` on `[(j−1)/N, j/N)`.
    pub fn from_sequence(s: &EigenvalueSequence) -> Self {
        let n = s.len();
        assert!(n >= 1, "empty sequence has no eigenvalue function");
        let breakpoints = (0..n).map(|j| j as f64 / n as f64).collect();
        Self::new(breakpoints, s.values().to_vec()).expect("sequence invariants carry over")
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_at(&self, t: f64) -> f64 {
        assert!((0.0..1.0).contains(&t), "step functions live on [0, 1), got {t}");
        let idx = match self.breakpoints.binary_search_by(|b| b.partial_cmp(&t).expect("finite")) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        self.values[idx]
    }

    /// `∫_0^1`.
    pub fn integral(&self) -> f64 {
        self.integral_over(0.0, 1.0)
    }

    /// Exact piecewise `∫_lo^hi` for `0 ≤ lo ≤ hi ≤ 1`.
    pub fn integral_over(&self, lo: f64, hi: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&lo) && lo <= hi && hi <= 1.0);
        let mut acc = 0.0;
        for (i, &v) in self.values.iter().enumerate() {
            let piece_lo = self.breakpoints[i];
            let piece_hi = self.breakpoints.get(i + 1).copied().unwrap_or(1.0);
            let a = piece_lo.max(lo);
            let b = piece_hi.min(hi);
            if b > a {
                acc += v * (b - a);
            }
        }
        acc
    }

    /// `∫ over σ_F^N = ∪_{i∈F} [(i−1)/N, i/N)`.
    pub fn sigma_integral(&self, f_set: &[usize], n: usize) -> Result<f64, HornError> {
        let mut acc = 0.0;
        for &i in f_set {
            if i < 1 || i > n {
                return Err(HornError::IndexOutOfRange { index: i, n });
            }
            acc += self.integral_over((i - 1) as f64 / n as f64, i as f64 / n as f64);
        }
        Ok(acc)
    }

    /// Average over the `n` intervals of length `1/n`; the coarsened sequence
    /// of the paper's approximation argument.
    pub fn coarsen(&self, n: usize) -> EigenvalueSequence {
        assert!(n >= 1, "require n ≥ 1");
        let mut values: Vec<f64> = (1..=n)
            .map(|i| n as f64 * self.integral_over((i - 1) as f64 / n as f64, i as f64 / n as f64))
            .collect();
        // Averages of a nonincreasing function are nonincreasing; flatten the
        // rounding dust so the sequence invariant holds exactly.
        for i in 1..values.len() {
            if values[i] > values[i - 1] {
                debug_assert!(values[i] - values[i - 1] < 1e-10);
                values[i] = values[i - 1];
            }
        }
        EigenvalueSequence::new(values).expect("flattened above")
    }
}

impl<'de> Deserialize<'de> for EigenvalueFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            breakpoints: Vec<f64>,
            values: Vec<f64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(serde::de::Error::custom("breakpoints must be finite"));
        }
        EigenvalueFunction::new(raw.breakpoints, raw.values).map_err(serde::de::Error::custom)
    }
}
