//! The worked 4×4 example: `a_1 = diag(1,4)`, `a_2 = diag(2,1)`,
//! `α = β = (2,1)`. Every realization is a unitary conjugate of the
//! one-parameter family
//!
//! ```text
//! R_t = diag(1,4) ⊗ diag(1,2) + diag(2,1) ⊗ [[1+t, √(t(1−t))], [√(t(1−t)), 2−t]]
//! ```
//!
//! which splits into two 2×2 blocks with closed-form eigenvalues
//! `15/2 ± ½√(25−16t)` and `9/2 ± ½√(9−8t)`. The middle pair swaps branches
//! at `t₁ = (3/2)√65 − 23/2 ≈ 0.593`, where `λ₂ = λ₃`.

use serde::Serialize;

use super::QhornError;
use crate::linalg::{eigenvalues, kron, CMatrix, EigenvalueSequence, HermitianMatrix};

/// The branch-crossing parameter `t₁ = (3/2)√65 − 23/2`.
pub fn branch_crossing_t() -> f64 {
    1.5 * 65.0_f64.sqrt() - 11.5
}

/// Closed-form and numerically recomputed spectrum of `R_t`, `0 ≤ t ≤ 1`.
pub fn example_k(t: f64) -> Result<(EigenvalueSequence, EigenvalueSequence), QhornError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(QhornError::Domain(format!("t = {t} outside [0, 1]")));
    }
    let analytic = EigenvalueSequence::new(closed_form(t).to_vec()).expect("branch ordering is nonincreasing");
    let numeric = eigenvalues(&r_matrix(t))?;
    Ok((analytic, numeric))
}

fn closed_form(t: f64) -> [f64; 4] {
    let outer = 0.5 * (25.0 - 16.0 * t).sqrt();
    let inner = 0.5 * (9.0 - 8.0 * t).sqrt();
    let lambda1 = 7.5 + outer;
    let lambda4 = 4.5 - inner;
    // The two middle branches cross at t₁; taking max/min reproduces the
    // per-branch formulas on both sides.
    let a = 4.5 + inner;
    let b = 7.5 - outer;
    [lambda1, a.max(b), a.min(b), lambda4]
}

fn r_matrix(t: f64) -> HermitianMatrix {
    let s = (t * (1.0 - t)).max(0.0).sqrt();
    let a1 = CMatrix::from_diag(&[1.0, 4.0]);
    let a2 = CMatrix::from_diag(&[2.0, 1.0]);
    let d = CMatrix::from_diag(&[1.0, 2.0]);
    let rot = HermitianMatrix::from_real_rows(&[vec![1.0 + t, s], vec![s, 2.0 - t]]).expect("real symmetric");
    let m = kron(&a1, &d).add(&kron(&a2, rot.matrix())).expect("4×4");
    HermitianMatrix::from_matrix_unchecked(m)
}

/// One row of the parametric curve table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Figure1Row {
    pub t: f64,
    pub lam1: f64,
    pub lam2: f64,
    pub lam3: f64,
    pub lam4: f64,
}

/// Closed-form spectrum on a uniform `grid`-point mesh of `[0, 1]`. The
/// projection onto `(λ₃, λ₄)` is the parametric curve whose upper part (the
/// `t > t₁` arc, where `λ₃ + λ₄ = 9`) is a line segment and whose lower part
/// is not.
pub fn figure1_curve(grid: usize) -> Vec<Figure1Row> {
    assert!(grid >= 2, "require grid ≥ 2");
    (0..grid)
        .map(|i| {
            let t = i as f64 / (grid - 1) as f64;
            let lam = closed_form(t);
            Figure1Row { t, lam1: lam[0], lam2: lam[1], lam3: lam[2], lam4: lam[3] }
        })
        .collect()
}
