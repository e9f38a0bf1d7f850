//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation zeroes one off-diagonal entry with a phase-aware Givens
//! rotation; sweeps repeat until the off-diagonal Frobenius mass drops below
//! `1e-12·‖A‖_F`. Degenerate eigenvalues need no special casing; the returned
//! order breaks ties by descending value, then lexicographically on the
//! eigenvector entries.

use num_complex::Complex64;

use super::matrix::{CMatrix, EigenvalueSequence, HermitianMatrix, UnitaryMatrix};
use super::LinalgError;

const OFF_DIAG_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 60;

/// Eigendecomposition `A = Q Λ Q*` with `Λ` nonincreasing and `Q` unitary.
pub fn eig_hermitian(a: &HermitianMatrix) -> Result<(EigenvalueSequence, UnitaryMatrix), LinalgError> {
    let (values, q) = jacobi(a.matrix().clone(), true)?;
    let q = q.expect("vectors requested");
    Ok((EigenvalueSequence::new(values).expect("sorted by construction"), UnitaryMatrix::from_matrix_unchecked(q)))
}

/// Eigenvalues only; skips accumulating the eigenvector matrix.
pub fn eigenvalues(a: &HermitianMatrix) -> Result<EigenvalueSequence, LinalgError> {
    let (values, _) = jacobi(a.matrix().clone(), false)?;
    Ok(EigenvalueSequence::new(values).expect("sorted by construction"))
}

fn jacobi(mut a: CMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<CMatrix>), LinalgError> {
    let n = a.dim();
    let fro = a.fro_norm();
    let target = OFF_DIAG_TOL * fro;
    let mut q = want_vectors.then(|| CMatrix::identity(n));

    if n == 1 {
        return Ok((vec![a[(0, 0)].re], q));
    }

    // Entries already far below the convergence target cannot change the
    // outcome of a sweep; skipping them keeps late sweeps cheap.
    let skip = if n > 1 { 0.1 * target / n as f64 } else { 0.0 };

    let mut sweeps = 0;
    loop {
        let off = off_diag_mass(&a);
        if off <= target {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            return Err(LinalgError::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for qi in p + 1..n {
                rotate(&mut a, q.as_mut(), p, qi, skip);
            }
        }
    }

    // Force exact Hermitian diagonal before sorting.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| {
        diag[j]
            .partial_cmp(&diag[i])
            .expect("finite eigenvalues")
            .then_with(|| match &q {
                Some(qm) => column_lex_cmp(qm, i, j),
                None => i.cmp(&j),
            })
    });

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let qsorted = q.map(|qmat| {
        let mut out = CMatrix::zeros(n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for r in 0..n {
                out[(r, new_col)] = qmat[(r, old_col)];
            }
        }
        out
    });
    Ok((values, qsorted))
}

fn off_diag_mass(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            acc += 2.0 * a[(i, j)].norm_sqr();
        }
    }
    acc.sqrt()
}

/// Zero `a[(p,q)]` by the phase-corrected Jacobi rotation `G* A G`.
fn rotate(a: &mut CMatrix, q: Option<&mut CMatrix>, p: usize, qi: usize, skip: f64) {
    let apq = a[(p, qi)];
    let b = apq.norm();
    if b <= skip {
        return;
    }
    let n = a.dim();
    let phase = apq / b;
    let alpha = a[(p, p)].re;
    let gamma = a[(qi, qi)].re;
    let tau = (alpha - gamma) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let s_phase = phase.scale(s);
    let s_phase_conj = s_phase.conj();

    // Rows p and q: G* acting on the left.
    for col in 0..n {
        let ap = a[(p, col)];
        let aq = a[(qi, col)];
        a[(p, col)] = ap.scale(c) + s_phase * aq;
        a[(qi, col)] = aq.scale(c) - s_phase_conj * ap;
    }
    // Columns p and q: G acting on the right.
    for row in 0..n {
        let ap = a[(row, p)];
        let aq = a[(row, qi)];
        a[(row, p)] = ap.scale(c) + s_phase_conj * aq;
        a[(row, qi)] = aq.scale(c) - s_phase * ap;
    }
    // Clean the pivot pair exactly.
    let new_alpha = alpha * c * c + 2.0 * b * c * s + gamma * s * s;
    let new_gamma = alpha * s * s - 2.0 * b * c * s + gamma * c * c;
    a[(p, p)] = Complex64::new(new_alpha, 0.0);
    a[(qi, qi)] = Complex64::new(new_gamma, 0.0);
    a[(p, qi)] = Complex64::new(0.0, 0.0);
    a[(qi, p)] = Complex64::new(0.0, 0.0);

    if let Some(qm) = q {
        for row in 0..n {
            let qp = qm[(row, p)];
            let qq = qm[(row, qi)];
            qm[(row, p)] = qp.scale(c) + s_phase_conj * qq;
            qm[(row, qi)] = qq.scale(c) - s_phase * qp;
        }
    }
}

fn column_lex_cmp(q: &CMatrix, i: usize, j: usize) -> std::cmp::Ordering {
    for r in 0..q.dim() {
        let (a, b) = (q[(r, i)], q[(r, j)]);
        match a.re.partial_cmp(&b.re).expect("finite") {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
        match a.im.partial_cmp(&b.im).expect("finite") {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}
