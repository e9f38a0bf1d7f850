//! Random matrix ensembles: GUE, Haar unitaries, shifted GUE.
//!
//! The GUE normalization is fixed once for the whole crate: `X = Z + Z*` with
//! the entries of `Z` complex Gaussian of variance `1/2N`. Equivalently the
//! off-diagonal entries of `X` are complex Gaussian of variance `1/N`, the
//! diagonal real Gaussian of variance `1/N`, so `E[tr X²] = 1` and the
//! spectrum converges to the semicircle on `[−2, 2]`.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{CMatrix, HermitianMatrix, UnitaryMatrix};
use super::LinalgError;

/// One GUE draw of dimension `n`.
pub fn sample_gue<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    let mut m = CMatrix::zeros(n);
    let diag_sd = (1.0 / n as f64).sqrt();
    let off_sd = (0.5 / n as f64).sqrt();
    for i in 0..n {
        let x: f64 = rng.sample(StandardNormal);
        m[(i, i)] = Complex64::new(diag_sd * x, 0.0);
        for j in i + 1..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = Complex64::new(off_sd * re, off_sd * im);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix::from_matrix_unchecked(m)
}

/// GUE shifted and scaled so the limiting spectrum is `[u, v]`:
/// `((u+v)/2)·I + ((v−u)/4)·X`.
pub fn shifted_gue<R: Rng + ?Sized>(n: usize, u: f64, v: f64, rng: &mut R) -> Result<HermitianMatrix, LinalgError> {
    if !(u < v) {
        return Err(LinalgError::InvalidInterval { lo: u, hi: v });
    }
    let x = sample_gue(n, rng);
    let scaled = x.scale((v - u) / 4.0);
    Ok(HermitianMatrix::from_matrix_unchecked(
        scaled.matrix().add_scalar_diag(Complex64::new((u + v) / 2.0, 0.0)),
    ))
}

/// Haar-distributed unitary via Gram–Schmidt orthonormalization of a Ginibre
/// matrix. The normalization step divides by the (real, positive) residual
/// norm, which is exactly the phase fixing that makes `A = QR` unique with
/// `R_jj > 0`; without it the resulting law would not be Haar.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UnitaryMatrix {
    // Columns of a Ginibre matrix.
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re, im)
                })
                .collect()
        })
        .collect();

    for j in 0..n {
        // Two orthogonalization passes keep ‖U*U − I‖ near machine precision.
        for _pass in 0..2 {
            for i in 0..j {
                let proj: Complex64 = cols[i].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                for r in 0..n {
                    let correction = proj * cols[i][r];
                    cols[j][r] -= correction;
                }
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cols[j] {
            *z /= norm;
        }
    }

    let mut m = CMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    UnitaryMatrix::from_matrix_unchecked(m)
}
