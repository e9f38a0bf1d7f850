//! Block scaling and spectral window cutting.
//!
//! Given pairs `(a_1^i, a_2^i)` with spectra in `[K, K²]`, the block-diagonal
//! matrices `a_j = ⊕_i K^{4i} a_j^i` place the spectra of the summands
//! `K^{4i}(a_1^i ⊗ x_1 + a_2^i ⊗ x_2)` into the pairwise disjoint windows
//! `[2K^{4i}, 2K^{4i+3}]` whenever the `x_j` have spectra in `[1/K, K]`;
//! cutting by those windows recovers each block.

use super::QhornError;
use crate::linalg::{eigenvalues, EigenvalueSequence, HermitianMatrix};

const WINDOW_SLACK: f64 = 1e-12;

/// `a_j = ⊕_{i=1}^m K^{4i}·a_j^i` for `j = 1, 2`. Every input block must
/// have spectrum inside `[K, K²]` (checked), and `K > 1`.
pub fn block_scale_construction(
    pairs: &[(HermitianMatrix, HermitianMatrix)],
    k_scale: f64,
) -> Result<(HermitianMatrix, HermitianMatrix), QhornError> {
    if !(k_scale > 1.0) {
        return Err(QhornError::Domain(format!("require K > 1, got {k_scale}")));
    }
    if pairs.is_empty() {
        return Err(QhornError::Domain("at least one block pair is required".into()));
    }
    let (lo, hi) = (k_scale, k_scale * k_scale);
    for (index, (a1, a2)) in pairs.iter().enumerate() {
        for (side, block) in [(1usize, a1), (2usize, a2)] {
            let spectrum = eigenvalues(block)?;
            let max = spectrum.values().first().copied().unwrap_or(0.0);
            let min = spectrum.values().last().copied().unwrap_or(0.0);
            let slack = WINDOW_SLACK * (1.0 + max.abs());
            if min < lo - slack || max > hi + slack {
                return Err(QhornError::SpectrumOutOfWindow { index: index + 1, side, min, max, lo, hi });
            }
        }
    }
    let scaled = |pick: fn(&(HermitianMatrix, HermitianMatrix)) -> &HermitianMatrix| {
        let blocks: Vec<HermitianMatrix> = pairs
            .iter()
            .enumerate()
            .map(|(i, pair)| pick(pair).scale(k_scale.powi(4 * (i as i32 + 1))))
            .collect();
        HermitianMatrix::direct_sum(&blocks)
    };
    Ok((scaled(|p| &p.0), scaled(|p| &p.1)))
}

/// Nonincreasing list of the eigenvalues of `H` inside the closed window
/// `[lo, hi]`; boundary hits are resolved with `1e-12` relative slack. An
/// empty result is allowed.
pub fn spectral_window_cut(h: &HermitianMatrix, lo: f64, hi: f64) -> Result<EigenvalueSequence, QhornError> {
    if !(lo < hi) {
        return Err(QhornError::Domain(format!("require lo < hi, got [{lo}, {hi}]")));
    }
    let spectrum = eigenvalues(h)?;
    let scale = 1.0 + spectrum.max_abs();
    let slack = WINDOW_SLACK * scale;
    let kept: Vec<f64> = spectrum
        .values()
        .iter()
        .copied()
        .filter(|&l| l >= lo - slack && l <= hi + slack)
        .collect();
    Ok(EigenvalueSequence::new(kept).expect("filtered subsequence stays sorted"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_unitary, kron_hermitian};
    use crate::rng::RngState;

    fn random_with_spectrum(values: &[f64], seed: u64) -> HermitianMatrix {
        let mut rng = RngState::new(seed).rng();
        let u = haar_unitary(values.len(), &mut rng);
        HermitianMatrix::from_diag(values).conjugate_by(&u).unwrap()
    }

    #[test]
    fn single_block_is_scaled_by_k4() {
        let a = HermitianMatrix::from_diag(&[2.0, 3.0]);
        let (b1, _) = block_scale_construction(&[(a.clone(), a.clone())], 2.0).unwrap();
        assert_eq!(b1.dim(), 2);
        assert_eq!(b1.matrix()[(0, 0)].re, 32.0);
        assert_eq!(b1.matrix()[(1, 1)].re, 48.0);
    }

    #[test]
    fn two_blocks_use_scales_16_and_256() {
        let a = HermitianMatrix::from_diag(&[2.0]);
        let (b1, b2) = block_scale_construction(&[(a.clone(), a.clone()), (a.clone(), a.clone())], 2.0).unwrap();
        assert_eq!(b1.dim(), 2);
        assert_eq!(b1.matrix()[(0, 0)].re, 32.0);
        assert_eq!(b1.matrix()[(1, 1)].re, 512.0);
        assert_eq!(b2.matrix()[(0, 0)].re, 32.0);
    }

    #[test]
    fn spectrum_precondition_is_checked() {
        let good = HermitianMatrix::from_diag(&[2.0, 4.0]);
        let bad = HermitianMatrix::from_diag(&[0.5, 2.0]);
        assert!(matches!(
            block_scale_construction(&[(good, bad)], 2.0),
            Err(QhornError::SpectrumOutOfWindow { index: 1, side: 2, .. })
        ));
    }

    #[test]
    fn cut_extracts_middle_eigenvalue() {
        let h = HermitianMatrix::from_diag(&[1.0, 5.0, 9.0]);
        let cut = spectral_window_cut(&h, 4.0, 6.0).unwrap();
        assert_eq!(cut.values(), &[5.0]);
    }

    #[test]
    fn full_range_window_keeps_everything() {
        let h = HermitianMatrix::from_diag(&[1.0, 5.0, 9.0]);
        let cut = spectral_window_cut(&h, 0.0, 100.0).unwrap();
        assert_eq!(cut.values(), &[9.0, 5.0, 1.0]);
    }

    #[test]
    fn empty_window_is_allowed() {
        let h = HermitianMatrix::from_diag(&[1.0, 9.0]);
        assert!(spectral_window_cut(&h, 3.0, 4.0).unwrap().is_empty());
    }

    #[test]
    fn composite_windows_are_disjoint_and_cut_recovers_blocks() {
        // K = 2, blocks with spectra in [K, K²], x_j with spectra in [1/K, K].
        let k_scale = 2.0;
        let pairs = vec![
            (random_with_spectrum(&[2.2, 3.7], 31), random_with_spectrum(&[2.0, 4.0], 32)),
            (random_with_spectrum(&[3.0, 2.5], 33), random_with_spectrum(&[3.9, 2.1], 34)),
        ];
        let x1 = random_with_spectrum(&[0.6, 1.8], 35);
        let x2 = random_with_spectrum(&[0.9, 1.4], 36);
        let (a1, a2) = block_scale_construction(&pairs, k_scale).unwrap();
        let composite = kron_hermitian(&a1, &x1).add(&kron_hermitian(&a2, &x2)).unwrap();

        let mut recovered = 0;
        for (i, (b1, b2)) in pairs.iter().enumerate() {
            let scale = k_scale.powi(4 * (i as i32 + 1));
            let lo = 2.0 * scale;
            let hi = 2.0 * scale * k_scale.powi(3);
            let cut = spectral_window_cut(&composite, lo, hi).unwrap();
            let block = kron_hermitian(b1, &x1).add(&kron_hermitian(b2, &x2)).unwrap().scale(scale);
            let expect = eigenvalues(&block).unwrap();
            assert_eq!(cut.len(), expect.len(), "window {i} size");
            for (c, e) in cut.values().iter().zip(expect.values()) {
                assert!((c - e).abs() < 1e-9 * scale, "window {i}: {c} vs {e}");
            }
            recovered += cut.len();
        }
        assert_eq!(recovered, composite.dim());
    }
}
