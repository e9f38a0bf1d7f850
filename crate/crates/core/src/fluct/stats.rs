//! Small estimator toolkit: means, variances, covariances with standard
//! errors, and the two-sample Kolmogorov–Smirnov statistic.

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample mean and its standard error.
pub fn mean_with_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    assert!(n >= 2, "need at least two samples");
    let m = mean(xs);
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1) as f64;
    (m, (var / n as f64).sqrt().max(f64::MIN_POSITIVE))
}

/// Unbiased sample variance and the standard error of that estimate
/// (Gaussian asymptotics: `var·√(2/(n−1))`).
pub fn variance_with_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    assert!(n >= 2, "need at least two samples");
    let m = mean(xs);
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1) as f64;
    (var, (var * (2.0 / (n - 1) as f64).sqrt()).max(f64::MIN_POSITIVE))
}

/// Sample covariance and the asymptotic standard error
/// `√((var_x·var_y + cov²)/(n−1))`.
pub fn covariance_with_se(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len();
    assert!(n == ys.len() && n >= 2, "need two aligned samples");
    let (mx, my) = (mean(xs), mean(ys));
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        vx += (x - mx).powi(2);
        vy += (y - my).powi(2);
    }
    let denom = (n - 1) as f64;
    cov /= denom;
    vx /= denom;
    vy /= denom;
    (cov, ((vx * vy + cov * cov) / denom).sqrt().max(f64::MIN_POSITIVE))
}

/// Two-sample Kolmogorov–Smirnov statistic `sup_x |F_a(x) − F_b(x)|`.
pub fn two_sample_ks(a: &[f64], b: &[f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty());
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    ys.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    let (mut i, mut j) = (0usize, 0usize);
    let mut best = 0.0f64;
    while i < xs.len() && j < ys.len() {
        match xs[i].partial_cmp(&ys[j]).expect("finite") {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                // Step both CDFs past the tied value before comparing.
                let v = xs[i];
                while i < xs.len() && xs[i] == v {
                    i += 1;
                }
                while j < ys.len() && ys[j] == v {
                    j += 1;
                }
            }
        }
        let fa = i as f64 / xs.len() as f64;
        let fb = j as f64 / ys.len() as f64;
        best = best.max((fa - fb).abs());
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_variance() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let (m, se) = mean_with_se(&xs);
        assert_eq!(m, 2.5);
        assert!(se > 0.0);
        let (v, _) = variance_with_se(&xs);
        assert!((v - 5.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn covariance_of_identical_samples_is_variance() {
        let xs = [1.0, 2.0, 3.0, 5.0];
        let (c, _) = covariance_with_se(&xs, &xs);
        let (v, _) = variance_with_se(&xs);
        assert!((c - v).abs() < 1e-12);
    }

    #[test]
    fn ks_identical_and_disjoint() {
        let a = [1.0, 2.0, 3.0];
        assert_eq!(two_sample_ks(&a, &a), 0.0);
        let b = [10.0, 11.0, 12.0];
        assert_eq!(two_sample_ks(&a, &b), 1.0);
    }

    #[test]
    fn se_shrinks_like_sqrt_n() {
        // Doubling the sample count shrinks the SE by √2 (exactly, for a
        // duplicated sample with the same spread).
        let xs: Vec<f64> = (0..400).map(|i| (i % 7) as f64).collect();
        let ys: Vec<f64> = (0..800).map(|i| (i % 7) as f64).collect();
        let (_, se_x) = mean_with_se(&xs);
        let (_, se_y) = mean_with_se(&ys);
        let ratio = se_x / se_y;
        assert!((ratio - 2.0f64.sqrt()).abs() < 0.1 * 2.0f64.sqrt(), "ratio {ratio}");
    }
}
