//! Seeded oracles for the Monte Carlo experiments: edge containment on an
//! N-grid, estimator scaling, the empirical anti-concentration bound, and
//! the family fluctuation gates at working size.

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use eigensum::chebyshev::Polynomial;
use eigensum::fluct::{
    anticoncentration_w, clt_johansson, edge_containment, sof_experiment, xi_fluctuations,
};
use eigensum::RngState;

#[test]
fn edge_containment_grows_with_n_and_saturates() {
    // Bai–Yin edge convergence: at N = 200, margin 0.5, the spectrum stays
    // inside [u − margin, v + margin] essentially always; the probability is
    // nondecreasing in N within twice its standard error.
    let (u, v) = (-2.0, 2.0);
    let margin = 0.5;
    let mut results = Vec::new();
    for (n, samples) in [(50usize, 200usize), (100, 200), (200, 500)] {
        let report = edge_containment(n, u, v, margin, samples, RngState::new(211)).unwrap();
        let p = report.estimates["containment_probability"];
        let se = report.stderr["containment_probability"];
        results.push((n, p, se));
    }
    for pair in results.windows(2) {
        let (n0, p0, se0) = pair[0];
        let (n1, p1, se1) = pair[1];
        assert!(
            p1 >= p0 - 2.0 * (se0 + se1),
            "containment dropped from {p0} (N={n0}) to {p1} (N={n1})"
        );
    }
    let (_, p_final, _) = results[2];
    assert!(p_final >= 0.98, "N=200 containment {p_final}");
}

#[test]
fn shifted_support_stays_near_its_interval() {
    // A [0,4]-supported draw at N = 200 keeps its whole spectrum inside
    // [−1, 5] essentially always. This discriminates the support convention:
    // with spectra spread over [−2, 6] the rate would drop near 0.85.
    let report = edge_containment(200, 0.0, 4.0, 1.0, 100, RngState::new(216)).unwrap();
    let p = report.estimates["containment_probability"];
    assert!(p >= 0.99, "containment fraction {p}");
}

#[test]
fn clt_standard_error_scales_like_sqrt_samples() {
    let a = clt_johansson(50, 1, 400, RngState::new(212));
    let b = clt_johansson(50, 1, 800, RngState::new(212));
    let ratio = a.stderr["mean_T1"] / b.stderr["mean_T1"];
    let target = 2.0f64.sqrt();
    assert!((ratio - target).abs() <= 0.1 * target, "SE ratio {ratio}");
}

#[test]
fn empirical_anticoncentration_bound_holds() {
    // For uniform, |Gaussian| and Exp(1) samples: P(y ≤ δ) ≤ w(m̂₁, m̂₂, δ) + 2·SE
    // on a 10-point δ-grid inside the valid range.
    let samples = 10_000usize;
    let mut rng = RngState::new(213).rng();
    let draws: Vec<(&str, Vec<f64>)> = vec![
        ("uniform", (0..samples).map(|_| rng.gen::<f64>()).collect()),
        ("abs_gaussian", (0..samples).map(|_| rng.sample::<f64, _>(StandardNormal).abs()).collect()),
        ("exp1", (0..samples).map(|_| rng.sample::<f64, _>(Exp1)).collect()),
    ];
    for (name, ys) in draws {
        let m1 = ys.iter().sum::<f64>() / samples as f64;
        let m2 = ys.iter().map(|y| y * y).sum::<f64>() / samples as f64;
        let delta_max = (m2 / (2.0 * m1)).min(m1);
        for i in 0..10 {
            let delta = delta_max * i as f64 / 10.0;
            let w = anticoncentration_w(m1, m2, delta).unwrap();
            let p = ys.iter().filter(|&&y| y <= delta).count() as f64 / samples as f64;
            let se = (p * (1.0 - p) / samples as f64).sqrt().max(0.5 / samples as f64);
            assert!(p <= w + 2.0 * se, "{name}: P(y ≤ {delta}) = {p} exceeds w = {w}");
        }
    }
}

#[test]
fn xi_gates_pass_at_working_size() {
    let report = xi_fluctuations(0.0, 4.0, 3, 100, 300, RngState::new(214)).unwrap();
    assert!(report.all_pass(), "failed: {:?}", report.failed_gates().collect::<Vec<_>>());
    // Singleton statistics have variance near their degree.
    let v1 = report.estimates["var[T~1(x1)]"];
    assert!((v1 - 1.0).abs() < 0.4, "var T~1 = {v1}");
}

#[test]
fn sof_cross_length_covariance_vanishes() {
    let x = Polynomial::x();
    let report = sof_experiment(
        &[x.clone()],
        &[x.clone()],
        &[x.clone(), x.clone()],
        &[x.clone(), x.clone()],
        100,
        500,
        RngState::new(215),
    )
    .unwrap();
    assert_eq!(report.estimates["formula"], 0.0);
    assert!(report.all_pass(), "failed: {:?}", report.failed_gates().collect::<Vec<_>>());
}
