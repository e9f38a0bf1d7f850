use num_complex::Complex64;
use rayon::prelude::*;

use super::report::ExperimentReport;
use super::stats;
use super::traces::apply_poly;
use super::FluctError;
use crate::chebyshev::{semicircle_trace, Polynomial};
use crate::linalg::{sample_gue, CMatrix};
use crate::rng::RngState;

const CENTERING_TOL: f64 = 1e-12;

fn check_centered(polys: &[&[Polynomial]]) -> Result<(), FluctError> {
    let mut index = 0;
    for list in polys {
        for p in *list {
            let tau = semicircle_trace(p);
            if tau.abs() > CENTERING_TOL {
                return Err(FluctError::Uncentered { index, tau });
            }
            index += 1;
        }
    }
    Ok(())
}

/// The limiting covariance of the mixed-word traces
/// `Tr(p_1(X)q_1(Y)⋯p_m(X)q_m(Y))` against
/// `Tr(p̃_1(X)q̃_1(Y)⋯p̃_m̃(X)q̃_m̃(Y))`:
///
/// ```text
/// Σ_{ℓ=0}^{m−1} Π_{j=1}^{m} τ(p_j p̃_{j+ℓ})·τ(q_j q̃_{j+ℓ})     (m = m̃)
/// 0                                                            (m ≠ m̃)
/// ```
///
/// with subscripts mod `m`; all polynomials must be centered against the
/// semicircle law.
pub fn sof_limit_formula(
    ps: &[Polynomial],
    qs: &[Polynomial],
    pts: &[Polynomial],
    qts: &[Polynomial],
) -> Result<f64, FluctError> {
    assert!(!ps.is_empty() && ps.len() == qs.len(), "p and q lists must align");
    assert!(!pts.is_empty() && pts.len() == qts.len(), "p̃ and q̃ lists must align");
    check_centered(&[ps, qs, pts, qts])?;
    let m = ps.len();
    if m != pts.len() {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for shift in 0..m {
        let mut product = 1.0;
        for j in 0..m {
            let t = (j + shift) % m;
            product *= semicircle_trace(&ps[j].mul(&pts[t]));
            product *= semicircle_trace(&qs[j].mul(&qts[t]));
        }
        total += product;
    }
    Ok(total)
}

/// `Tr(p_1(X)q_1(Y)⋯)` for one draw.
fn word_trace(x: &CMatrix, y: &CMatrix, ps: &[Polynomial], qs: &[Polynomial]) -> Complex64 {
    let factors: Vec<CMatrix> = ps
        .iter()
        .zip(qs)
        .flat_map(|(p, q)| [apply_poly(p, x), apply_poly(q, y)])
        .collect();
    let mut product: Option<CMatrix> = None;
    for f in &factors[..factors.len() - 1] {
        product = Some(match product {
            None => f.clone(),
            Some(acc) => acc.matmul(f).expect("square"),
        });
    }
    match product {
        Some(acc) => acc.trace_product(factors.last().expect("nonempty")).expect("square"),
        None => factors[0].trace(),
    }
}

/// Monte Carlo check of the limiting covariance: estimates
/// `E[Tr(p…q…)·conj(Tr(p̃…q̃…))]` over independent GUE pairs and gates it
/// against the formula within 3 standard errors, together with the
/// single-matrix cross terms `E[Tr(⋯)·Tr(r(X))]` and `E[Tr(⋯)·Tr(r(Y))]`
/// (both tend to 0; `r = x² − 1`).
pub fn sof_experiment(
    ps: &[Polynomial],
    qs: &[Polynomial],
    pts: &[Polynomial],
    qts: &[Polynomial],
    n_dim: usize,
    samples: usize,
    rng: RngState,
) -> Result<ExperimentReport, FluctError> {
    assert!(n_dim >= 50, "require N ≥ 50");
    let formula = sof_limit_formula(ps, qs, pts, qts)?;

    let rows: Vec<[f64; 3]> = (0..samples as u64)
        .into_par_iter()
        .map(|idx| {
            let mut gen = rng.substream(idx).rng();
            let x = sample_gue(n_dim, &mut gen);
            let y = sample_gue(n_dim, &mut gen);
            let w = word_trace(x.matrix(), y.matrix(), ps, qs);
            let wt = word_trace(x.matrix(), y.matrix(), pts, qts);
            // r = x² − 1: Tr r(X) = Tr X² − N, no product needed.
            let r_x = x.matrix().trace_product(x.matrix()).expect("square").re - n_dim as f64;
            let r_y = y.matrix().trace_product(y.matrix()).expect("square").re - n_dim as f64;
            [(w * wt.conj()).re, w.re * r_x, w.re * r_y]
        })
        .collect();

    let mut report = ExperimentReport::new("sof", rng.seed, n_dim, samples);
    let main: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let (est, se) = stats::mean_with_se(&main);
    report.estimate_with_se("covariance", est, se);
    report.estimate("formula", formula);
    report.gate("covariance_matches_formula", est, formula - 3.0 * se, formula + 3.0 * se);

    for (k, name) in [(1usize, "cross_trace_x"), (2usize, "cross_trace_y")] {
        let col: Vec<f64> = rows.iter().map(|r| r[k]).collect();
        let (est, se) = stats::mean_with_se(&col);
        report.estimate_with_se(name, est, se);
        report.gate(format!("{name}_near_zero"), est, -3.0 * se, 3.0 * se);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::x()
    }

    #[test]
    fn formula_simplest_case_is_one() {
        // m = m̃ = 1, all polynomials x: τ(x·x)² = 1.
        let v = sof_limit_formula(&[x()], &[x()], &[x()], &[x()]).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn formula_mismatched_lengths_vanish() {
        let v = sof_limit_formula(&[x()], &[x()], &[x(), x()], &[x(), x()]).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn formula_centered_quadratic() {
        // p = q = p̃ = q̃ = x²−1: τ((x²−1)²)² = (m₄ − 2m₂ + 1)² = 1.
        let p = Polynomial::new(vec![-1.0, 0.0, 1.0]);
        let v = sof_limit_formula(&[p.clone()], &[p.clone()], &[p.clone()], &[p]).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn formula_rejects_uncentered_input() {
        let p = Polynomial::new(vec![0.0, 0.0, 1.0]); // τ(x²) = 1
        assert!(matches!(
            sof_limit_formula(&[p.clone()], &[p.clone()], &[p.clone()], &[p]),
            Err(FluctError::Uncentered { .. })
        ));
    }

    #[test]
    fn formula_invariant_under_cyclic_shift_of_tilde_lists() {
        // The ℓ-sum structure makes a simultaneous cyclic shift of (p̃, q̃)
        // invisible; checked on random centered lists of length m ≤ 3.
        use rand::Rng;
        let mut rng = crate::rng::RngState::new(62).rng();
        let mut random_centered = |rng: &mut rand_chacha::ChaCha8Rng| -> Polynomial {
            let degree = rng.gen_range(1..=3);
            let coeffs: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let p = Polynomial::new(coeffs);
            // Center: subtract τ(p)·1.
            p.sub(&Polynomial::constant(crate::chebyshev::semicircle_trace(&p)))
        };
        for m in 1..=3usize {
            let draw_list = |rng: &mut rand_chacha::ChaCha8Rng, random: &mut dyn FnMut(&mut rand_chacha::ChaCha8Rng) -> Polynomial| {
                (0..m).map(|_| random(rng)).collect::<Vec<_>>()
            };
            let ps = draw_list(&mut rng, &mut random_centered);
            let qs = draw_list(&mut rng, &mut random_centered);
            let pts = draw_list(&mut rng, &mut random_centered);
            let qts = draw_list(&mut rng, &mut random_centered);
            let base = sof_limit_formula(&ps, &qs, &pts, &qts).unwrap();
            for shift in 1..m {
                let rot = |v: &[Polynomial]| -> Vec<Polynomial> {
                    let mut out = v.to_vec();
                    out.rotate_left(shift);
                    out
                };
                let shifted = sof_limit_formula(&ps, &qs, &rot(&pts), &rot(&qts)).unwrap();
                assert!(
                    (base - shifted).abs() < 1e-10 * (1.0 + base.abs()),
                    "m={m} shift {shift}: {base} vs {shifted}"
                );
            }
        }
    }

    #[test]
    fn experiment_matches_formula_at_modest_size() {
        let report =
            sof_experiment(&[x()], &[x()], &[x()], &[x()], 60, 400, RngState::new(61)).unwrap();
        assert!(report.all_pass(), "failed: {:?}", report.failed_gates().collect::<Vec<_>>());
        let est = report.estimates["covariance"];
        assert!((est - 1.0).abs() < 0.5, "estimate {est}");
    }
}
