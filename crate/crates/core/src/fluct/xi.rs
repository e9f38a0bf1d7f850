use num_complex::Complex64;
use rayon::prelude::*;

use super::report::ExperimentReport;
use super::stats;
use super::FluctError;
use crate::chebyshev::{alpha_coeff, cheb, ChebKind, Polynomial};
use crate::linalg::{sample_gue, CMatrix};
use crate::ncwords::{xi_basis, CyclicClass, WordShape, XiLabel};
use crate::rng::RngState;

const VARIANCE_FLOOR: f64 = 0.05;

/// Centering constant: `α_a` for the single-letter elements, 0 for the
/// block products.
fn beta(label: &XiLabel) -> f64 {
    match label {
        XiLabel::Unit => 1.0,
        XiLabel::ChebT { degree, .. } => alpha_coeff(*degree).expect("degree ≥ 1"),
        XiLabel::UProduct { .. } => 0.0,
    }
}

/// `Σ c_j·M^j` from precomputed powers (`powers[0] = I`).
fn poly_of_powers(p: &Polynomial, powers: &[CMatrix]) -> CMatrix {
    let n = powers[0].dim();
    let mut acc = CMatrix::zeros(n);
    for (j, &c) in p.coeffs().iter().enumerate() {
        if c != 0.0 {
            acc = acc.add(&powers[j].scale(Complex64::new(c, 0.0))).expect("square");
        }
    }
    acc
}

/// Trace of a product of factor matrices without forming the full product.
fn product_trace(factors: &[CMatrix]) -> f64 {
    match factors.len() {
        0 => unreachable!("block products have at least two factors"),
        1 => factors[0].trace().re,
        2 => factors[0].trace_product(&factors[1]).expect("square").re,
        _ => {
            let mid = factors.len() / 2;
            let fold = |fs: &[CMatrix]| -> CMatrix {
                let mut acc = fs[0].clone();
                for f in &fs[1..] {
                    acc = acc.matmul(f).expect("square");
                }
                acc
            };
            fold(&factors[..mid]).trace_product(&fold(&factors[mid..])).expect("square").re
        }
    }
}

/// Estimate the mean and variance of every centered family statistic
/// `Tr ∘ ev_{A_N,B_N}(y) − N·β(y)` for elements `y` of degree `≤ max_degree`,
/// over independent shifted-GUE pairs on `[u, v]`.
///
/// Since the shifted draw composed with the `[u,v] → [−2,2]` affine map is
/// the underlying GUE itself, `T̃_a(A_N) = T_a(X_N)` and `Ũ_a(A_N) = U_a(X_N)`
/// exactly; the statistics are computed on the base-interval polynomials.
///
/// Gates: every `|mean| ≤ 3·SE`, every variance `≥ 0.05`, every pairwise
/// covariance within `3·SE` of 0.
pub fn xi_fluctuations(
    u: f64,
    v: f64,
    max_degree: usize,
    n_dim: usize,
    samples: usize,
    rng: RngState,
) -> Result<ExperimentReport, FluctError> {
    if !(u < v) {
        return Err(FluctError::Domain(format!("require u < v, got [{u}, {v}]")));
    }
    assert!((1..=4).contains(&max_degree), "require 1 ≤ max_degree ≤ 4");
    assert!(samples >= 100, "require samples ≥ 100");

    let labels: Vec<XiLabel> = xi_basis(2, max_degree, u, v)?
        .into_iter()
        .map(|e| e.label)
        .filter(|l| *l != XiLabel::Unit)
        .collect();
    let betas: Vec<f64> = labels.iter().map(beta).collect();
    let first_kind: Vec<Polynomial> = (0..=max_degree).map(|a| cheb(ChebKind::First, a)).collect();
    let second_kind: Vec<Polynomial> = (0..=max_degree).map(|a| cheb(ChebKind::Second, a)).collect();

    let rows: Vec<Vec<f64>> = (0..samples as u64)
        .into_par_iter()
        .map(|idx| {
            let mut gen = rng.substream(idx).rng();
            let x = sample_gue(n_dim, &mut gen);
            let y = sample_gue(n_dim, &mut gen);
            let x_pows = matrix_powers(x.matrix(), max_degree.saturating_sub(1).max(1));
            let y_pows = matrix_powers(y.matrix(), max_degree.saturating_sub(1).max(1));
            let x_traces = power_trace_list(&x_pows, max_degree);
            let y_traces = power_trace_list(&y_pows, max_degree);

            labels
                .iter()
                .zip(&betas)
                .map(|(label, &b)| {
                    let raw = match label {
                        XiLabel::Unit => unreachable!("unit filtered out"),
                        XiLabel::ChebT { letter, degree } => {
                            let traces = if *letter == 1 { &x_traces } else { &y_traces };
                            first_kind[*degree].coeffs().iter().enumerate().map(|(j, &c)| c * traces[j]).sum::<f64>()
                        }
                        XiLabel::UProduct { representative } => {
                            let shape = CyclicClass::of(representative).shape().expect("nonempty");
                            let WordShape::Blocks(sform) = shape else { unreachable!("products index non-singleton orbits") };
                            let factors: Vec<CMatrix> = sform
                                .blocks()
                                .iter()
                                .map(|&(letter, exponent)| {
                                    let pows = if letter == 1 { &x_pows } else { &y_pows };
                                    poly_of_powers(&second_kind[exponent], pows)
                                })
                                .collect();
                            product_trace(&factors)
                        }
                    };
                    raw - n_dim as f64 * b
                })
                .collect()
        })
        .collect();

    let mut report = ExperimentReport::new("xi_fluctuations", rng.seed, n_dim, samples);
    let columns: Vec<Vec<f64>> = (0..labels.len()).map(|i| rows.iter().map(|r| r[i]).collect()).collect();
    for (label, col) in labels.iter().zip(&columns) {
        let (m, m_se) = stats::mean_with_se(col);
        let (var, var_se) = stats::variance_with_se(col);
        report.estimate_with_se(format!("mean[{label}]"), m, m_se);
        report.estimate_with_se(format!("var[{label}]"), var, var_se);
        report.gate(format!("mean[{label}]_near_zero"), m, -3.0 * m_se, 3.0 * m_se);
        report.gate(format!("var[{label}]_nontrivial"), var, VARIANCE_FLOOR, f64::MAX);
    }
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let (cov, cov_se) = stats::covariance_with_se(&columns[i], &columns[j]);
            report.estimate_with_se(format!("cov[{}|{}]", labels[i], labels[j]), cov, cov_se);
            report.gate(format!("cov[{}|{}]_near_zero", labels[i], labels[j]), cov, -3.0 * cov_se, 3.0 * cov_se);
        }
    }
    Ok(report)
}

/// `[I, M, M², …, M^max]`.
fn matrix_powers(m: &CMatrix, max: usize) -> Vec<CMatrix> {
    let mut out = vec![CMatrix::identity(m.dim()), m.clone()];
    for _ in 2..=max {
        let next = out.last().expect("nonempty").matmul(m).expect("square");
        out.push(next);
    }
    out.truncate(max + 1);
    out
}

/// `Tr M^j` for `j = 0..=max`, reusing stored powers (`max ≤ 2·(len−1)`).
fn power_trace_list(powers: &[CMatrix], max: usize) -> Vec<f64> {
    let top = powers.len() - 1;
    (0..=max)
        .map(|j| {
            if j <= top {
                powers[j].trace().re
            } else {
                assert!(j <= 2 * top, "requested power {j} beyond stored range");
                powers[j - top].trace_product(&powers[top]).expect("square").re
            }
        })
        .collect()
}
