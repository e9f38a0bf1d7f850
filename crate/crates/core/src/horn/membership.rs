use serde::Serialize;

use super::eigfun::EigenvalueFunction;
use super::triples::{horn_triples, HornTriple};
use super::HornError;
use crate::linalg::EigenvalueSequence;

/// Scale-aware default tolerance for membership checks.
pub fn default_tolerance(sequences: &[&EigenvalueSequence]) -> f64 {
    let scale = sequences.iter().map(|s| s.max_abs()).fold(0.0, f64::max);
    1e-9 * (1.0 + scale)
}

/// Verdict of a Horn body membership check, carrying the violated constraint
/// on failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HornMembership {
    Member,
    TraceViolation { sum_alpha: f64, sum_beta: f64, sum_gamma: f64 },
    InequalityViolation { triple: HornTriple, lhs: f64, rhs: f64 },
}

impl HornMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, HornMembership::Member)
    }
}

/// Does `gamma` lie in the Horn body of `alpha` and `beta`? True iff the
/// trace equality holds within `tol` and every triple inequality
/// `Σ_{i∈I}α_i + Σ_{j∈J}β_j ≥ Σ_{k∈K}γ_k − tol` is satisfied.
pub fn horn_membership(
    alpha: &EigenvalueSequence,
    beta: &EigenvalueSequence,
    gamma: &EigenvalueSequence,
    tol: f64,
) -> Result<HornMembership, HornError> {
    let n = alpha.len();
    for other in [beta.len(), gamma.len()] {
        if other != n {
            return Err(HornError::LengthMismatch { left: n, right: other });
        }
    }
    let (sa, sb, sg) = (alpha.sum(), beta.sum(), gamma.sum());
    if (sg - sa - sb).abs() > tol {
        return Ok(HornMembership::TraceViolation { sum_alpha: sa, sum_beta: sb, sum_gamma: sg });
    }
    for triple in &horn_triples(n).triples {
        let lhs: f64 = index_sum(alpha, &triple.i) + index_sum(beta, &triple.j);
        let rhs: f64 = index_sum(gamma, &triple.k);
        if lhs < rhs - tol {
            return Ok(HornMembership::InequalityViolation { triple: triple.clone(), lhs, rhs });
        }
    }
    Ok(HornMembership::Member)
}

fn index_sum(s: &EigenvalueSequence, set: &[usize]) -> f64 {
    set.iter().map(|&i| s.values()[i - 1]).sum()
}

/// Outcome of the truncated eigenvalue-function membership check: the
/// conditions are necessary for membership and are verified for every
/// `N ≤ checked_n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FuvOutcome {
    Member { checked_n_max: usize },
    TraceViolation { int_u: f64, int_v: f64, int_w: f64 },
    InequalityViolation { n: usize, triple: HornTriple, lhs: f64, rhs: f64 },
}

impl FuvOutcome {
    pub fn is_member(&self) -> bool {
        matches!(self, FuvOutcome::Member { .. })
    }
}

/// Check the trace equality `∫u + ∫v = ∫w` and, for every `N ≤ n_max` and
/// every triple of the Horn system for `N`, the integral inequality over the
/// sets `σ^N`. The full system of necessary conditions is infinite; this is
/// its truncation at `n_max`.
pub fn fuv_membership(
    u: &EigenvalueFunction,
    v: &EigenvalueFunction,
    w: &EigenvalueFunction,
    n_max: usize,
    tol: f64,
) -> FuvOutcome {
    assert!(n_max >= 2, "require N_max ≥ 2");
    let (iu, iv, iw) = (u.integral(), v.integral(), w.integral());
    if (iw - iu - iv).abs() > tol {
        return FuvOutcome::TraceViolation { int_u: iu, int_v: iv, int_w: iw };
    }
    for n in 2..=n_max {
        for triple in &horn_triples(n).triples {
            let lhs = u.sigma_integral(&triple.i, n).expect("triple indices valid")
                + v.sigma_integral(&triple.j, n).expect("triple indices valid");
            let rhs = w.sigma_integral(&triple.k, n).expect("triple indices valid");
            if lhs < rhs - tol {
                return FuvOutcome::InequalityViolation { n, triple: triple.clone(), lhs, rhs };
            }
        }
    }
    FuvOutcome::Member { checked_n_max: n_max }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(values: &[f64]) -> EigenvalueSequence {
        EigenvalueSequence::new(values.to_vec()).unwrap()
    }

    #[test]
    fn off_aligned_diagonal_sum_is_member() {
        let m = horn_membership(&seq(&[1.0, 0.0]), &seq(&[1.0, 0.0]), &seq(&[1.0, 1.0]), 1e-9).unwrap();
        assert!(m.is_member());
    }

    #[test]
    fn aligned_diagonal_sum_is_member() {
        let m = horn_membership(&seq(&[1.0, 0.0]), &seq(&[1.0, 0.0]), &seq(&[2.0, 0.0]), 1e-9).unwrap();
        assert!(m.is_member());
    }

    #[test]
    fn trace_mismatch_gives_certificate() {
        let m = horn_membership(&seq(&[1.0, 0.0]), &seq(&[1.0, 0.0]), &seq(&[2.0, 0.1]), 1e-9).unwrap();
        assert_eq!(
            m,
            HornMembership::TraceViolation { sum_alpha: 1.0, sum_beta: 1.0, sum_gamma: 2.1 }
        );
    }

    #[test]
    fn top_eigenvalue_too_large_is_caught() {
        // γ₁ > α₁ + β₁ violates ({1},{1},{1}).
        let m = horn_membership(&seq(&[1.0, 0.0]), &seq(&[1.0, 0.0]), &seq(&[2.5, -0.5]), 1e-9).unwrap();
        match m {
            HornMembership::InequalityViolation { triple, lhs, rhs } => {
                assert_eq!((triple.i.as_slice(), triple.j.as_slice(), triple.k.as_slice()), (&[1][..], &[1][..], &[1][..]));
                assert_eq!(lhs, 2.0);
                assert_eq!(rhs, 2.5);
            }
            other => panic!("expected inequality violation, got {other:?}"),
        }
    }

    #[test]
    fn entrywise_sum_is_always_a_member() {
        // Attained by the commuting diagonal realization.
        let alpha = seq(&[3.0, 1.0, 0.5]);
        let beta = seq(&[2.0, 2.0, -1.0]);
        let gamma = seq(&[5.0, 3.0, -0.5]);
        assert!(horn_membership(&alpha, &beta, &gamma, 1e-12).unwrap().is_member());
    }

    #[test]
    fn length_mismatch_is_structural() {
        assert!(matches!(
            horn_membership(&seq(&[1.0]), &seq(&[1.0, 0.0]), &seq(&[1.0]), 1e-9),
            Err(HornError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn single_entry_reduces_to_trace_equality() {
        assert!(horn_membership(&seq(&[2.0]), &seq(&[3.0]), &seq(&[5.0]), 1e-12).unwrap().is_member());
        assert!(!horn_membership(&seq(&[2.0]), &seq(&[3.0]), &seq(&[5.5]), 1e-12).unwrap().is_member());
    }

    #[test]
    fn fuv_aligned_sum_is_member_at_n_max_8() {
        let u = EigenvalueFunction::from_sequence(&seq(&[2.0, 1.0]));
        let w = EigenvalueFunction::from_sequence(&seq(&[4.0, 2.0]));
        let out = fuv_membership(&u, &u, &w, 8, 1e-9);
        assert_eq!(out, FuvOutcome::Member { checked_n_max: 8 });
    }

    #[test]
    fn fuv_trace_violation() {
        let u = EigenvalueFunction::from_sequence(&seq(&[2.0, 1.0]));
        let w = EigenvalueFunction::from_sequence(&seq(&[4.0, 2.5]));
        assert!(matches!(fuv_membership(&u, &u, &w, 4, 1e-9), FuvOutcome::TraceViolation { .. }));
    }

    #[test]
    fn fuv_inequality_violation_at_n2() {
        // γ = (4.2, 1.8): trace matches but the top cell takes too much.
        let u = EigenvalueFunction::from_sequence(&seq(&[2.0, 1.0]));
        let w = EigenvalueFunction::from_sequence(&seq(&[4.2, 1.8]));
        match fuv_membership(&u, &u, &w, 8, 1e-9) {
            FuvOutcome::InequalityViolation { n, triple, lhs, rhs } => {
                assert_eq!(n, 2);
                assert_eq!((triple.i.as_slice(), triple.j.as_slice(), triple.k.as_slice()), (&[1][..], &[1][..], &[1][..]));
                assert!((lhs - 2.0).abs() < 1e-12);
                assert!((rhs - 2.1).abs() < 1e-12);
            }
            other => panic!("expected inequality violation, got {other:?}"),
        }
    }

    #[test]
    fn fuv_membership_is_monotone_in_n_max() {
        let u = EigenvalueFunction::from_sequence(&seq(&[2.0, 1.0]));
        let w = EigenvalueFunction::from_sequence(&seq(&[3.5, 2.5]));
        if fuv_membership(&u, &u, &w, 8, 1e-9).is_member() {
            for n_max in 2..8 {
                assert!(fuv_membership(&u, &u, &w, n_max, 1e-9).is_member());
            }
        }
    }

    #[test]
    fn default_tolerance_scales() {
        let small = seq(&[1.0, 0.0]);
        let large = seq(&[1e6, 0.0]);
        assert!(default_tolerance(&[&small, &small]) < default_tolerance(&[&small, &large]));
    }
}
