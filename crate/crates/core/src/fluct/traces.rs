//! Matrix polynomial evaluation and trace helpers.
//!
//! Linear statistics `Tr p(X)` are computed from power traces: `Tr X^j` for
//! `j ≤ 8` needs at most three matrix products (`X²`, `X³`, `X⁴`), every
//! higher trace being a Frobenius pairing of two stored powers. The
//! eigenvalue route (`Σ p(λ_i)`) is kept as an independent cross-check.

use num_complex::Complex64;

use crate::chebyshev::{cheb, ChebKind, Polynomial};
use crate::linalg::{eig_hermitian, CMatrix, HermitianMatrix};

/// Horner evaluation of `p(M)`.
pub fn apply_poly(p: &Polynomial, m: &CMatrix) -> CMatrix {
    let n = m.dim();
    if p.is_zero() {
        return CMatrix::zeros(n);
    }
    let coeffs = p.coeffs();
    if coeffs.len() == 1 {
        return CMatrix::identity(n).scale(Complex64::new(coeffs[0], 0.0));
    }
    // Seed Horner with c_d·M + c_{d−1}·I; saves the first (trivial) product.
    let d = coeffs.len() - 1;
    let mut acc = m.scale(Complex64::new(coeffs[d], 0.0)).add_scalar_diag(Complex64::new(coeffs[d - 1], 0.0));
    for &c in coeffs[..d - 1].iter().rev() {
        acc = acc.matmul(m).expect("square").add_scalar_diag(Complex64::new(c, 0.0));
    }
    acc
}

/// `Tr X^j` for `j = 0..=max` (`max ≤ 8`), real parts.
pub fn power_traces(x: &CMatrix, max: usize) -> Vec<f64> {
    assert!(max <= 8, "power traces are tabulated up to degree 8");
    let n = x.dim();
    let mut traces = vec![0.0; max + 1];
    traces[0] = n as f64;
    if max >= 1 {
        traces[1] = x.trace().re;
    }
    if max < 2 {
        return traces;
    }
    let x2 = x.matmul(x).expect("square");
    traces[2] = x2.trace().re;
    if max >= 3 {
        traces[3] = x2.trace_product(x).expect("square").re;
    }
    if max >= 4 {
        traces[4] = x2.trace_product(&x2).expect("square").re;
    }
    if max >= 5 {
        let x3 = x2.matmul(x).expect("square");
        traces[5] = x3.trace_product(&x2).expect("square").re;
        if max >= 6 {
            traces[6] = x3.trace_product(&x3).expect("square").re;
        }
        if max >= 7 {
            let x4 = x3.matmul(x).expect("square");
            traces[7] = x4.trace_product(&x3).expect("square").re;
            if max == 8 {
                traces[8] = x4.trace_product(&x4).expect("square").re;
            }
        }
    }
    traces
}

/// `Tr T_n(X)` for `n = 1..=max` from power traces (no eigendecomposition).
pub fn cheb_traces_via_powers(x: &CMatrix, max: usize) -> Vec<f64> {
    let powers = power_traces(x, max);
    (1..=max)
        .map(|n| {
            cheb(ChebKind::First, n)
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, &c)| c * powers[k])
                .sum()
        })
        .collect()
}

/// `Tr T_n(X) = Σ_i T_n(λ_i)` via the eigensolver; the independent route.
pub fn cheb_traces_via_eigen(x: &HermitianMatrix, max: usize) -> Vec<f64> {
    let (values, _) = eig_hermitian(x).expect("Hermitian converges");
    (1..=max)
        .map(|n| {
            let t = cheb(ChebKind::First, n);
            values.values().iter().map(|&l| t.eval(l)).sum()
        })
        .collect()
}
