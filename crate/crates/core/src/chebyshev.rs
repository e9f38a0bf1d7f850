//! Monic dilated Chebyshev polynomials on `[−2, 2]` and the semicircle
//! moment calculus.
//!
//! The first-kind family satisfies `T_n(2cosθ) = 2cos(nθ)` for `n ≥ 1`
//! (with `T_0 = 1`), the second-kind family `U_n(2cosθ) = sin((n+1)θ)/sinθ`.
//! Both are monic, orthogonal on `(−2, 2)` against the weights
//! `(4−x²)^{∓1/2}`, and tie directly to the semicircle law: even semicircle
//! moments are the Catalan numbers, so `τ(T_2(s)) = −1` and `τ(T_n(s)) = 0`
//! for every other `n ≥ 1`.

use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChebKind {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChebError {
    #[error("invalid interval: require {lo} < {hi}")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("alpha coefficients are indexed from n = 1")]
    AlphaIndexZero,
}

/// Dense real polynomial; `coeffs[k]` is the coefficient of `x^k`. Canonical
/// form keeps the trailing coefficient nonzero (except for the zero
/// polynomial).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1.0] }
    }

    pub fn x() -> Self {
        Self { coeffs: vec![0.0, 1.0] }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (0 beyond the stored degree).
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading_coeff(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Composition with the affine map `x ↦ a·x + b`.
    pub fn compose_affine(&self, a: f64, b: f64) -> Self {
        let linear = Self::new(vec![b, a]);
        let mut acc = Self::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&linear).add(&Self::constant(c));
        }
        acc
    }
}

/// Monic dilated Chebyshev polynomial of the given kind and degree.
///
/// Three-term recurrence `P_{n+1} = x·P_n − P_{n−1}`, except that the first
/// first-kind step doubles the constant: `T_2 = x·T_1 − 2·T_0`.
pub fn cheb(kind: ChebKind, n: usize) -> Polynomial {
    let mut prev = Polynomial::one();
    if n == 0 {
        return prev;
    }
    let mut cur = Polynomial::x();
    let x = Polynomial::x();
    for step in 1..n {
        let scale = if kind == ChebKind::First && step == 1 { 2.0 } else { 1.0 };
        let next = x.mul(&cur).sub(&prev.scale(scale));
        prev = cur;
        cur = next;
    }
    cur
}

/// `cheb(kind, n)` composed with the affine map sending `[u, v]` onto
/// `[−2, 2]`; degree is exactly `n`.
pub fn shifted_cheb(kind: ChebKind, n: usize, u: f64, v: f64) -> Result<Polynomial, ChebError> {
    if !(u < v) {
        return Err(ChebError::InvalidInterval { lo: u, hi: v });
    }
    let a = 4.0 / (v - u);
    let b = -2.0 * (u + v) / (v - u);
    Ok(cheb(kind, n).compose_affine(a, b))
}

/// The `n`-th Catalan number as an `f64` (exact for `n ≤ 30`).
pub fn catalan(n: usize) -> f64 {
    let mut c = 1.0;
    for k in 0..n {
        c = c * 2.0 * (2.0 * k as f64 + 1.0) / (k as f64 + 2.0);
    }
    c
}

/// `τ(p(s))` for a `(0,1)`-semicircular element `s`: even moments are the
/// Catalan numbers, odd moments vanish.
pub fn semicircle_trace(p: &Polynomial) -> f64 {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(k, _)| k % 2 == 0)
        .map(|(k, &c)| c * catalan(k / 2))
        .sum()
}

/// `α_n = (2π)^{-1} ∫_{−2}^{2} T_n(t)·√(4−t²) dt`, the semicircle trace of
/// the first-kind polynomial: `α_2 = −1`, every other `α_n = 0`.
pub fn alpha_coeff(n: usize) -> Result<f64, ChebError> {
    if n == 0 {
        return Err(ChebError::AlphaIndexZero);
    }
    Ok(semicircle_trace(&cheb(ChebKind::First, n)))
}

const QUAD_NODES: usize = 200;

/// `∫_{−2}^{2} p·q·w dx` for the first- or second-kind weight, by
/// Gauss–Legendre quadrature after the substitution `x = 2cosθ` (which
/// removes the endpoint singularity of the first-kind weight).
pub fn inner_product(p: &Polynomial, q: &Polynomial, weight: ChebKind) -> f64 {
    let (nodes, weights) = gauss_legendre_0_pi();
    let mut acc = 0.0;
    for (&theta, &w) in nodes.iter().zip(weights) {
        let x = 2.0 * theta.cos();
        let base = p.eval(x) * q.eval(x);
        let jac = match weight {
            // (4−x²)^{-1/2}·dx = dθ
            ChebKind::First => 1.0,
            // (4−x²)^{1/2}·dx = 4sin²θ dθ
            ChebKind::Second => 4.0 * theta.sin().powi(2),
        };
        acc += w * base * jac;
    }
    acc
}

/// Gauss–Legendre nodes and weights on `[0, π]`, cached.
fn gauss_legendre_0_pi() -> (&'static [f64], &'static [f64]) {
    static CACHE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    let (n, w) = CACHE.get_or_init(|| {
        let (nodes, weights) = gauss_legendre(QUAD_NODES);
        let half = std::f64::consts::PI / 2.0;
        (
            nodes.iter().map(|&x| half * (x + 1.0)).collect(),
            weights.iter().map(|&w| w * half).collect(),
        )
    });
    (n, w)
}

/// Gauss–Legendre nodes and weights on `[−1, 1]` by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_n' at x.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
