use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LinalgError;

/// Relative tolerance accepted when ingesting an almost-Hermitian matrix.
const HERMITIAN_INGEST_TOL: f64 = 1e-12;
/// Max-norm tolerance for the unitarity invariant `‖U*U − I‖_max`.
const UNITARY_TOL: f64 = 1e-10;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if n == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(LinalgError::DimensionMismatch { left: n, right: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    pub fn from_diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        Ok(Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        Ok(Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Add `c` to every diagonal entry.
    pub fn add_scalar_diag(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] += c;
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        // i-k-j loop order keeps both reads and writes sequential.
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                let orow = &mut out.data[i * n..(i + 1) * n];
                for j in 0..n {
                    orow[j] += aik * brow[j];
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<Complex64, LinalgError> {
        self.check_dim(other)?;
        let n = self.n;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self[(i, j)] * other[(j, i)];
            }
        }
        Ok(acc)
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_dim(&self, other: &Self) -> Result<(), LinalgError> {
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Kronecker product; `out[(i·nb + k, j·nb + l)] = a[(i,j)]·b[(k,l)]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let mut out = CMatrix::zeros(n);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            if aij.re == 0.0 && aij.im == 0.0 {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn kron_hermitian(a: &HermitianMatrix, b: &HermitianMatrix) -> HermitianMatrix {
    // closure: (A ⊗ B)* = A* ⊗ B*
    HermitianMatrix::from_matrix_unchecked(kron(a.matrix(), b.matrix()))
}

/// Square complex matrix with `A = A*` (symmetrized on ingest).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: CMatrix,
}

impl HermitianMatrix {
    /// Ingest a matrix, accepting deviations from exact Hermitian symmetry up
    /// to `1e-12·(1 + ‖A‖_max)` and symmetrizing to `(A + A*)/2`.
    pub fn new(m: CMatrix) -> Result<Self, LinalgError> {
        let dev = m.hermitian_deviation();
        let tol = HERMITIAN_INGEST_TOL * (1.0 + m.max_norm());
        if dev > tol {
            return Err(LinalgError::NotHermitian { deviation: dev, tolerance: tol });
        }
        Ok(Self::from_matrix_unchecked(m))
    }

    /// Symmetrize without checking. Callers must guarantee `A ≈ A*`.
    pub(crate) fn from_matrix_unchecked(mut m: CMatrix) -> Self {
        let n = m.dim();
        for i in 0..n {
            m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
            for j in i + 1..n {
                let avg = 0.5 * (m[(i, j)] + m[(j, i)].conj());
                m[(i, j)] = avg;
                m[(j, i)] = avg.conj();
            }
        }
        Self { inner: m }
    }

    pub fn from_diag(values: &[f64]) -> Self {
        Self { inner: CMatrix::from_diag(values) }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let complex_rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::new(CMatrix::from_rows(complex_rows)?)
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> CMatrix {
        self.inner
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        Ok(Self { inner: self.inner.add(&other.inner)? })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { inner: self.inner.scale(Complex64::new(c, 0.0)) }
    }

    pub fn trace(&self) -> f64 {
        self.inner.trace().re
    }

    /// Conjugate by a unitary: `U A U*`.
    pub fn conjugate_by(&self, u: &UnitaryMatrix) -> Result<Self, LinalgError> {
        let ua = u.matrix().matmul(&self.inner)?;
        let uau = ua.matmul(&u.matrix().adjoint())?;
        Ok(Self::from_matrix_unchecked(uau))
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(blocks: &[HermitianMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.dim()).sum();
        let mut m = CMatrix::zeros(n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.dim() {
                for j in 0..b.dim() {
                    m[(offset + i, offset + j)] = b.inner[(i, j)];
                }
            }
            offset += b.dim();
        }
        Self { inner: m }
    }
}

#[derive(Serialize, Deserialize)]
struct HermitianRepr {
    re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Vec<Vec<f64>>>,
}

/// Wire format: `{"re":[[…]],"im":[[…]]}` with `im` optional; the matrix must
/// pass the Hermitian ingest tolerance.
impl Serialize for HermitianMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = self.dim();
        let re = (0..n).map(|i| (0..n).map(|j| self.inner[(i, j)].re).collect()).collect();
        let all_real = (0..n).all(|i| (0..n).all(|j| self.inner[(i, j)].im == 0.0));
        let im = (!all_real).then(|| (0..n).map(|i| (0..n).map(|j| self.inner[(i, j)].im).collect()).collect());
        HermitianRepr { re, im }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = HermitianRepr::deserialize(deserializer)?;
        let n = repr.re.len();
        if n == 0 {
            return Err(D::Error::custom("matrix must have dimension at least 1"));
        }
        let mut m = CMatrix::zeros(n);
        for (i, row) in repr.re.iter().enumerate() {
            if row.len() != n {
                return Err(D::Error::custom("re must be square"));
            }
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(D::Error::custom("entries must be finite"));
                }
                m[(i, j)] = Complex64::new(x, 0.0);
            }
        }
        if let Some(im) = &repr.im {
            if im.len() != n {
                return Err(D::Error::custom("im must match re in shape"));
            }
            for (i, row) in im.iter().enumerate() {
                if row.len() != n {
                    return Err(D::Error::custom("im must be square"));
                }
                for (j, &x) in row.iter().enumerate() {
                    if !x.is_finite() {
                        return Err(D::Error::custom("entries must be finite"));
                    }
                    m[(i, j)] += Complex64::new(0.0, x);
                }
            }
        }
        HermitianMatrix::new(m).map_err(D::Error::custom)
    }
}

/// Square complex matrix with `‖U*U − I‖_max ≤ 1e-10`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    inner: CMatrix,
}

impl UnitaryMatrix {
    pub fn new(m: CMatrix) -> Result<Self, LinalgError> {
        let dev = unitary_deviation(&m);
        if dev > UNITARY_TOL {
            return Err(LinalgError::NotUnitary { deviation: dev });
        }
        Ok(Self { inner: m })
    }

    pub fn identity(n: usize) -> Self {
        Self { inner: CMatrix::identity(n) }
    }

    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        Self { inner: m }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.inner
    }

    pub fn deviation(&self) -> f64 {
        unitary_deviation(&self.inner)
    }
}

fn unitary_deviation(m: &CMatrix) -> f64 {
    let gram = m.adjoint().matmul(m).expect("square");
    gram.sub(&CMatrix::identity(m.dim())).expect("square").max_norm()
}

/// Nonincreasing list of real eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct EigenvalueSequence {
    values: Vec<f64>,
}

impl<'de> Deserialize<'de> for EigenvalueSequence {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = Vec::<f64>::deserialize(deserializer)?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(serde::de::Error::custom("eigenvalues must be finite"));
        }
        EigenvalueSequence::new(values).map_err(serde::de::Error::custom)
    }
}

impl EigenvalueSequence {
    /// Validate a nonincreasing sequence.
    pub fn new(values: Vec<f64>) -> Result<Self, LinalgError> {
        for i in 1..values.len() {
            if values[i] > values[i - 1] {
                return Err(LinalgError::NotSorted { position: i });
            }
        }
        Ok(Self { values })
    }

    /// Sort into nonincreasing order.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        Self { values }
    }

    /// Parse a comma-separated list like `"2,1,0.5"` (must be nonincreasing).
    pub fn parse_comma_list(text: &str) -> Result<Self, LinalgError> {
        let mut values = Vec::new();
        for part in text.split(',') {
            let trimmed = part.trim();
            let x: f64 = trimmed
                .parse()
                .map_err(|_| LinalgError::ParseNumber { token: trimmed.to_string() })?;
            if !x.is_finite() {
                return Err(LinalgError::ParseNumber { token: trimmed.to_string() });
            }
            values.push(x);
        }
        Self::new(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// Each entry repeated `d` times (still nonincreasing).
    pub fn dilate(&self, d: usize) -> Self {
        let mut out = Vec::with_capacity(self.values.len() * d);
        for &v in &self.values {
            out.extend(std::iter::repeat(v).take(d));
        }
        Self { values: out }
    }

    /// All pairwise products with `other`, sorted nonincreasing.
    pub fn outer_product_sorted(&self, other: &Self) -> Self {
        let mut prods = Vec::with_capacity(self.len() * other.len());
        for &a in &self.values {
            for &b in &other.values {
                prods.push(a * b);
            }
        }
        Self::from_unsorted(prods)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_identity_factor_is_block_diag() {
        let b = CMatrix::from_rows(vec![vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(3.0, 0.0), c(4.0, 0.0)]]).unwrap();
        let k = kron(&CMatrix::identity(2), &b);
        assert_eq!(k.dim(), 4);
        assert_eq!(k[(0, 1)], c(2.0, 0.0));
        assert_eq!(k[(2, 3)], c(2.0, 0.0));
        assert_eq!(k[(0, 2)], c(0.0, 0.0));
        assert_eq!(k[(3, 2)], c(3.0, 0.0));
    }

    #[test]
    fn kron_diagonal_case() {
        let a = CMatrix::from_diag(&[1.0, 4.0]);
        let b = CMatrix::from_diag(&[1.0, 2.0]);
        let k = kron(&a, &b);
        let diag: Vec<f64> = (0..4).map(|i| k[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, 2.0, 4.0, 8.0]);
    }

    #[test]
    fn kron_of_hermitian_is_hermitian() {
        let a = HermitianMatrix::new(
            CMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(2.0, 0.0)]]).unwrap(),
        )
        .unwrap();
        let b = HermitianMatrix::from_diag(&[3.0, -1.0]);
        let k = kron_hermitian(&a, &b);
        let m = k.matrix();
        for i in 0..4 {
            for j in 0..4 {
                assert!((m[(i, j)] - m[(j, i)].conj()).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn hermitian_ingest_rejects_beyond_tolerance() {
        let m = CMatrix::from_rows(vec![vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.5, 0.0), c(2.0, 0.0)]]).unwrap();
        assert!(matches!(HermitianMatrix::new(m), Err(LinalgError::NotHermitian { .. })));
    }

    #[test]
    fn hermitian_ingest_symmetrizes_tiny_deviation() {
        let eps = 1e-14;
        let m = CMatrix::from_rows(vec![vec![c(1.0, eps), c(1.0, eps)], vec![c(1.0, 0.0), c(2.0, 0.0)]]).unwrap();
        let h = HermitianMatrix::new(m).unwrap();
        assert_eq!(h.matrix()[(0, 0)].im, 0.0);
        assert!((h.matrix()[(0, 1)] - h.matrix()[(1, 0)].conj()).norm() == 0.0);
    }

    #[test]
    fn eigenvalue_sequence_rejects_increasing() {
        assert!(EigenvalueSequence::new(vec![1.0, 2.0]).is_err());
        assert!(EigenvalueSequence::new(vec![2.0, 2.0, 1.0]).is_ok());
    }

    #[test]
    fn outer_product_sorted() {
        let a = EigenvalueSequence::new(vec![4.0, 1.0]).unwrap();
        let b = EigenvalueSequence::new(vec![2.0, 1.0]).unwrap();
        assert_eq!(a.outer_product_sorted(&b).values(), &[8.0, 4.0, 2.0, 1.0]);
    }

    #[test]
    fn trace_product_matches_matmul_trace() {
        let a = CMatrix::from_rows(vec![vec![c(1.0, 2.0), c(0.0, 1.0)], vec![c(3.0, 0.0), c(1.0, -1.0)]]).unwrap();
        let b = CMatrix::from_rows(vec![vec![c(0.0, 1.0), c(2.0, 0.0)], vec![c(1.0, 1.0), c(0.0, -2.0)]]).unwrap();
        let direct = a.trace_product(&b).unwrap();
        let via_mul = a.matmul(&b).unwrap().trace();
        assert!((direct - via_mul).norm() < 1e-12);
    }
}
