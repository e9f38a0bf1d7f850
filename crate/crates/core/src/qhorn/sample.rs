use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::QhornError;
use crate::horn::{horn_membership, HornMembership};
use crate::linalg::{
    eigenvalues, haar_unitary, kron_hermitian, CMatrix, EigenvalueSequence, HermitianMatrix, UnitaryMatrix,
};
use crate::ncwords::Word;
use crate::rng::RngState;

/// Guard on `n·N·d` for classical-containment checks; the Horn system beyond
/// dimension 6 is expensive to enumerate.
const INCLUSION_SIZE_LIMIT: usize = 6;

/// Parameters of one quantum Horn body: coefficients `a_1, a_2`, spectra
/// `α, β` and the multiplicity `d`.
#[derive(Debug, Clone)]
pub struct QuantumHornSpec {
    a1: HermitianMatrix,
    a2: HermitianMatrix,
    alpha: EigenvalueSequence,
    beta: EigenvalueSequence,
    d: usize,
}

impl QuantumHornSpec {
    pub fn new(
        a1: HermitianMatrix,
        a2: HermitianMatrix,
        alpha: EigenvalueSequence,
        beta: EigenvalueSequence,
        d: usize,
    ) -> Result<Self, QhornError> {
        if a1.dim() != a2.dim() {
            return Err(QhornError::CoefficientDimMismatch { left: a1.dim(), right: a2.dim() });
        }
        if alpha.len() != beta.len() {
            return Err(QhornError::SequenceLengthMismatch { left: alpha.len(), right: beta.len() });
        }
        if alpha.is_empty() {
            return Err(QhornError::Domain("alpha and beta must be nonempty".into()));
        }
        if d < 1 {
            return Err(QhornError::Domain("multiplicity d must be at least 1".into()));
        }
        Ok(Self { a1, a2, alpha, beta, d })
    }

    pub fn a1(&self) -> &HermitianMatrix {
        &self.a1
    }

    pub fn a2(&self) -> &HermitianMatrix {
        &self.a2
    }

    pub fn alpha(&self) -> &EigenvalueSequence {
        &self.alpha
    }

    pub fn beta(&self) -> &EigenvalueSequence {
        &self.beta
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coefficient_dim(&self) -> usize {
        self.a1.dim()
    }

    pub fn unitary_dim(&self) -> usize {
        self.alpha.len() * self.d
    }

    /// Total dimension `n·N·d` of the sampled matrices.
    pub fn total_dim(&self) -> usize {
        self.coefficient_dim() * self.unitary_dim()
    }

    /// `a_1 ⊗ U(diag(α)⊗1_d)U* + a_2 ⊗ V(diag(β)⊗1_d)V*`.
    pub fn realize(&self, u: &UnitaryMatrix, v: &UnitaryMatrix) -> Result<HermitianMatrix, QhornError> {
        let nd = self.unitary_dim();
        if u.dim() != nd || v.dim() != nd {
            return Err(QhornError::Domain(format!("unitaries must have dimension {nd}")));
        }
        let da = HermitianMatrix::from_diag(self.alpha.dilate(self.d).values());
        let db = HermitianMatrix::from_diag(self.beta.dilate(self.d).values());
        let left = kron_hermitian(&self.a1, &da.conjugate_by(u)?);
        let right = kron_hermitian(&self.a2, &db.conjugate_by(v)?);
        Ok(left.add(&right)?)
    }
}

/// One drawn eigenvalue sequence, tagged with its substream index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloudSample {
    pub idx: u64,
    pub gamma: EigenvalueSequence,
}

/// Seeded collection of spectra drawn from one quantum Horn body.
#[derive(Debug, Clone)]
pub struct SampleCloud {
    pub spec: QuantumHornSpec,
    pub base: RngState,
    pub samples: Vec<CloudSample>,
}

impl SampleCloud {
    /// JSON-lines serialization: one `{"idx":…,"gamma":[…]}` per line.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for s in &self.samples {
            serde_json::to_writer(&mut out, s)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Parse cloud samples from JSON-lines; blank lines are skipped.
pub fn parse_cloud_jsonl<R: BufRead>(reader: R) -> Result<Vec<CloudSample>, serde_json::Error> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(serde_json::Error::io)?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}

/// Draw `count` samples with fresh Haar pairs, one substream per index;
/// samples are merged in index order, so the cloud does not depend on
/// scheduling.
pub fn qhorn_sample(spec: &QuantumHornSpec, count: usize, rng: RngState) -> Result<SampleCloud, QhornError> {
    assert!(count >= 1, "require count ≥ 1");
    let nd = spec.unitary_dim();
    let samples: Result<Vec<CloudSample>, QhornError> = (0..count as u64)
        .into_par_iter()
        .map(|idx| {
            let mut gen = rng.substream(idx).rng();
            let u = haar_unitary(nd, &mut gen);
            let v = haar_unitary(nd, &mut gen);
            let m = spec.realize(&u, &v)?;
            let gamma = eigenvalues(&m)?;
            Ok(CloudSample { idx, gamma })
        })
        .collect();
    Ok(SampleCloud { spec: spec.clone(), base: rng, samples: samples? })
}

/// One sample at explicitly chosen unitaries (the identity-mode test hook).
pub fn sample_with_unitaries(
    spec: &QuantumHornSpec,
    u: &UnitaryMatrix,
    v: &UnitaryMatrix,
) -> Result<EigenvalueSequence, QhornError> {
    Ok(eigenvalues(&spec.realize(u, v)?)?)
}

/// Verdict of the classical-containment check of a sampled cloud.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum InclusionOutcome {
    Included { samples: usize },
    NotIncluded { idx: u64, certificate: HornMembership },
}

impl InclusionOutcome {
    pub fn is_included(&self) -> bool {
        matches!(self, InclusionOutcome::Included { .. })
    }
}

/// Check that every sampled spectrum lies in the classical Horn body of
/// `γ_1 ⊗ α` and `γ_2 ⊗ β` (all pairwise products, sorted, dilated by `d`),
/// where `γ_i` is the spectrum of `a_i`. Guarded at `n·N·d ≤ 6` unless
/// `allow_large` is set.
pub fn inclusion_check(cloud: &SampleCloud, tol: f64, allow_large: bool) -> Result<InclusionOutcome, QhornError> {
    let size = cloud.spec.total_dim();
    if size > INCLUSION_SIZE_LIMIT && !allow_large {
        return Err(QhornError::FeasibilityExceeded { size, limit: INCLUSION_SIZE_LIMIT });
    }
    let gamma1 = eigenvalues(cloud.spec.a1())?;
    let gamma2 = eigenvalues(cloud.spec.a2())?;
    let target_a = gamma1.outer_product_sorted(cloud.spec.alpha()).dilate(cloud.spec.d());
    let target_b = gamma2.outer_product_sorted(cloud.spec.beta()).dilate(cloud.spec.d());
    for sample in &cloud.samples {
        let verdict = horn_membership(&target_a, &target_b, &sample.gamma, tol)?;
        if !verdict.is_member() {
            return Ok(InclusionOutcome::NotIncluded { idx: sample.idx, certificate: verdict });
        }
    }
    Ok(InclusionOutcome::Included { samples: cloud.samples.len() })
}

/// Mixed-moment table: word → complex moment value.
pub type MomentTable = BTreeMap<Word, Complex64>;

#[derive(Serialize, Deserialize)]
struct MomentEntry {
    word: Vec<u8>,
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct MomentTableRepr {
    moments: Vec<MomentEntry>,
}

/// Parse `{"moments":[{"word":[1,2],"re":…,"im":…}]}`.
pub fn parse_moment_table(text: &str) -> Result<MomentTable, QhornError> {
    let repr: MomentTableRepr =
        serde_json::from_str(text).map_err(|e| QhornError::Domain(format!("moment table: {e}")))?;
    let mut table = MomentTable::new();
    for entry in repr.moments {
        if !entry.re.is_finite() || !entry.im.is_finite() {
            return Err(QhornError::Domain("moment table: non-finite value".into()));
        }
        let word = Word::new(entry.word).map_err(|e| QhornError::Domain(format!("moment table: {e}")))?;
        table.insert(word, Complex64::new(entry.re, entry.im));
    }
    Ok(table)
}

/// Serialize a table to the same shape, words in graded order.
pub fn moment_table_to_json(table: &MomentTable) -> String {
    let repr = MomentTableRepr {
        moments: table
            .iter()
            .map(|(w, c)| MomentEntry { word: w.letters().to_vec(), re: c.re, im: c.im })
            .collect(),
    };
    serde_json::to_string(&repr).expect("serializable")
}

/// Normalized traces of every word of degree `1..=m` in the two candidates.
pub fn moments_of(cand1: &HermitianMatrix, cand2: &HermitianMatrix, m: usize) -> Result<MomentTable, QhornError> {
    if cand1.dim() != cand2.dim() {
        return Err(QhornError::CoefficientDimMismatch { left: cand1.dim(), right: cand2.dim() });
    }
    let mut table = MomentTable::new();
    let mats = [cand1, cand2];
    for word in words_up_to_degree(m) {
        let value = word_product_trace(&word, &mats)?;
        table.insert(word, value);
    }
    Ok(table)
}

/// Largest deviation `max_{1 ≤ deg(w) ≤ m} |tr(w(cand1, cand2)) − target(w)|`
/// of the candidate pair's mixed moments from the target table.
pub fn microstate_defect(
    target: &MomentTable,
    cand1: &HermitianMatrix,
    cand2: &HermitianMatrix,
    m: usize,
) -> Result<f64, QhornError> {
    if cand1.dim() != cand2.dim() {
        return Err(QhornError::CoefficientDimMismatch { left: cand1.dim(), right: cand2.dim() });
    }
    assert!(m >= 1, "require m ≥ 1");
    let mats = [cand1, cand2];
    let mut defect: f64 = 0.0;
    for word in words_up_to_degree(m) {
        let Some(&want) = target.get(&word) else {
            return Err(QhornError::MissingMoment { word: word.to_string() });
        };
        let got = word_product_trace(&word, &mats)?;
        defect = defect.max((got - want).norm());
    }
    Ok(defect)
}

fn words_up_to_degree(m: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for degree in 1..=m {
        let mut letters = vec![1u8; degree];
        loop {
            out.push(Word::new(letters.clone()).expect("valid letters"));
            let mut pos = degree;
            loop {
                if pos == 0 {
                    letters.clear();
                    break;
                }
                pos -= 1;
                if letters[pos] == 1 {
                    letters[pos] = 2;
                    for l in letters.iter_mut().skip(pos + 1) {
                        *l = 1;
                    }
                    break;
                }
            }
            if letters.is_empty() {
                break;
            }
        }
    }
    out
}

fn word_product_trace(word: &Word, mats: &[&HermitianMatrix; 2]) -> Result<Complex64, QhornError> {
    let dim = mats[0].dim() as f64;
    let letters = word.letters();
    let value = match letters.len() {
        0 => Complex64::new(dim, 0.0),
        1 => mats[letters[0] as usize - 1].matrix().trace(),
        _ => {
            let mut product: Option<CMatrix> = None;
            for &l in &letters[..letters.len() - 1] {
                let m = mats[l as usize - 1].matrix();
                product = Some(match product {
                    None => m.clone(),
                    Some(p) => p.matmul(m)?,
                });
            }
            product.expect("length ≥ 2").trace_product(mats[letters[letters.len() - 1] as usize - 1].matrix())?
        }
    };
    Ok(value / dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(values: &[f64]) -> EigenvalueSequence {
        EigenvalueSequence::new(values.to_vec()).unwrap()
    }

    fn scalar_spec() -> QuantumHornSpec {
        QuantumHornSpec::new(
            HermitianMatrix::from_diag(&[1.0]),
            HermitianMatrix::from_diag(&[1.0]),
            seq(&[2.0, 1.0]),
            seq(&[2.0, 1.0]),
            1,
        )
        .unwrap()
    }

    #[test]
    fn scalar_spec_samples_live_in_the_horn_body() {
        let cloud = qhorn_sample(&scalar_spec(), 50, RngState::new(21)).unwrap();
        let out = inclusion_check(&cloud, 1e-9 * 3.0, false).unwrap();
        assert!(out.is_included(), "{out:?}");
    }

    #[test]
    fn projector_coefficients_concatenate_spectra() {
        // a1 = diag(1,0), a2 = diag(0,1): every sample is the sorted
        // concatenation of α and β.
        let spec = QuantumHornSpec::new(
            HermitianMatrix::from_diag(&[1.0, 0.0]),
            HermitianMatrix::from_diag(&[0.0, 1.0]),
            seq(&[3.0, 1.0]),
            seq(&[2.5, 0.5]),
            1,
        )
        .unwrap();
        let expect = EigenvalueSequence::from_unsorted(vec![3.0, 1.0, 2.5, 0.5]);
        let cloud = qhorn_sample(&spec, 20, RngState::new(22)).unwrap();
        for s in &cloud.samples {
            for (got, want) in s.gamma.values().iter().zip(expect.values()) {
                assert!((got - want).abs() < 1e-10, "sample {} deviates", s.idx);
            }
        }
    }

    #[test]
    fn identity_mode_matches_direct_spectrum() {
        let spec = QuantumHornSpec::new(
            HermitianMatrix::from_diag(&[1.0, 4.0]),
            HermitianMatrix::from_diag(&[2.0, 1.0]),
            seq(&[2.0, 1.0]),
            seq(&[2.0, 1.0]),
            1,
        )
        .unwrap();
        let id = UnitaryMatrix::identity(2);
        let got = sample_with_unitaries(&spec, &id, &id).unwrap();
        // a1⊗diag(α) + a2⊗diag(β) is diagonal: entries 1·α_i + 2·β_j pattern.
        let direct = EigenvalueSequence::from_unsorted(vec![
            1.0 * 2.0 + 2.0 * 2.0,
            1.0 * 1.0 + 2.0 * 1.0,
            4.0 * 2.0 + 1.0 * 2.0,
            4.0 * 1.0 + 1.0 * 1.0,
        ]);
        for (g, w) in got.values().iter().zip(direct.values()) {
            assert!((g - w).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_identity_of_samples() {
        // Σ eig = Tr(a₁)·Σα·d + Tr(a₂)·Σβ·d.
        let spec = QuantumHornSpec::new(
            HermitianMatrix::from_diag(&[1.0, 4.0]),
            HermitianMatrix::from_diag(&[2.0, 1.0]),
            seq(&[2.0, 1.0]),
            seq(&[1.0, -1.0]),
            1,
        )
        .unwrap();
        let want = 5.0 * 3.0 + 3.0 * 0.0;
        let cloud = qhorn_sample(&spec, 25, RngState::new(23)).unwrap();
        for s in &cloud.samples {
            assert!((s.gamma.sum() - want).abs() < 1e-8, "sample {}", s.idx);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = qhorn_sample(&scalar_spec(), 8, RngState::new(24)).unwrap();
        let b = qhorn_sample(&scalar_spec(), 8, RngState::new(24)).unwrap();
        assert_eq!(a.samples, b.samples);
    }

    #[test]
    fn dilation_consistency_under_identity_hook() {
        // (α, β, d) and (α⊗1_d, β⊗1_d, 1) realize the same matrix at U = V = I.
        let base = scalar_spec();
        let with_d = QuantumHornSpec::new(
            base.a1().clone(),
            base.a2().clone(),
            base.alpha().clone(),
            base.beta().clone(),
            3,
        )
        .unwrap();
        let dilated = QuantumHornSpec::new(
            base.a1().clone(),
            base.a2().clone(),
            base.alpha().dilate(3),
            base.beta().dilate(3),
            1,
        )
        .unwrap();
        let id = UnitaryMatrix::identity(6);
        assert_eq!(
            sample_with_unitaries(&with_d, &id, &id).unwrap().values(),
            sample_with_unitaries(&dilated, &id, &id).unwrap().values()
        );
    }

    #[test]
    fn inclusion_guard_rejects_large_specs() {
        let spec = QuantumHornSpec::new(
            HermitianMatrix::from_diag(&[1.0, 2.0]),
            HermitianMatrix::from_diag(&[1.0, 2.0]),
            seq(&[2.0, 1.0]),
            seq(&[2.0, 1.0]),
            2,
        )
        .unwrap();
        assert_eq!(spec.total_dim(), 8);
        let cloud = qhorn_sample(&spec, 2, RngState::new(25)).unwrap();
        assert!(matches!(
            inclusion_check(&cloud, 1e-9, false),
            Err(QhornError::FeasibilityExceeded { size: 8, limit: 6 })
        ));
    }

    #[test]
    fn adversarial_cloud_fails_with_certificate() {
        let cloud = qhorn_sample(&scalar_spec(), 5, RngState::new(26)).unwrap();
        let mut broken = cloud.clone();
        let top = broken.samples[2].gamma.values()[0] + 0.1;
        let rest: Vec<f64> = broken.samples[2].gamma.values()[1..].to_vec();
        let mut values = vec![top];
        values.extend(rest);
        broken.samples[2].gamma = EigenvalueSequence::new(values).unwrap();
        match inclusion_check(&broken, 1e-9, false).unwrap() {
            InclusionOutcome::NotIncluded { idx, certificate } => {
                assert_eq!(idx, 2);
                assert!(matches!(certificate, HornMembership::TraceViolation { .. }));
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn jsonl_round_trip() {
        let cloud = qhorn_sample(&scalar_spec(), 4, RngState::new(27)).unwrap();
        let mut buf = Vec::new();
        cloud.write_jsonl(&mut buf).unwrap();
        let parsed = parse_cloud_jsonl(std::io::Cursor::new(buf)).unwrap();
        assert_eq!(parsed, cloud.samples);
    }

    #[test]
    fn jsonl_rejects_unsorted_gamma() {
        let line = r#"{"idx":0,"gamma":[1.0,2.0]}"#;
        assert!(parse_cloud_jsonl(std::io::Cursor::new(line)).is_err());
    }

    #[test]
    fn self_microstate_has_zero_defect() {
        let mut rng = RngState::new(28).rng();
        let c1 = crate::linalg::sample_gue(3, &mut rng);
        let c2 = crate::linalg::sample_gue(3, &mut rng);
        let table = moments_of(&c1, &c2, 4).unwrap();
        let defect = microstate_defect(&table, &c1, &c2, 4).unwrap();
        assert_eq!(defect, 0.0);
    }

    #[test]
    fn projector_target_matches_itself() {
        let x1 = HermitianMatrix::from_diag(&[1.0, 0.0]);
        let x2 = HermitianMatrix::from_diag(&[0.0, 1.0]);
        let table = moments_of(&x1, &x2, 3).unwrap();
        assert_eq!(microstate_defect(&table, &x1, &x2, 3).unwrap(), 0.0);
    }

    #[test]
    fn haar_conjugated_targets_differ_only_in_mixed_words() {
        // Same spectra, random relative position: at m = 2 the defect is the
        // mixed-word deviation |tr(A₁A₂) − tr(X₁X₂)|.
        let x1 = HermitianMatrix::from_diag(&[1.0, -1.0, 0.5]);
        let x2 = HermitianMatrix::from_diag(&[2.0, 0.0, -0.5]);
        let table = moments_of(&x1, &x2, 2).unwrap();
        let mut rng = RngState::new(29).rng();
        let u = haar_unitary(3, &mut rng);
        let w = haar_unitary(3, &mut rng);
        let a1 = x1.conjugate_by(&u).unwrap();
        let a2 = x2.conjugate_by(&w).unwrap();
        let defect = microstate_defect(&table, &a1, &a2, 2).unwrap();
        let mixed = (a1.matrix().trace_product(a2.matrix()).unwrap() / 3.0
            - x1.matrix().trace_product(x2.matrix()).unwrap() / 3.0)
            .norm();
        assert!((defect - mixed).abs() < 1e-12);
        assert!(defect > 1e-6, "random relative position should move the mixed moment");
    }

    #[test]
    fn missing_moment_is_structural() {
        let x1 = HermitianMatrix::from_diag(&[1.0]);
        let x2 = HermitianMatrix::from_diag(&[2.0]);
        let table = moments_of(&x1, &x2, 1).unwrap();
        assert!(matches!(
            microstate_defect(&table, &x1, &x2, 2),
            Err(QhornError::MissingMoment { .. })
        ));
    }
}
