use num_complex::Complex64;

use super::poly::NCPoly;
use super::word::{cyclic_classes, Word};
use super::{decompose_ij, WordError};
use crate::linalg::{eigenvalues, sample_gue, shifted_gue, CMatrix, HermitianMatrix};
use crate::rng::RngState;

/// Threshold on `|Tr ∘ ev(y)|` for a pair to count as separating.
const SEPARATION_THRESHOLD: f64 = 1e-8;
/// Relative eigenvalue cutoff for the numerical rank.
const RANK_TOL: f64 = 1e-10;

/// Evaluate `y` on a tuple of Hermitian matrices and take the trace
/// (normalized trace if `normalized`).
pub fn trace_eval(y: &NCPoly, mats: &[HermitianMatrix], normalized: bool) -> Result<Complex64, WordError> {
    let dim = match mats.first() {
        Some(m) => m.dim(),
        None => {
            return Err(WordError::LetterOutOfRange { letter: y.max_letter().max(1), provided: 0 });
        }
    };
    for m in mats {
        if m.dim() != dim {
            return Err(WordError::DimensionMismatch { left: dim, right: m.dim() });
        }
    }
    if y.max_letter() as usize > mats.len() {
        return Err(WordError::LetterOutOfRange { letter: y.max_letter(), provided: mats.len() });
    }

    let mut acc = Complex64::new(0.0, 0.0);
    for (word, &coeff) in y.terms() {
        acc += coeff * word_trace(word, mats, dim);
    }
    if normalized {
        acc /= dim as f64;
    }
    Ok(acc)
}

fn word_trace(word: &Word, mats: &[HermitianMatrix], dim: usize) -> Complex64 {
    let letters = word.letters();
    match letters.len() {
        0 => Complex64::new(dim as f64, 0.0),
        1 => mats[letters[0] as usize - 1].matrix().trace(),
        _ => {
            let mut product: Option<CMatrix> = None;
            for &l in &letters[..letters.len() - 1] {
                let m = mats[l as usize - 1].matrix();
                product = Some(match product {
                    None => m.clone(),
                    Some(p) => p.matmul(m).expect("dimension checked"),
                });
            }
            let last = mats[letters[letters.len() - 1] as usize - 1].matrix();
            product.expect("length ≥ 2").trace_product(last).expect("dimension checked")
        }
    }
}

/// Numerical rank, and kernel dimension, of the map sending the span of the
/// degree-`p` cyclic classes (two letters) to its trace values on random
/// Hermitian pairs of dimension `n_dim`.
///
/// The rank of the sampled value matrix lower-bounds the symbolic rank and is
/// certified by stabilization: rows are added in batches of five until the
/// rank stops changing.
pub fn kernel_rank(n_dim: usize, p: usize, trials: usize, rng: RngState) -> Result<(usize, usize), WordError> {
    assert!(n_dim >= 1 && p >= 1, "require N ≥ 1, p ≥ 1");
    let classes = cyclic_classes(2, p);
    if trials < classes.len() {
        return Err(WordError::InsufficientTrials { trials, classes: classes.len() });
    }
    let reps: Vec<Word> = classes.iter().map(|c| c.representative().clone()).collect();

    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut draw_index = 0u64;
    let add_rows = |rows: &mut Vec<Vec<Complex64>>, count: usize, draw_index: &mut u64| {
        for _ in 0..count {
            let mut sub = rng.substream(*draw_index).rng();
            *draw_index += 1;
            let a = sample_gue(n_dim, &mut sub);
            let b = sample_gue(n_dim, &mut sub);
            let mats = [a, b];
            let mut row: Vec<Complex64> = reps.iter().map(|w| word_trace(w, &mats, n_dim)).collect();
            let norm: f64 = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.0 {
                for z in &mut row {
                    *z /= norm;
                }
            }
            rows.push(row);
        }
    };

    add_rows(&mut rows, trials, &mut draw_index);
    let mut rank = numerical_rank(&rows, reps.len());
    loop {
        add_rows(&mut rows, 5, &mut draw_index);
        let next = numerical_rank(&rows, reps.len());
        if next == rank {
            break;
        }
        rank = next;
    }
    Ok((rank, reps.len() - rank))
}

/// Rank via the spectrum of the Gram matrix `V*V`.
fn numerical_rank(rows: &[Vec<Complex64>], cols: usize) -> usize {
    let mut gram = CMatrix::zeros(cols);
    for row in rows {
        for i in 0..cols {
            for j in 0..cols {
                let inc = row[i].conj() * row[j];
                gram[(i, j)] += inc;
            }
        }
    }
    let gram = HermitianMatrix::from_matrix_unchecked(gram);
    let spectrum = eigenvalues(&gram).expect("small Gram matrix converges");
    let lambda_max = spectrum.values().first().copied().unwrap_or(0.0);
    if lambda_max <= 0.0 {
        return 0;
    }
    spectrum.values().iter().filter(|&&l| l > RANK_TOL * lambda_max).count()
}

/// Outcome of the randomized search for a separating pair.
#[derive(Debug, Clone)]
pub enum SeparationResult {
    Found {
        a1: HermitianMatrix,
        a2: HermitianMatrix,
        dim: usize,
        trace_value: Complex64,
        draws: usize,
    },
    NotFound {
        draws: usize,
    },
}

impl SeparationResult {
    pub fn is_found(&self) -> bool {
        matches!(self, SeparationResult::Found { .. })
    }
}

/// Search for Hermitian `a_1, a_2` with spectra in `[c, d]` and
/// `|Tr ∘ ev_{a1,a2}(y)| > 1e-8`.
///
/// Elements of the commutator subspace are rejected up front (every trace
/// evaluation vanishes on them, so separation is impossible). The search
/// draws shifted GUE pairs supported on the inner subinterval
/// `[c + 0.1(d−c), d − 0.1(d−c)]` for each dimension up to `n_max`,
/// discarding draws whose spectrum leaks outside `[c, d]`, and gives up after
/// `budget` draws; not finding a pair is not a disproof.
pub fn find_separating_pair(
    y: &NCPoly,
    c: f64,
    d: f64,
    n_max: usize,
    budget: usize,
    rng: RngState,
) -> Result<SeparationResult, WordError> {
    if !(c < d) {
        return Err(WordError::InvalidInterval { lo: c, hi: d });
    }
    assert!(n_max >= 1 && budget >= 1, "require N_max ≥ 1, budget ≥ 1");
    let margin = 0.1 * (d - c);
    let (u, v) = (c + margin, d - margin);

    let (_, complement_coeffs) = decompose_ij(y, u, v)?;
    if complement_coeffs.values().all(|cv| cv.norm() <= 1e-12 * (1.0 + y.max_coeff_norm())) {
        return Err(WordError::CommutatorElement);
    }

    let mut gen = rng.rng();
    let per_dim = budget.div_ceil(n_max);
    let mut draws = 0usize;
    for n in 1..=n_max {
        for _ in 0..per_dim {
            if draws >= budget {
                return Ok(SeparationResult::NotFound { draws });
            }
            draws += 1;
            let a1 = shifted_gue(n, u, v, &mut gen)?;
            let a2 = shifted_gue(n, u, v, &mut gen)?;
            if !spectrum_inside(&a1, c, d)? || !spectrum_inside(&a2, c, d)? {
                continue;
            }
            let value = trace_eval(y, &[a1.clone(), a2.clone()], false)?;
            if value.norm() > SEPARATION_THRESHOLD {
                return Ok(SeparationResult::Found { a1, a2, dim: n, trace_value: value, draws });
            }
        }
    }
    Ok(SeparationResult::NotFound { draws })
}

fn spectrum_inside(a: &HermitianMatrix, lo: f64, hi: f64) -> Result<bool, WordError> {
    let ev = eigenvalues(a)?;
    let max = ev.values().first().copied().unwrap_or(0.0);
    let min = ev.values().last().copied().unwrap_or(0.0);
    Ok(min >= lo && max <= hi)
}
