use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::{CyclicClass, Word};

use crate::chebyshev::Polynomial;

/// Coefficient magnitudes at or below `1e-12·scale` count as zero.
const COEFF_ZERO_TOL: f64 = 1e-12;

/// Finite linear combination of words; no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Complex64>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), Complex64::new(1.0, 0.0))
    }

    pub fn monomial(word: Word, coeff: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn letter(l: u8) -> Self {
        Self::monomial(Word::letter(l), Complex64::new(1.0, 0.0))
    }

    /// `p(x_letter)` as an element of the free algebra.
    pub fn from_univariate(p: &Polynomial, letter: u8) -> Self {
        let mut out = Self::zero();
        for (k, &c) in p.coeffs().iter().enumerate() {
            out.add_term(Word::power(letter, k), Complex64::new(c, 0.0));
        }
        out
    }

    pub fn add_term(&mut self, word: Word, coeff: Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        if coeff == zero {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = *e.get() + coeff;
                if v == zero {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> Complex64 {
        self.terms.get(word).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest word degree present (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    pub fn max_letter(&self) -> u8 {
        self.terms.keys().map(Word::max_letter).max().unwrap_or(0)
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in other.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        if c == Complex64::new(0.0, 0.0) {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, &v)| (w.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, &ca) in self.terms() {
            for (wb, &cb) in other.terms() {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Rotate every word one position (coefficients unchanged).
    pub fn rotate_words(&self) -> Self {
        let mut out = Self::zero();
        for (w, &c) in self.terms() {
            out.add_term(w.rotate(), c);
        }
        out
    }

    /// Drop coefficients with `|c| ≤ tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .map(|(w, &c)| (w.clone(), c))
                .collect(),
        }
    }

    /// Sum of coefficients within each rotation orbit, keyed by the orbit
    /// representative.
    pub fn orbit_sums(&self) -> BTreeMap<Word, Complex64> {
        let mut sums: BTreeMap<Word, Complex64> = BTreeMap::new();
        for (w, &c) in self.terms() {
            *sums.entry(w.canonical_rotation()).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        sums
    }

    /// Words of exactly this degree, grouped into orbits.
    pub fn orbits_at_degree(&self, degree: usize) -> Vec<CyclicClass> {
        let mut reps = std::collections::BTreeSet::new();
        for w in self.terms.keys().filter(|w| w.degree() == degree) {
            reps.insert(w.canonical_rotation());
        }
        reps.iter().map(CyclicClass::of).collect()
    }
}

/// Membership in the commutator subspace: the coefficient sum over every
/// rotation orbit vanishes. Exact for integer coefficients; floating input is
/// compared against `1e-12·(1 + max |coeff|)`.
pub fn is_commutator_element(y: &NCPoly) -> bool {
    let tol = COEFF_ZERO_TOL * (1.0 + y.max_coeff_norm());
    y.orbit_sums().values().all(|s| s.norm() <= tol)
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    word: Vec<u8>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct NCPolyRepr {
    terms: Vec<TermRepr>,
}

/// Wire format: `{"terms":[{"word":[1,2,1],"re":…,"im":…}]}`, letters 1-based.
impl Serialize for NCPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = NCPolyRepr {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermRepr { word: w.letters().to_vec(), re: c.re, im: c.im })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = NCPolyRepr::deserialize(deserializer)?;
        let mut out = NCPoly::zero();
        for term in repr.terms {
            if !term.re.is_finite() || !term.im.is_finite() {
                return Err(D::Error::custom("non-finite coefficient"));
            }
            let word = Word::new(term.word).map_err(D::Error::custom)?;
            out.add_term(word, Complex64::new(term.re, term.im));
        }
        Ok(out)
    }
}
