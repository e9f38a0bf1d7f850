use std::collections::BTreeMap;

use num_complex::Complex64;

use super::poly::NCPoly;
use super::word::{cyclic_classes, CyclicClass, Word, WordShape};
use super::WordError;
use crate::chebyshev::{shifted_cheb, ChebKind};

/// Identity of one element of the spanning family: the unit, a shifted
/// first-kind Chebyshev polynomial of a single letter, or a second-kind
/// alternating product indexed by its orbit representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XiLabel {
    Unit,
    ChebT { letter: u8, degree: usize },
    UProduct { representative: Word },
}

impl XiLabel {
    pub fn degree(&self) -> usize {
        match self {
            XiLabel::Unit => 0,
            XiLabel::ChebT { degree, .. } => *degree,
            XiLabel::UProduct { representative } => representative.degree(),
        }
    }

    fn sort_key(&self) -> (usize, u8, Vec<u8>) {
        match self {
            XiLabel::Unit => (0, 0, vec![]),
            XiLabel::ChebT { letter, degree } => (*degree, 0, vec![*letter]),
            XiLabel::UProduct { representative } => (representative.degree(), 1, representative.letters().to_vec()),
        }
    }
}

impl Ord for XiLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for XiLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for XiLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            XiLabel::Unit => write!(f, "1"),
            XiLabel::ChebT { letter, degree } => write!(f, "T~{degree}(x{letter})"),
            XiLabel::UProduct { representative } => write!(f, "U~[{representative}]"),
        }
    }
}

/// One basis element: its label and its expansion as words.
#[derive(Debug, Clone, PartialEq)]
pub struct XiElement {
    pub label: XiLabel,
    pub poly: NCPoly,
}

/// The element of the spanning family attached to one orbit: `T̃_a(x_i)` for
/// the singleton orbit `{x_i^a}`, otherwise the second-kind block product of
/// the orbit's representative.
pub fn xi_element_for_class(class: &CyclicClass, u: f64, v: f64) -> Result<XiElement, WordError> {
    if !(u < v) {
        return Err(WordError::InvalidInterval { lo: u, hi: v });
    }
    match class.shape()? {
        WordShape::Power { letter, exponent } => {
            let p = shifted_cheb(ChebKind::First, exponent, u, v).expect("interval checked");
            Ok(XiElement {
                label: XiLabel::ChebT { letter, degree: exponent },
                poly: NCPoly::from_univariate(&p, letter),
            })
        }
        WordShape::Blocks(sform) => {
            let mut poly = NCPoly::one();
            for &(letter, exponent) in sform.blocks() {
                let p = shifted_cheb(ChebKind::Second, exponent, u, v).expect("interval checked");
                poly = poly.mul(&NCPoly::from_univariate(&p, letter));
            }
            Ok(XiElement { label: XiLabel::UProduct { representative: class.representative().clone() }, poly })
        }
    }
}

/// The spanning family up to `max_degree` over `k` letters: the unit, all
/// `T̃_a(x_i)` with `a ≤ max_degree`, and one second-kind block product per
/// non-singleton orbit of degree `≤ max_degree`. Ordered by degree, with the
/// single-letter elements before the products.
pub fn xi_basis(k: u8, max_degree: usize, u: f64, v: f64) -> Result<Vec<XiElement>, WordError> {
    if !(u < v) {
        return Err(WordError::InvalidInterval { lo: u, hi: v });
    }
    assert!(k >= 1 && max_degree >= 1, "require k ≥ 1, max_degree ≥ 1");
    let mut out = vec![XiElement { label: XiLabel::Unit, poly: NCPoly::one() }];
    for degree in 1..=max_degree {
        for class in cyclic_classes(k, degree) {
            out.push(xi_element_for_class(&class, u, v)?);
        }
    }
    out.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(out)
}

/// Split `y = i_part + Σ c_ξ·ξ` with `i_part` in the commutator subspace.
///
/// Working down from the top degree, each orbit's coefficient sum is matched
/// by the unique family element whose top-degree word lies in that orbit
/// (the system is triangular in the graded word order), and what remains has
/// zero sum in every orbit.
pub fn decompose_ij(
    y: &NCPoly,
    u: f64,
    v: f64,
) -> Result<(NCPoly, BTreeMap<XiLabel, Complex64>), WordError> {
    if !(u < v) {
        return Err(WordError::InvalidInterval { lo: u, hi: v });
    }
    let mut residual = y.clone();
    let mut coeffs = BTreeMap::new();
    let zero = Complex64::new(0.0, 0.0);

    for degree in (1..=y.degree()).rev() {
        for class in residual.orbits_at_degree(degree) {
            let orbit_sum: Complex64 = class.members().iter().map(|w| residual.coeff(w)).sum();
            if orbit_sum == zero {
                continue;
            }
            let xi = xi_element_for_class(&class, u, v)?;
            // The only degree-`degree` word of `xi` is the representative.
            let top = xi.poly.coeff(class.representative());
            debug_assert!(top.norm() > 0.0);
            let c = orbit_sum / top;
            residual = residual.sub(&xi.poly.scale(c));
            coeffs.insert(xi.label, c);
        }
    }

    let constant = residual.coeff(&Word::empty());
    if constant != zero {
        residual.add_term(Word::empty(), -constant);
        coeffs.insert(XiLabel::Unit, constant);
    }
    Ok((residual, coeffs))
}
