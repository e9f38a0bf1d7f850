use super::WordError;

/// Word in noncommuting letters `1..=k`; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self, WordError> {
        if letters.contains(&0) {
            return Err(WordError::ZeroLetter);
        }
        Ok(Self { letters })
    }

    pub fn empty() -> Self {
        Self { letters: vec![] }
    }

    pub fn letter(l: u8) -> Self {
        debug_assert!(l >= 1);
        Self { letters: vec![l] }
    }

    /// `x_l^e`.
    pub fn power(l: u8, e: usize) -> Self {
        debug_assert!(l >= 1);
        Self { letters: vec![l; e] }
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn max_letter(&self) -> u8 {
        self.letters.iter().copied().max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Rotate one position: `x_{i_1}…x_{i_n} ↦ x_{i_2}…x_{i_n}x_{i_1}`.
    pub fn rotate(&self) -> Word {
        if self.letters.len() < 2 {
            return self.clone();
        }
        let mut letters = self.letters[1..].to_vec();
        letters.push(self.letters[0]);
        Word { letters }
    }

    /// Lexicographically least rotation.
    pub fn canonical_rotation(&self) -> Word {
        let mut best = self.clone();
        let mut cur = self.clone();
        for _ in 1..self.degree() {
            cur = cur.rotate();
            if cur.letters < best.letters {
                best = cur.clone();
            }
        }
        best
    }
}

/// Graded lexicographic order: degree first, then letters.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if run == 1 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{l}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Rotation orbit, identified by its lexicographically least representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicClass {
    representative: Word,
    size: usize,
}

impl CyclicClass {
    pub fn of(word: &Word) -> Self {
        let representative = word.canonical_rotation();
        let mut size = 1;
        let mut cur = word.rotate();
        while &cur != word {
            size += 1;
            cur = cur.rotate();
        }
        Self { representative, size }
    }

    pub fn representative(&self) -> &Word {
        &self.representative
    }

    /// Orbit cardinality; always divides the degree.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn degree(&self) -> usize {
        self.representative.degree()
    }

    /// All distinct rotations.
    pub fn members(&self) -> Vec<Word> {
        let mut out = Vec::with_capacity(self.size);
        let mut cur = self.representative.clone();
        for _ in 0..self.size {
            out.push(cur.clone());
            cur = cur.rotate();
        }
        out
    }

    /// Block form of the representative: singleton orbits are pure powers,
    /// everything else parses into an alternating block word.
    pub fn shape(&self) -> Result<WordShape, WordError> {
        if self.representative.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let letters = self.representative.letters();
        let first = letters[0];
        if letters.iter().all(|&l| l == first) {
            return Ok(WordShape::Power { letter: first, exponent: letters.len() });
        }
        Ok(WordShape::Blocks(SForm::parse(letters)))
    }
}

impl Ord for CyclicClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.representative.cmp(&other.representative)
    }
}

impl PartialOrd for CyclicClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical form of one orbit representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordShape {
    Power { letter: u8, exponent: usize },
    Blocks(SForm),
}

/// Alternating block word `x_{l_1}^{e_1} x_{l_2}^{e_2} ⋯` with adjacent
/// letters distinct, also cyclically (first block letter ≠ last). For two
/// letters this is exactly the alternating form starting with an `x_1` block
/// and ending with an `x_2` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SForm {
    blocks: Vec<(u8, usize)>,
}

impl SForm {
    fn parse(letters: &[u8]) -> Self {
        let mut blocks: Vec<(u8, usize)> = Vec::new();
        for &l in letters {
            match blocks.last_mut() {
                Some((bl, e)) if *bl == l => *e += 1,
                _ => blocks.push((l, 1)),
            }
        }
        debug_assert!(blocks.len() >= 2);
        debug_assert!(blocks.first().map(|b| b.0) != blocks.last().map(|b| b.0));
        Self { blocks }
    }

    pub fn blocks(&self) -> &[(u8, usize)] {
        &self.blocks
    }

    pub fn degree(&self) -> usize {
        self.blocks.iter().map(|&(_, e)| e).sum()
    }

    /// The exponent pairs `(a_i, b_i)` for the two-letter case.
    pub fn exponent_pairs(&self) -> Option<Vec<(usize, usize)>> {
        if self.blocks.len() % 2 != 0 {
            return None;
        }
        let mut out = Vec::with_capacity(self.blocks.len() / 2);
        for pair in self.blocks.chunks(2) {
            if pair[0].0 != 1 || pair[1].0 != 2 {
                return None;
            }
            out.push((pair[0].1, pair[1].1));
        }
        Some(out)
    }

    pub fn word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.degree());
        for &(l, e) in &self.blocks {
            letters.extend(std::iter::repeat(l).take(e));
        }
        Word::new(letters).expect("letters are valid")
    }
}

/// One `CyclicClass` per rotation orbit of degree-`p` words over `k` letters,
/// sorted by representative.
pub fn cyclic_classes(k: u8, p: usize) -> Vec<CyclicClass> {
    assert!(k >= 1 && p >= 1, "require k ≥ 1, p ≥ 1");
    let mut reps = std::collections::BTreeSet::new();
    let mut word = vec![1u8; p];
    loop {
        let w = Word { letters: word.clone() };
        reps.insert(w.canonical_rotation());
        // Odometer over {1..k}^p.
        let mut pos = p;
        loop {
            if pos == 0 {
                return reps.iter().map(CyclicClass::of).collect();
            }
            pos -= 1;
            if word[pos] < k {
                word[pos] += 1;
                for w in word.iter_mut().skip(pos + 1) {
                    *w = 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[u8]) -> Word {
        Word::new(letters.to_vec()).unwrap()
    }

    #[test]
    fn class_counts_small_degrees() {
        assert_eq!(cyclic_classes(2, 1).len(), 2);
        assert_eq!(cyclic_classes(2, 3).len(), 4);
        assert_eq!(cyclic_classes(2, 4).len(), 6);
    }

    #[test]
    fn degree_three_representatives() {
        let reps: Vec<String> = cyclic_classes(2, 3).iter().map(|c| c.representative().to_string()).collect();
        assert_eq!(reps, vec!["x1^3", "x1^2x2", "x1x2^2", "x2^3"]);
    }

    #[test]
    fn orbit_partition_covers_all_words() {
        // Σ over classes of orbit size = k^p, and size | p.
        for p in 1..=8 {
            let classes = cyclic_classes(2, p);
            let total: usize = classes.iter().map(|c| c.size()).sum();
            assert_eq!(total, 1usize << p, "p={p}");
            for c in &classes {
                assert_eq!(p % c.size(), 0, "orbit size {} of {}", c.size(), c.representative());
            }
        }
        let total3: usize = cyclic_classes(3, 4).iter().map(|c| c.size()).sum();
        assert_eq!(total3, 81);
    }

    #[test]
    fn canonical_rotation_is_minimal() {
        let c = CyclicClass::of(&w(&[2, 1]));
        assert_eq!(c.representative(), &w(&[1, 2]));
        assert_eq!(c.size(), 2);
    }

    #[test]
    fn shape_of_power_orbit() {
        let c = CyclicClass::of(&w(&[1, 1, 1]));
        assert_eq!(c.size(), 1);
        assert_eq!(c.shape().unwrap(), WordShape::Power { letter: 1, exponent: 3 });
    }

    #[test]
    fn shape_rotates_into_leading_block_form() {
        // x2x1x2 rotates to x1x2².
        let c = CyclicClass::of(&w(&[2, 1, 2]));
        match c.shape().unwrap() {
            WordShape::Blocks(s) => {
                assert_eq!(s.exponent_pairs().unwrap(), vec![(1, 2)]);
                assert_eq!(s.word(), w(&[1, 2, 2]));
            }
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn shape_of_two_pair_word() {
        let c = CyclicClass::of(&w(&[1, 2, 1, 2]));
        match c.shape().unwrap() {
            WordShape::Blocks(s) => assert_eq!(s.exponent_pairs().unwrap(), vec![(1, 1), (1, 1)]),
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn empty_word_has_no_shape() {
        let c = CyclicClass::of(&Word::empty());
        assert_eq!(c.shape(), Err(WordError::EmptyWord));
    }

    #[test]
    fn block_form_never_ends_with_first_letter() {
        for p in 2..=7 {
            for class in cyclic_classes(2, p) {
                if let WordShape::Blocks(s) = class.shape().unwrap() {
                    let blocks = s.blocks();
                    assert_eq!(blocks.first().unwrap().0, 1);
                    assert_eq!(blocks.last().unwrap().0, 2);
                    assert!(s.exponent_pairs().is_some());
                }
            }
        }
    }

    #[test]
    fn zero_letter_rejected() {
        assert_eq!(Word::new(vec![1, 0, 2]), Err(WordError::ZeroLetter));
    }
}
