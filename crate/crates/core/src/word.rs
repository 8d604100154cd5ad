//! Words in the free monoid on weighted generators and the weighted
//! degree-lexicographic order.
//!
//! Generators are identified by their rank in the order: letter `0` is the
//! smallest generator. With that convention the derived comparison on
//! `(degree, letters)` *is* the monomial order, so `Word` implements `Ord`
//! directly and polynomials can be stored in ordered maps.

use std::cmp::Ordering;

use crate::error::{Error, Result};

pub type Letter = u16;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    degree: u32,
    letters: Vec<Letter>,
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>, weights: &[u32]) -> Word {
        let degree = letters.iter().map(|&l| weights[l as usize]).sum();
        Word { degree, letters }
    }

    pub fn letter(l: Letter, weights: &[u32]) -> Word {
        Word {
            degree: weights[l as usize],
            letters: vec![l],
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word {
            degree: self.degree + other.degree,
            letters,
        }
    }

    pub fn concat3(left: &Word, mid: &Word, right: &Word) -> Word {
        let mut letters = Vec::with_capacity(left.len() + mid.len() + right.len());
        letters.extend_from_slice(&left.letters);
        letters.extend_from_slice(&mid.letters);
        letters.extend_from_slice(&right.letters);
        Word {
            degree: left.degree + mid.degree + right.degree,
            letters,
        }
    }

    pub fn push(&mut self, l: Letter, weights: &[u32]) {
        self.letters.push(l);
        self.degree += weights[l as usize];
    }

    pub fn subword(&self, start: usize, end: usize, weights: &[u32]) -> Word {
        Word::from_letters(self.letters[start..end].to_vec(), weights)
    }

    pub fn prefix(&self, len: usize, weights: &[u32]) -> Word {
        self.subword(0, len, weights)
    }

    pub fn suffix_from(&self, start: usize, weights: &[u32]) -> Word {
        self.subword(start, self.len(), weights)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.letters.starts_with(&prefix.letters)
    }

    /// Leftmost occurrence of `pattern` as a factor.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        find_factor(&self.letters, &pattern.letters)
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        self.find(pattern).is_some()
    }

    /// Lengths `k` with `1 <= k < min(|self|, |other|)` such that the last `k`
    /// letters of `self` equal the first `k` letters of `other`.
    pub fn proper_overlaps(&self, other: &Word) -> Vec<usize> {
        let max = self.len().min(other.len());
        (1..max)
            .filter(|&k| self.letters[self.len() - k..] == other.letters[..k])
            .collect()
    }
}

pub(crate) fn find_factor(text: &[Letter], pattern: &[Letter]) -> Option<usize> {
    if pattern.is_empty() {
        return Some(0);
    }
    if pattern.len() > text.len() {
        return None;
    }
    text.windows(pattern.len()).position(|w| w == pattern)
}

/// Weighted degree-lexicographic order: compare weighted degree first, then
/// letters left to right by generator precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    /// Generator weights indexed by rank (rank 0 is the smallest generator).
    pub weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn new(weights: Vec<u32>) -> MonomialOrder {
        MonomialOrder { weights }
    }

    pub fn generator_count(&self) -> usize {
        self.weights.len()
    }

    fn check(&self, w: &Word) -> Result<()> {
        let count = self.weights.len();
        if let Some(&l) = w.letters.iter().find(|&&l| l as usize >= count) {
            return Err(Error::MismatchedGenerators {
                index: l as usize,
                count,
            });
        }
        let expected: u32 = w.letters.iter().map(|&l| self.weights[l as usize]).sum();
        if expected != w.degree {
            return Err(Error::InvalidArgument(format!(
                "word degree {} does not match its letters ({expected})",
                w.degree
            )));
        }
        Ok(())
    }
}

pub fn compare_words(u: &Word, v: &Word, order: &MonomialOrder) -> Result<Ordering> {
    order.check(u)?;
    order.check(v)?;
    Ok(u.cmp(v))
}
