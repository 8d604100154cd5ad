//! Noncommutative polynomials: finite linear combinations of words.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::word::Word;

/// A linear combination of words with nonzero coefficients, ordered by the
/// monomial order. The leading term is the largest word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field) -> Polynomial {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: Field, word: Word) -> Polynomial {
        Polynomial::term(word, field.one())
    }

    pub fn term(word: Word, coeff: Scalar) -> Polynomial {
        let mut p = Polynomial::zero(coeff.field());
        if !coeff.is_zero() {
            p.terms.insert(word, coeff);
        }
        p
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Polynomial {
        let mut p = Polynomial::zero(field);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl DoubleEndedIterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.last_key_value()
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.last_key_value().map(|(w, _)| w)
    }

    pub fn pop_leading(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    /// Degree of the leading word; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.leading_word().map(Word::degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.first_key_value().map(|(w, _)| w.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    /// The common degree of all words, or an error naming two distinct
    /// degrees. Zero is homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        match (self.min_degree(), self.degree()) {
            (Some(lo), Some(hi)) if lo != hi => Err(Error::Inhomogeneous { first: hi, second: lo }),
            (_, Some(hi)) => Ok(hi),
            _ => Ok(0),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * left * other * right`.
    pub fn add_scaled_product(&mut self, c: &Scalar, left: &Word, other: &Polynomial, right: &Word) {
        for (w, d) in &other.terms {
            self.add_term(Word::concat3(left, w, right), &(c * d));
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn sub_assign(&mut self, other: &Polynomial) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), &-c);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r.sub_assign(other);
        r
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field);
        }
        Polynomial {
            field: self.field,
            terms: self.terms.iter().map(|(w, d)| (w.clone(), c * d)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut r = Polynomial::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                r.add_term(u.concat(v), &(a * b));
            }
        }
        r
    }

    pub fn mul_words(&self, left: &Word, right: &Word) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (Word::concat3(left, w, right), c.clone()))
                .collect(),
        }
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// The homogeneous component of the given degree.
    pub fn component(&self, degree: u32) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const WEIGHTS: [u32; 2] = [1, 1];

    fn poly_strategy(degree: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u16..2, degree), -3i64..=3), 0..5).prop_map(|terms| {
            Polynomial::from_terms(
                Field::Rational,
                terms
                    .into_iter()
                    .map(|(l, c)| (Word::from_letters(l, &WEIGHTS), Field::Rational.from_i64(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn multiplication_is_associative(
            a in poly_strategy(2), b in poly_strategy(1), c in poly_strategy(2)
        ) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn multiplication_distributes(
            a in poly_strategy(2), b in poly_strategy(3), c in poly_strategy(3)
        ) {
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(b.add(&c).mul(&a), b.mul(&a).add(&c.mul(&a)));
        }

        #[test]
        fn homogeneous_products_stay_homogeneous(a in poly_strategy(2), b in poly_strategy(3)) {
            let p = a.mul(&b);
            prop_assert!(p.is_homogeneous());
            if !p.is_zero() {
                prop_assert_eq!(p.degree(), Some(5));
            }
        }
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = Field::Rational;
        let x = Polynomial::monomial(f, Word::letter(1, &WEIGHTS));
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn inhomogeneous_reports_degrees() {
        let f = Field::Rational;
        let mut p = Polynomial::monomial(f, Word::letter(1, &WEIGHTS));
        p.add_term(Word::from_letters(vec![0, 0], &WEIGHTS), &f.one());
        assert!(matches!(
            p.homogeneous_degree(),
            Err(Error::Inhomogeneous { first: 2, second: 1 })
        ));
    }
}
