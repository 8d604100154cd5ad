//! Free right modules `⊕ e_s A` with per-slot degree shifts.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};
use crate::word::Word;

/// A basis term `e_slot · word`. Terms are ordered by total shifted degree,
/// then slot index, then word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ModuleTerm {
    pub degree: u32,
    pub slot: usize,
    pub word: Word,
}

impl ModuleTerm {
    pub fn new(slot: usize, shift: u32, word: Word) -> ModuleTerm {
        ModuleTerm {
            degree: shift + word.degree(),
            slot,
            word,
        }
    }

    pub fn shift(&self) -> u32 {
        self.degree - self.word.degree()
    }

    pub fn mul_word(&self, right: &Word) -> ModuleTerm {
        ModuleTerm {
            degree: self.degree + right.degree(),
            slot: self.slot,
            word: self.word.concat(right),
        }
    }
}

/// The free module with generators `e_0, …, e_{n-1}` of degrees `shifts`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModule {
    pub shifts: Vec<u32>,
}

impl FreeModule {
    pub fn new(shifts: Vec<u32>) -> FreeModule {
        FreeModule { shifts }
    }

    /// The algebra itself as a rank-one module.
    pub fn algebra() -> FreeModule {
        FreeModule { shifts: vec![0] }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn basis(&self, field: Field, slot: usize) -> FreeModuleElement {
        self.embed(slot, &Polynomial::monomial(field, Word::empty()))
    }

    /// `e_slot · p`.
    pub fn embed(&self, slot: usize, p: &Polynomial) -> FreeModuleElement {
        let shift = self.shifts[slot];
        FreeModuleElement {
            field: p.field(),
            terms: p
                .terms()
                .map(|(w, c)| (ModuleTerm::new(slot, shift, w.clone()), c.clone()))
                .collect(),
        }
    }

    /// `Σ e_i · entries[i]`.
    pub fn from_entries(&self, field: Field, entries: &[Polynomial]) -> FreeModuleElement {
        let mut v = FreeModuleElement::zero(field);
        for (slot, p) in entries.iter().enumerate() {
            v.add_assign(&self.embed(slot, p));
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModuleElement {
    field: Field,
    terms: BTreeMap<ModuleTerm, Scalar>,
}

impl FreeModuleElement {
    pub fn zero(field: Field) -> FreeModuleElement {
        FreeModuleElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(t: ModuleTerm, c: Scalar) -> FreeModuleElement {
        let mut v = FreeModuleElement::zero(c.field());
        v.add_term(t, &c);
        v
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ModuleTerm, &Scalar)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&ModuleTerm, &Scalar)> {
        self.terms.last_key_value()
    }

    pub fn leading_term(&self) -> Option<&ModuleTerm> {
        self.terms.last_key_value().map(|(t, _)| t)
    }

    pub fn pop_leading(&mut self) -> Option<(ModuleTerm, Scalar)> {
        self.terms.pop_last()
    }

    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|t| t.degree)
    }

    pub fn homogeneous_degree(&self) -> Result<u32> {
        let lo = self.terms.first_key_value().map(|(t, _)| t.degree);
        match (lo, self.degree()) {
            (Some(lo), Some(hi)) if lo != hi => Err(Error::Inhomogeneous { first: hi, second: lo }),
            (_, Some(hi)) => Ok(hi),
            _ => Ok(0),
        }
    }

    pub fn add_term(&mut self, t: ModuleTerm, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
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

    pub fn add_assign(&mut self, other: &FreeModuleElement) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c);
        }
    }

    /// `self += c * other * right`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &FreeModuleElement, right: &Word) {
        for (t, d) in &other.terms {
            self.add_term(t.mul_word(right), &(c * d));
        }
    }

    pub fn sub(&self, other: &FreeModuleElement) -> FreeModuleElement {
        let mut r = self.clone();
        r.add_scaled(&-self.field.one(), other, &Word::empty());
        r
    }

    pub fn scale(&self, c: &Scalar) -> FreeModuleElement {
        if c.is_zero() {
            return FreeModuleElement::zero(self.field);
        }
        FreeModuleElement {
            field: self.field,
            terms: self.terms.iter().map(|(t, d)| (t.clone(), c * d)).collect(),
        }
    }

    pub fn mul_word(&self, right: &Word) -> FreeModuleElement {
        FreeModuleElement {
            field: self.field,
            terms: self.terms.iter().map(|(t, c)| (t.mul_word(right), c.clone())).collect(),
        }
    }

    /// `self · p` for a polynomial `p` acting on the right.
    pub fn mul_poly(&self, p: &Polynomial) -> FreeModuleElement {
        let mut r = FreeModuleElement::zero(self.field);
        for (w, c) in p.terms() {
            r.add_scaled(c, self, w);
        }
        r
    }

    pub fn monic(&self) -> FreeModuleElement {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// The polynomial sitting in one slot.
    pub fn component(&self, slot: usize) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            self.terms
                .iter()
                .filter(|(t, _)| t.slot == slot)
                .map(|(t, c)| (t.word.clone(), c.clone())),
        )
    }

    pub fn components(&self, rank: usize) -> Vec<Polynomial> {
        (0..rank).map(|s| self.component(s)).collect()
    }

    /// Highest slot index used plus one.
    pub fn support_rank(&self) -> usize {
        self.terms.keys().map(|t| t.slot + 1).max().unwrap_or(0)
    }

    pub fn map_terms(&self, mut f: impl FnMut(&ModuleTerm) -> Option<ModuleTerm>) -> FreeModuleElement {
        let mut r = FreeModuleElement::zero(self.field);
        for (t, c) in &self.terms {
            if let Some(t2) = f(t) {
                r.add_term(t2, c);
            }
        }
        r
    }
}
