//! Degree-truncated noncommutative Gröbner bases.
//!
//! Two-sided bases of relation ideals are completed degree by degree: every
//! obstruction (overlap of two leading words) is resolved in the degree of
//! its result, so the part of the basis up to the bound does not depend on
//! queue order. One-sided bases of submodules of free modules live in
//! [`right`].

pub mod right;

use std::collections::{BTreeMap, HashMap};

use crate::automaton::ForbiddenAutomaton;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::presentation::Presentation;
use crate::scalar::{Field, Scalar};
use crate::word::{Letter, Word};

pub use right::{complete_right, complete_right_tracked, minimize_generators, ModuleBasis, TrackedCompletion};

/// Which basis element performed a rewrite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rewriter {
    /// Element of the two-sided basis of relations.
    Relation(usize),
    /// Element of a one-sided (right module) basis.
    Submodule(usize),
}

/// One rewrite `p -= coeff · left · g · right` (for module elements the slot
/// of the rewritten term is recorded and `left` is the word inside that slot
/// preceding the relation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub rewriter: Rewriter,
    pub slot: Option<usize>,
    pub left: Word,
    pub right: Word,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Apply the recorded rewrites to `input`.
    pub fn replay(&self, input: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
        let mut p = input.clone();
        for s in &self.steps {
            let Rewriter::Relation(i) = s.rewriter else {
                panic!("module step in a two-sided trace");
            };
            p.add_scaled_product(&-&s.coeff, &s.left, &gb.elements[i], &s.right);
        }
        p
    }
}

/// Matches leading words as factors.
#[derive(Clone, Debug, Default)]
struct LeadingWordTrie {
    nodes: Vec<HashMap<Letter, usize>>,
    terminal: Vec<Option<usize>>,
}

impl LeadingWordTrie {
    fn new() -> Self {
        LeadingWordTrie {
            nodes: vec![HashMap::new()],
            terminal: vec![None],
        }
    }

    fn insert(&mut self, w: &Word, idx: usize) {
        let mut s = 0;
        for &l in w.letters() {
            s = match self.nodes[s].get(&l) {
                Some(&t) => t,
                None => {
                    self.nodes.push(HashMap::new());
                    self.terminal.push(None);
                    let t = self.nodes.len() - 1;
                    self.nodes[s].insert(l, t);
                    t
                }
            };
        }
        if self.terminal[s].is_none() {
            self.terminal[s] = Some(idx);
        }
    }

    /// The occurrence used for rewriting: smallest element index, then
    /// leftmost position. Returns `(index, start, end)`.
    fn find(&self, w: &[Letter]) -> Option<(usize, usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for start in 0..w.len() {
            let mut s = 0;
            for (i, l) in w[start..].iter().enumerate() {
                match self.nodes[s].get(l) {
                    Some(&t) => s = t,
                    None => break,
                }
                if let Some(idx) = self.terminal[s] {
                    if best.is_none_or(|(b, _, _)| idx < b) {
                        best = Some((idx, start, start + i + 1));
                    }
                }
            }
        }
        best
    }
}

/// A two-sided Gröbner basis of a relation ideal, valid through
/// `soundness_degree`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    field: Field,
    weights: Vec<u32>,
    elements: Vec<Polynomial>,
    soundness_degree: u32,
    complete: bool,
    trie: LeadingWordTrie,
    automaton: ForbiddenAutomaton,
}

impl GroebnerBasis {
    /// Wrap monic elements with distinct leading words. No completeness
    /// check is performed; see [`GroebnerBasis::verify`].
    pub fn from_elements(
        field: Field,
        weights: Vec<u32>,
        elements: Vec<Polynomial>,
        soundness_degree: u32,
        complete: bool,
    ) -> GroebnerBasis {
        let mut trie = LeadingWordTrie::new();
        let mut lws = Vec::new();
        for (i, e) in elements.iter().enumerate() {
            if let Some(lw) = e.leading_word() {
                trie.insert(lw, i);
                lws.push(lw.clone());
            }
        }
        let automaton = ForbiddenAutomaton::new(&weights, &lws);
        GroebnerBasis {
            field,
            weights,
            elements,
            soundness_degree,
            complete,
            trie,
            automaton,
        }
    }

    /// The same basis with a higher soundness degree. Only complete bases can
    /// be extended; an incomplete one says nothing past its bound.
    pub fn extended(&self, bound: u32) -> Option<GroebnerBasis> {
        if bound <= self.soundness_degree {
            return Some(self.clone());
        }
        if !self.complete {
            return None;
        }
        let mut g = self.clone();
        g.soundness_degree = bound;
        Some(g)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn soundness_degree(&self) -> u32 {
        self.soundness_degree
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn leading_words(&self) -> Vec<Word> {
        self.elements.iter().filter_map(|e| e.leading_word().cloned()).collect()
    }

    pub fn automaton(&self) -> &ForbiddenAutomaton {
        &self.automaton
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.automaton.is_normal(w)
    }

    /// Normal words of one degree, ascending: a basis of `A_degree`.
    pub fn normal_words(&self, degree: u32) -> Result<Vec<Word>> {
        self.check(degree)?;
        Ok(self.automaton.words_of_degree(degree))
    }

    fn check(&self, degree: u32) -> Result<()> {
        if degree > self.soundness_degree {
            return Err(Error::UnsoundBound {
                degree,
                bound: self.soundness_degree,
            });
        }
        Ok(())
    }

    /// Normal form with the rewrite trace. The largest reducible word is
    /// rewritten first, by the first basis element (in stored order) that
    /// occurs in it, at its leftmost occurrence.
    pub fn normal_form(&self, p: &Polynomial) -> Result<(Polynomial, ReductionTrace)> {
        if let Some(d) = p.degree() {
            self.check(d)?;
        }
        let mut trace = ReductionTrace::default();
        let r = self.reduce_inner(p.clone(), Some(&mut trace));
        Ok((r, trace))
    }

    /// Normal form without a trace.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        if let Some(d) = p.degree() {
            self.check(d)?;
        }
        Ok(self.reduce_inner(p.clone(), None))
    }

    pub(crate) fn reduce_unchecked(&self, p: Polynomial) -> Polynomial {
        self.reduce_inner(p, None)
    }

    /// Ideal membership: the normal form vanishes.
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// Rewrite position inside a word: `(element, start, end)`.
    pub(crate) fn find_rewrite(&self, w: &Word) -> Option<(usize, usize, usize)> {
        self.trie.find(w.letters())
    }

    fn reduce_inner(&self, mut p: Polynomial, mut trace: Option<&mut ReductionTrace>) -> Polynomial {
        let mut done = Polynomial::zero(p.field());
        while let Some((w, c)) = p.pop_leading() {
            match self.trie.find(w.letters()) {
                None => done.add_term(w, &c),
                Some((idx, start, end)) => {
                    let left = w.prefix(start, &self.weights);
                    let right = w.suffix_from(end, &self.weights);
                    let g = &self.elements[idx];
                    // g is monic; its leading term cancels c·w
                    for (gw, gc) in g.terms().rev().skip(1) {
                        p.add_term(Word::concat3(&left, gw, &right), &-(&c * gc));
                    }
                    if let Some(t) = trace.as_deref_mut() {
                        t.steps.push(ReductionStep {
                            rewriter: Rewriter::Relation(idx),
                            slot: None,
                            left,
                            right,
                            coeff: c,
                        });
                    }
                }
            }
        }
        done
    }

    /// Graded dimensions `dim A_i` for `i <= max` from normal-word counts.
    pub fn dimensions(&self, max: u32) -> Result<Vec<num_bigint::BigInt>> {
        self.check(max)?;
        Ok(self.automaton.count(max))
    }

    /// Re-derive every obstruction of result degree at most the soundness
    /// bound and check that it reduces to zero, and that every given relation
    /// lies in the ideal.
    pub fn verify(&self, relations: &[Polynomial]) -> Result<bool> {
        let lws = self.leading_words();
        for (i, e) in self.elements.iter().enumerate() {
            if e.leading().map(|(_, c)| c.is_one()) != Some(true) {
                return Ok(false);
            }
            for (j, lw) in lws.iter().enumerate() {
                if i != j && lw.contains(&lws[i]) {
                    return Ok(false);
                }
            }
        }
        for (i, j, k) in all_overlaps(&self.elements) {
            let d = overlap_degree(&self.elements[i], &self.elements[j], k, &self.weights);
            if d > self.soundness_degree {
                continue;
            }
            let s = s_polynomial(&self.elements[i], &self.elements[j], k, &self.weights);
            if !self.reduce_unchecked(s).is_zero() {
                return Ok(false);
            }
        }
        for r in relations {
            if let Some(d) = r.degree() {
                if d <= self.soundness_degree && !self.reduce_unchecked(r.clone()).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// All `(i, j, k)`: the last `k` letters of `lw(g_i)` are the first `k` of
/// `lw(g_j)`, with `k` proper for both.
pub(crate) fn all_overlaps(elements: &[Polynomial]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let (Some(u), Some(v)) = (a.leading_word(), b.leading_word()) else {
                continue;
            };
            for k in u.proper_overlaps(v) {
                out.push((i, j, k));
            }
        }
    }
    out
}

fn overlap_degree(a: &Polynomial, b: &Polynomial, k: usize, weights: &[u32]) -> u32 {
    let u = a.leading_word().unwrap();
    let v = b.leading_word().unwrap();
    u.degree() + v.suffix_from(k, weights).degree()
}

/// `a · v[k..] - u[..|u|-k] · b` for leading words `u`, `v`.
pub(crate) fn s_polynomial(a: &Polynomial, b: &Polynomial, k: usize, weights: &[u32]) -> Polynomial {
    let u = a.leading_word().unwrap();
    let v = b.leading_word().unwrap();
    let right = v.suffix_from(k, weights);
    let left = u.prefix(u.len() - k, weights);
    let mut s = a.mul_words(&Word::empty(), &right);
    s.sub_assign(&b.mul_words(&left, &Word::empty()));
    s
}

/// Result of a two-sided completion that also records which input relations
/// were needed.
#[derive(Clone, Debug)]
pub struct Completion {
    pub basis: GroebnerBasis,
    /// `essential[i]` is false when relation `i` (in presentation order) lies
    /// in the ideal generated by lower-degree relations and the essential
    /// relations processed before it.
    pub essential: Vec<bool>,
}

/// Completion through degree `bound`.
pub fn complete_two_sided(p: &Presentation, bound: u32) -> Result<GroebnerBasis> {
    Ok(complete_with_minimality(p, bound)?.basis)
}

pub fn complete_with_minimality(p: &Presentation, bound: u32) -> Result<Completion> {
    let needed = p.max_relation_degree();
    if bound < needed {
        return Err(Error::BoundBelowRelations { bound, needed });
    }
    let field = p.field();
    let weights = p.weights();
    // inputs sorted by degree, then leading word
    let mut order: Vec<usize> = (0..p.relations().len()).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (&p.relations()[a], &p.relations()[b]);
        ra.degree()
            .cmp(&rb.degree())
            .then_with(|| ra.leading_word().cmp(&rb.leading_word()))
    });
    let mut essential = vec![false; p.relations().len()];
    let mut elements: Vec<Polynomial> = Vec::new();
    let mut pending: BTreeMap<u32, Vec<(usize, usize, usize)>> = BTreeMap::new();
    let mut complete = true;
    let mut next_input = 0;
    for degree in 1..=bound {
        let current = GroebnerBasis::from_elements(field, weights.clone(), elements.clone(), degree - 1, false);
        let mut layer = Echelon::new();
        for (i, j, k) in pending.remove(&degree).unwrap_or_default() {
            let s = s_polynomial(&elements[i], &elements[j], k, &weights);
            let r = current.reduce_unchecked(s);
            layer.insert(r);
        }
        while next_input < order.len() && p.relations()[order[next_input]].degree() == Some(degree) {
            let idx = order[next_input];
            next_input += 1;
            let r = current.reduce_unchecked(p.relations()[idx].clone());
            essential[idx] = layer.insert(r);
        }
        let start = elements.len();
        elements.extend(layer.into_rows());
        // new obstructions
        for a in start..elements.len() {
            for b in 0..elements.len() {
                let pairs: &[(usize, usize)] = if a == b {
                    &[(a, a)]
                } else if b < start || b > a {
                    &[(a, b), (b, a)]
                } else {
                    continue;
                };
                for &(i, j) in pairs {
                    let u = elements[i].leading_word().unwrap();
                    let v = elements[j].leading_word().unwrap();
                    for k in u.proper_overlaps(v) {
                        let d = overlap_degree(&elements[i], &elements[j], k, &weights);
                        if d > bound {
                            complete = false;
                        } else {
                            pending.entry(d).or_default().push((i, j, k));
                        }
                    }
                }
            }
        }
    }
    Ok(Completion {
        basis: GroebnerBasis::from_elements(field, weights, elements, bound, complete),
        essential,
    })
}

/// Reduced row echelon form of homogeneous polynomials of one degree.
struct Echelon {
    rows: Vec<Polynomial>,
    pivots: HashMap<Word, usize>,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    fn reduce(&self, mut p: Polynomial) -> Polynomial {
        let mut done = Polynomial::zero(p.field());
        while let Some((w, c)) = p.pop_leading() {
            match self.pivots.get(&w) {
                Some(&r) => {
                    for (rw, rc) in self.rows[r].terms().rev().skip(1) {
                        p.add_term(rw.clone(), &-(&c * rc));
                    }
                }
                None => done.add_term(w, &c),
            }
        }
        done
    }

    /// Returns whether `p` was independent of the rows so far.
    fn insert(&mut self, p: Polynomial) -> bool {
        let r = self.reduce(p);
        if r.is_zero() {
            return false;
        }
        let r = r.monic();
        let lw = r.leading_word().unwrap().clone();
        for row in &mut self.rows {
            if let Some(c) = row.coeff(&lw).cloned() {
                row.sub_assign(&r.scale(&c));
            }
        }
        self.pivots.insert(lw, self.rows.len());
        self.rows.push(r);
        true
    }

    fn into_rows(self) -> Vec<Polynomial> {
        let mut rows = self.rows;
        rows.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_presentation;

    fn dims(gb: &GroebnerBasis, max: u32) -> Vec<i64> {
        gb.dimensions(max)
            .unwrap()
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn commutative_relation_is_complete() {
        let p = parse_presentation("gens x y; order deglex y > x; rels y*x - x*y").unwrap();
        let gb = complete_two_sided(&p, 10).unwrap();
        assert_eq!(gb.elements().len(), 1);
        assert!(gb.is_complete());
        assert_eq!(dims(&gb, 10), (1..=11).collect::<Vec<_>>());
    }

    #[test]
    fn monomial_square_complete() {
        let p = parse_presentation("gens x; rels x^2").unwrap();
        let gb = complete_two_sided(&p, 10).unwrap();
        assert_eq!(gb.elements(), p.relations());
        assert!(gb.is_complete());
    }

    #[test]
    fn non_coherent_example_finite_basis() {
        let p = parse_presentation("gens x y z t; order deglex z > t > y > x; rels zy - tz, zx").unwrap();
        let gb = complete_two_sided(&p, 6).unwrap();
        assert!(gb.is_complete());
        assert_eq!(gb.elements().len(), 2);
    }

    #[test]
    fn infinite_basis_is_flagged() {
        // x y^n x - y^(n+1) x for every n
        let p = parse_presentation("gens x y; order deglex x > y; rels x*x - y*x").unwrap();
        let gb = complete_two_sided(&p, 8).unwrap();
        assert!(!gb.is_complete());
        assert_eq!(gb.elements().len(), 7);
    }

    #[test]
    fn normal_form_examples() {
        let p = parse_presentation("gens x y; order deglex y > x; rels y*x - x*y").unwrap();
        let gb = complete_two_sided(&p, 6).unwrap();
        let (nf, trace) = gb.normal_form(&p.poly("y*x").unwrap()).unwrap();
        assert_eq!(nf, p.poly("x*y").unwrap());
        assert_eq!(trace.len(), 1);
        assert_eq!(trace.replay(&p.poly("y*x").unwrap(), &gb), nf);
        assert!(!gb.contains(&p.poly("y*x*x").unwrap()).unwrap());
        assert_eq!(gb.reduce(&p.poly("y*x*x").unwrap()).unwrap(), p.poly("x*x*y").unwrap());

        let q = parse_presentation("gens x y; order deglex y > x; rels y*x").unwrap();
        let gq = complete_two_sided(&q, 4).unwrap();
        assert!(gq.contains(&q.poly("y*x").unwrap()).unwrap());
        assert!(gq.contains(&Polynomial::zero(Field::Rational)).unwrap());
        let x = q.poly("x").unwrap();
        assert_eq!(gq.reduce(&x).unwrap(), x);
    }

    #[test]
    fn refuses_beyond_soundness() {
        let p = parse_presentation("gens x y; rels x*y - y*x").unwrap();
        let gb = complete_two_sided(&p, 3).unwrap();
        let long = p.poly("x*y*x*y").unwrap();
        assert!(matches!(
            gb.normal_form(&long),
            Err(Error::UnsoundBound { degree: 4, bound: 3 })
        ));
        assert!(matches!(
            complete_two_sided(&p, 1),
            Err(Error::BoundBelowRelations { .. })
        ));
    }

    #[test]
    fn redundant_relation_detected() {
        let p = parse_presentation("gens x y; rels x*x, x*x*y, y*y, x*y - y*x").unwrap();
        let c = complete_with_minimality(&p, 5).unwrap();
        assert_eq!(c.essential, vec![true, false, true, true]);
        assert!(c.basis.verify(p.relations()).unwrap());
    }
}
