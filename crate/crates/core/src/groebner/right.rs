//! One-sided Gröbner bases of graded submodules of free right modules over
//! `A = k⟨X⟩ / I`.
//!
//! A term `e_s · w` is reducible either by a relation of `A` occurring inside
//! `w`, or by a basis element whose leading term `e_s · u` has `u` as a
//! prefix of `w`. The only obstructions are overlaps of a leading term's
//! word with the leading word of a relation.
//!
//! Each basis element can carry its expression in the input generators.
//! Whenever a candidate reduces to zero, that expression is a syzygy of the
//! inputs, and these syzygies generate the syzygy module through the bound.

use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;

use super::{GroebnerBasis, ReductionStep, ReductionTrace, Rewriter};
use crate::error::{Error, Result};
use crate::module::{FreeModule, FreeModuleElement, ModuleTerm};
use crate::poly::Polynomial;
use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct ModuleBasis {
    module: FreeModule,
    elements: Vec<FreeModuleElement>,
    soundness_degree: u32,
    complete: bool,
    leads: HashMap<(usize, Vec<Letter>), usize>,
}

impl ModuleBasis {
    fn new(module: FreeModule, soundness_degree: u32) -> ModuleBasis {
        ModuleBasis {
            module,
            elements: Vec::new(),
            soundness_degree,
            complete: true,
            leads: HashMap::new(),
        }
    }

    fn push(&mut self, e: FreeModuleElement) {
        let lt = e.leading_term().expect("nonzero").clone();
        self.leads
            .insert((lt.slot, lt.word.letters().to_vec()), self.elements.len());
        self.elements.push(e);
    }

    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn elements(&self) -> &[FreeModuleElement] {
        &self.elements
    }

    pub fn leading_terms(&self) -> Vec<ModuleTerm> {
        self.elements
            .iter()
            .map(|e| e.leading_term().unwrap().clone())
            .collect()
    }

    pub fn soundness_degree(&self) -> u32 {
        self.soundness_degree
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Basis element whose leading word is a prefix of `t.word`, with the
    /// prefix length.
    fn find_prefix(&self, t: &ModuleTerm) -> Option<(usize, usize)> {
        let letters = t.word.letters();
        let mut key = (t.slot, Vec::with_capacity(letters.len()));
        for k in 0..=letters.len() {
            if k > 0 {
                key.1.push(letters[k - 1]);
            }
            if let Some(&i) = self.leads.get(&key) {
                return Some((i, k));
            }
        }
        None
    }

    fn check(&self, degree: u32, ambient: &GroebnerBasis) -> Result<()> {
        let bound = self.soundness_degree.min(ambient.soundness_degree());
        if degree > bound {
            return Err(Error::UnsoundBound { degree, bound });
        }
        Ok(())
    }

    pub fn normal_form(
        &self,
        v: &FreeModuleElement,
        ambient: &GroebnerBasis,
    ) -> Result<(FreeModuleElement, ReductionTrace)> {
        if let Some(d) = v.degree() {
            self.check(d, ambient)?;
        }
        let mut trace = ReductionTrace::default();
        let mut row = Row::untracked(v.clone());
        reduce_row(&mut row, self, &[], None, ambient, Some(&mut trace));
        Ok((row.value, trace))
    }

    pub fn reduce(&self, v: &FreeModuleElement, ambient: &GroebnerBasis) -> Result<FreeModuleElement> {
        if let Some(d) = v.degree() {
            self.check(d, ambient)?;
        }
        let mut row = Row::untracked(v.clone());
        reduce_row(&mut row, self, &[], None, ambient, None);
        Ok(row.value)
    }

    pub fn contains(&self, v: &FreeModuleElement, ambient: &GroebnerBasis) -> Result<bool> {
        Ok(self.reduce(v, ambient)?.is_zero())
    }

    /// Graded dimensions of the submodule in degrees `0..=max`.
    pub fn dimensions(&self, ambient: &GroebnerBasis, max: u32) -> Result<Vec<u64>> {
        self.check(max, ambient)?;
        let mut dims = vec![0u64; max as usize + 1];
        let aut = ambient.automaton();
        for e in &self.elements {
            let lt = e.leading_term().unwrap();
            if lt.degree > max {
                continue;
            }
            let state = aut
                .run(aut.start(), lt.word.letters())
                .expect("leading words are normal");
            for (i, c) in aut.count_from(state, max - lt.degree).iter().enumerate() {
                dims[lt.degree as usize + i] += c.to_u64().expect("dimension fits in u64");
            }
        }
        Ok(dims)
    }

    /// Apply the rewrites of a module trace to `input`.
    pub fn replay(
        &self,
        trace: &ReductionTrace,
        input: &FreeModuleElement,
        ambient: &GroebnerBasis,
    ) -> FreeModuleElement {
        let mut v = input.clone();
        for s in &trace.steps {
            match s.rewriter {
                Rewriter::Relation(i) => {
                    let slot = s.slot.expect("module steps carry a slot");
                    let shift = self.module.shifts[slot];
                    for (w, c) in ambient.elements()[i].terms() {
                        let word = Word::concat3(&s.left, w, &s.right);
                        v.add_term(ModuleTerm::new(slot, shift, word), &-(&s.coeff * c));
                    }
                }
                Rewriter::Submodule(i) => v.add_scaled(&-&s.coeff, &self.elements[i], &s.right),
            }
        }
        v
    }
}

#[derive(Clone, Debug)]
struct Row {
    value: FreeModuleElement,
    /// Expression in the inputs; empty when not tracked.
    rep: Vec<Polynomial>,
}

impl Row {
    fn untracked(value: FreeModuleElement) -> Row {
        Row { value, rep: Vec::new() }
    }
}

/// Pivot rows of the degree being completed.
struct Layer {
    rows: Vec<Row>,
    pivots: HashMap<ModuleTerm, usize>,
}

fn reduce_row(
    row: &mut Row,
    basis: &ModuleBasis,
    reps: &[Vec<Polynomial>],
    layer: Option<&Layer>,
    ambient: &GroebnerBasis,
    mut trace: Option<&mut ReductionTrace>,
) {
    let weights = ambient.weights();
    let shifts = &basis.module.shifts;
    let mut done = FreeModuleElement::zero(row.value.field());
    while let Some((t, c)) = row.value.pop_leading() {
        if let Some((idx, start, end)) = ambient.find_rewrite(&t.word) {
            let left = t.word.prefix(start, weights);
            let right = t.word.suffix_from(end, weights);
            for (gw, gc) in ambient.elements()[idx].terms().rev().skip(1) {
                let word = Word::concat3(&left, gw, &right);
                row.value
                    .add_term(ModuleTerm::new(t.slot, shifts[t.slot], word), &-(&c * gc));
            }
            if let Some(tr) = trace.as_deref_mut() {
                tr.steps.push(ReductionStep {
                    rewriter: Rewriter::Relation(idx),
                    slot: Some(t.slot),
                    left,
                    right,
                    coeff: c,
                });
            }
            continue;
        }
        if let Some((idx, k)) = basis.find_prefix(&t) {
            let right = t.word.suffix_from(k, weights);
            for (ht, hc) in basis.elements[idx].terms().rev().skip(1) {
                row.value.add_term(ht.mul_word(&right), &-(&c * hc));
            }
            if !row.rep.is_empty() {
                let empty = Word::empty();
                for (dst, src) in row.rep.iter_mut().zip(&reps[idx]) {
                    dst.add_scaled_product(&-&c, &empty, src, &right);
                }
            }
            if let Some(tr) = trace.as_deref_mut() {
                tr.steps.push(ReductionStep {
                    rewriter: Rewriter::Submodule(idx),
                    slot: Some(t.slot),
                    left: Word::empty(),
                    right,
                    coeff: c,
                });
            }
            continue;
        }
        if let Some(&r) = layer.and_then(|l| l.pivots.get(&t)) {
            let p = &layer.unwrap().rows[r];
            for (pt, pc) in p.value.terms().rev().skip(1) {
                row.value.add_term(pt.clone(), &-(&c * pc));
            }
            for (dst, src) in row.rep.iter_mut().zip(&p.rep) {
                dst.sub_assign(&src.scale(&c));
            }
            continue;
        }
        done.add_term(t, &c);
    }
    row.value = done;
}

/// Completion result with input bookkeeping.
#[derive(Clone, Debug)]
pub struct TrackedCompletion {
    pub basis: ModuleBasis,
    /// `representations[j][i]`: coefficient of input `i` in basis element `j`,
    /// so that `basis[j] = Σ_i inputs[i] · representations[j][i]`.
    pub representations: Vec<Vec<Polynomial>>,
    /// Degree and coefficient vector of each syzygy found.
    pub syzygies: Vec<(u32, Vec<Polynomial>)>,
    /// False when an input lies in the submodule generated by the inputs
    /// processed before it (ascending degree, then leading term).
    pub essential: Vec<bool>,
}

/// Right Gröbner basis of the submodule generated by `gens`, through degree
/// `bound`.
pub fn complete_right(
    module: &FreeModule,
    gens: &[FreeModuleElement],
    ambient: &GroebnerBasis,
    bound: u32,
) -> Result<ModuleBasis> {
    Ok(run(module, gens, ambient, bound, false)?.basis)
}

/// As [`complete_right`], also recording representations and syzygies.
pub fn complete_right_tracked(
    module: &FreeModule,
    gens: &[FreeModuleElement],
    ambient: &GroebnerBasis,
    bound: u32,
) -> Result<TrackedCompletion> {
    run(module, gens, ambient, bound, true)
}

/// Indices of a minimal generating subset of `gens`, in input order.
pub fn minimize_generators(
    module: &FreeModule,
    gens: &[FreeModuleElement],
    ambient: &GroebnerBasis,
) -> Result<Vec<usize>> {
    let bound = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let c = run(module, gens, ambient, bound, false)?;
    Ok((0..gens.len()).filter(|&i| c.essential[i]).collect())
}

fn run(
    module: &FreeModule,
    gens: &[FreeModuleElement],
    ambient: &GroebnerBasis,
    bound: u32,
    track: bool,
) -> Result<TrackedCompletion> {
    if ambient.soundness_degree() < bound {
        return Err(Error::UnsoundBound {
            degree: bound,
            bound: ambient.soundness_degree(),
        });
    }
    let field = ambient.field();
    let weights = ambient.weights();
    let n = gens.len();
    let mut degrees = Vec::with_capacity(n);
    for g in gens {
        if g.is_zero() {
            degrees.push(None);
            continue;
        }
        let d = g.homogeneous_degree()?;
        if g.terms().any(|(t, _)| t.slot >= module.rank()) {
            return Err(Error::InvalidArgument(format!(
                "element uses a slot outside a module of rank {}",
                module.rank()
            )));
        }
        degrees.push(Some(d));
    }
    let mut order: Vec<usize> = (0..n).filter(|&i| degrees[i].is_some()).collect();
    order.sort_by(|&a, &b| {
        degrees[a]
            .cmp(&degrees[b])
            .then_with(|| gens[a].leading_term().cmp(&gens[b].leading_term()))
    });

    let unit = |i: usize| -> Vec<Polynomial> {
        let mut v = vec![Polynomial::zero(field); n];
        v[i] = Polynomial::monomial(field, Word::empty());
        v
    };
    let mut basis = ModuleBasis::new(module.clone(), bound);
    let mut reps: Vec<Vec<Polynomial>> = Vec::new();
    let mut syzygies = Vec::new();
    let mut essential = vec![false; n];
    // pending compositions by degree: (basis index, ambient index, overlap)
    let mut pending: BTreeMap<u32, Vec<(usize, usize, usize)>> = BTreeMap::new();
    let mut complete = ambient.is_complete();
    let mut next = 0;
    let first = order.first().and_then(|&i| degrees[i]).unwrap_or(bound + 1);
    for degree in first..=bound {
        let mut layer = Layer {
            rows: Vec::new(),
            pivots: HashMap::new(),
        };
        let mut candidates: Vec<(Row, Option<usize>)> = Vec::new();
        for (h, g, k) in pending.remove(&degree).unwrap_or_default() {
            let lw = ambient.elements()[g].leading_word().unwrap();
            let tail = lw.suffix_from(k, weights);
            let value = basis.elements[h].mul_word(&tail);
            let rep = if track {
                let empty = Word::empty();
                reps[h].iter().map(|p| p.mul_words(&empty, &tail)).collect()
            } else {
                Vec::new()
            };
            candidates.push((Row { value, rep }, None));
        }
        while next < order.len() && degrees[order[next]] == Some(degree) {
            let i = order[next];
            next += 1;
            let rep = if track { unit(i) } else { Vec::new() };
            candidates.push((
                Row {
                    value: gens[i].clone(),
                    rep,
                },
                Some(i),
            ));
        }
        for (mut row, input) in candidates {
            reduce_row(&mut row, &basis, &reps, Some(&layer), ambient, None);
            if row.value.is_zero() {
                if track {
                    let rep: Vec<Polynomial> = row.rep.into_iter().map(|p| ambient.reduce_unchecked(p)).collect();
                    if rep.iter().any(|p| !p.is_zero()) {
                        syzygies.push((degree, rep));
                    }
                }
                continue;
            }
            if let Some(i) = input {
                essential[i] = true;
            }
            let (lt, lc) = row.value.leading().map(|(t, c)| (t.clone(), c.inv())).unwrap();
            row.value = row.value.scale(&lc);
            for p in &mut row.rep {
                *p = p.scale(&lc);
            }
            for other in &mut layer.rows {
                let Some(c) = other.value.terms().find(|(t, _)| **t == lt).map(|(_, c)| c.clone()) else {
                    continue;
                };
                other.value = other.value.sub(&row.value.scale(&c));
                for (dst, src) in other.rep.iter_mut().zip(&row.rep) {
                    dst.sub_assign(&src.scale(&c));
                }
            }
            layer.pivots.insert(lt, layer.rows.len());
            layer.rows.push(row);
        }
        let mut rows = layer.rows;
        rows.sort_by(|a, b| a.value.leading_term().cmp(&b.value.leading_term()));
        let start = basis.elements.len();
        for row in rows {
            basis.push(row.value);
            if track {
                reps.push(row.rep.into_iter().map(|p| ambient.reduce_unchecked(p)).collect());
            }
        }
        for h in start..basis.elements.len() {
            let h_lt = basis.elements[h].leading_term().unwrap().clone();
            let u = h_lt.word.letters();
            for (g, ge) in ambient.elements().iter().enumerate() {
                let l = ge.leading_word().unwrap();
                for k in 1..=u.len().min(l.len() - 1) {
                    if u[u.len() - k..] != l.letters()[..k] {
                        continue;
                    }
                    let d = h_lt.degree + l.suffix_from(k, weights).degree();
                    if d > bound {
                        complete = false;
                    } else {
                        pending.entry(d).or_default().push((h, g, k));
                    }
                }
            }
        }
    }
    if next < order.len() {
        complete = false;
    }
    basis.complete = complete;
    Ok(TrackedCompletion {
        basis,
        representations: reps,
        syzygies,
        essential,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_presentation;
    use crate::groebner::complete_two_sided;
    use crate::presentation::Presentation;

    fn setup(text: &str, bound: u32) -> (Presentation, GroebnerBasis) {
        let p = parse_presentation(text).unwrap();
        let gb = complete_two_sided(&p, bound).unwrap();
        (p, gb)
    }

    fn ideal(p: &Presentation, exprs: &[&str]) -> Vec<FreeModuleElement> {
        let m = FreeModule::algebra();
        exprs.iter().map(|e| m.embed(0, &p.poly(e).unwrap())).collect()
    }

    #[test]
    fn principal_right_ideal_in_free_algebra() {
        let (p, gb) = setup("gens x y", 6);
        let gens = ideal(&p, &["x"]);
        let b = complete_right(&FreeModule::algebra(), &gens, &gb, 6).unwrap();
        assert_eq!(b.elements().len(), 1);
        assert!(b.is_complete());
        // x·k<x,y>: 2^(d-1) in degree d
        assert_eq!(b.dimensions(&gb, 5).unwrap(), vec![0, 1, 2, 4, 8, 16]);
    }

    #[test]
    fn syzygy_of_commuting_generators() {
        let (p, gb) = setup("gens x y; order deglex y > x; rels y*x - x*y", 6);
        let gens = ideal(&p, &["x", "y"]);
        let c = complete_right_tracked(&FreeModule::algebra(), &gens, &gb, 6).unwrap();
        // the right ideal (x, y) is the augmentation ideal
        assert_eq!(c.basis.dimensions(&gb, 4).unwrap(), vec![0, 2, 3, 4, 5]);
        assert!(!c.syzygies.is_empty());
        let (d, s) = &c.syzygies[0];
        assert_eq!(*d, 2);
        // x·s0 + y·s1 = 0 in A
        let combo = p.poly("x").unwrap().mul(&s[0]).add(&p.poly("y").unwrap().mul(&s[1]));
        assert!(gb.contains(&combo).unwrap());
        for (j, e) in c.basis.elements().iter().enumerate() {
            let mut sum = Polynomial::zero(p.field());
            for (i, g) in gens.iter().enumerate() {
                sum.add_assign(&g.component(0).mul(&c.representations[j][i]));
            }
            assert_eq!(gb.reduce(&sum).unwrap(), e.component(0));
        }
    }

    #[test]
    fn composition_with_relation() {
        // in k<x,y>/(yx), the right ideal yR: y·x = 0 so yR = span{y y^k}
        let (p, gb) = setup("gens x y; order deglex y > x; rels y*x", 6);
        let gens = ideal(&p, &["y"]);
        let c = complete_right_tracked(&FreeModule::algebra(), &gens, &gb, 6).unwrap();
        assert_eq!(c.basis.dimensions(&gb, 4).unwrap(), vec![0, 1, 1, 1, 1]);
        assert_eq!(c.syzygies.len(), 1);
        assert_eq!(c.syzygies[0].1[0], p.poly("x").unwrap());
    }

    #[test]
    fn minimize_drops_redundant() {
        let (p, gb) = setup("gens x y", 4);
        let gens = ideal(&p, &["x*y", "x", "x*x + x*y", "y"]);
        let keep = minimize_generators(&FreeModule::algebra(), &gens, &gb).unwrap();
        assert_eq!(keep, vec![1, 3]);
    }

    #[test]
    fn module_normal_form_replays() {
        let (p, gb) = setup("gens x y; order deglex y > x; rels y*x - x*y", 6);
        let m = FreeModule::new(vec![0, 0]);
        let gens = vec![m.from_entries(p.field(), &[p.poly("y").unwrap(), p.poly("x").unwrap()])];
        let b = complete_right(&m, &gens, &gb, 6).unwrap();
        let v = m.from_entries(p.field(), &[p.poly("y*x*x").unwrap(), p.poly("y*x*y").unwrap()]);
        let (nf, trace) = b.normal_form(&v, &gb).unwrap();
        assert_eq!(b.replay(&trace, &v, &gb), nf);
        assert!(b.contains(&gens[0].mul_word(&p.word("x y").unwrap()), &gb).unwrap());
        assert!(matches!(
            b.reduce(&gens[0].mul_word(&p.word("x x x x x x").unwrap()), &gb),
            Err(Error::UnsoundBound { .. })
        ));
    }
}
