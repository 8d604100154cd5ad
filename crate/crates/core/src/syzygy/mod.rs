//! Homogeneous linear equations `a_1 x_1 + … + a_n x_n = 0` over a graded
//! algebra or a finitely presented module, and the ideal operations built on
//! them.
//!
//! All degree bounds refer to the total degree of a syzygy, `deg a_i + deg x_i`.

mod probe;

pub use probe::{
    coherence_probe, enumerate_monomial_ideals, ideal_record, sample_ideals, IdealKind, IdealRecord, PairRecord,
    ProbeConfig, ProbeReport,
};

use crate::error::{Error, Result};
use crate::groebner::{complete_right, complete_right_tracked, minimize_generators, GroebnerBasis};
use crate::module::{FreeModule, FreeModuleElement};
use crate::poly::Polynomial;
use crate::presentation::{ModulePresentation, Presentation};

/// One instance of the equation: coefficients in a module `F / N` over the
/// algebra, with a degree bound.
#[derive(Clone, Debug)]
pub struct EquationInstance {
    pub module: ModulePresentation,
    pub coefficients: Vec<FreeModuleElement>,
    pub bound: u32,
}

impl EquationInstance {
    pub fn over_algebra(coefficients: &[Polynomial], bound: u32) -> EquationInstance {
        let m = FreeModule::algebra();
        EquationInstance {
            coefficients: coefficients.iter().map(|a| m.embed(0, a)).collect(),
            module: ModulePresentation::free(m),
            bound,
        }
    }

    pub fn over_module(
        module: ModulePresentation,
        coefficients: Vec<FreeModuleElement>,
        bound: u32,
    ) -> EquationInstance {
        EquationInstance {
            module,
            coefficients,
            bound,
        }
    }
}

/// Minimal homogeneous generators of the solution module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyBasis {
    /// `deg a_i`; zero coefficients get 0.
    pub coefficient_degrees: Vec<u32>,
    /// Indices of zero coefficients, left out of the equation.
    pub dropped: Vec<usize>,
    /// Each generator is a tuple `(x_1, …, x_n)`.
    pub generators: Vec<Vec<Polynomial>>,
    /// Total degree `deg a_i + deg x_i` of each generator.
    pub degrees: Vec<u32>,
    pub soundness_degree: u32,
    /// The generator list is complete in every degree `≤ exhaustive_below`.
    pub exhaustive_below: u32,
    /// No syzygy generators exist beyond the bound.
    pub complete: bool,
}

impl SyzygyBasis {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `m(Ω)`, when there is at least one generator.
    pub fn max_degree(&self) -> Option<u32> {
        self.degrees.iter().copied().max()
    }

    /// The free module the tuples live in (slot `i` shifted by `deg a_i`).
    pub fn module(&self) -> FreeModule {
        FreeModule::new(self.coefficient_degrees.clone())
    }

    pub fn elements(&self) -> Vec<FreeModuleElement> {
        let m = self.module();
        self.generators.iter().map(|g| m.from_entries(field_of(g), g)).collect()
    }
}

fn field_of(g: &[Polynomial]) -> crate::scalar::Field {
    g[0].field()
}

fn unsound(bound: u32, gb: &GroebnerBasis) -> Result<()> {
    if gb.soundness_degree() < bound {
        return Err(Error::UnsoundBound {
            degree: bound,
            bound: gb.soundness_degree(),
        });
    }
    Ok(())
}

/// Minimal generators of `Ω = {x : Σ a_i x_i = 0 in F/N}` through the bound.
pub fn solve_linear_equation(eq: &EquationInstance, gb: &GroebnerBasis) -> Result<SyzygyBasis> {
    unsound(eq.bound, gb)?;
    let field = gb.field();
    let n = eq.coefficients.len();
    let mut coefficient_degrees = vec![0; n];
    let mut dropped = Vec::new();
    let mut active = Vec::new();
    for (i, a) in eq.coefficients.iter().enumerate() {
        if a.is_zero() {
            dropped.push(i);
        } else {
            coefficient_degrees[i] = a.homogeneous_degree()?;
            active.push(i);
        }
    }
    let mut inputs: Vec<FreeModuleElement> = active.iter().map(|&i| eq.coefficients[i].clone()).collect();
    inputs.extend(eq.module.relations.iter().filter(|r| !r.is_zero()).cloned());
    let tracked = complete_right_tracked(&eq.module.module, &inputs, gb, eq.bound)?;

    let shifts: Vec<u32> = active.iter().map(|&i| coefficient_degrees[i]).collect();
    let syz_module = FreeModule::new(shifts);
    let mut candidates: Vec<(u32, FreeModuleElement)> = Vec::new();
    for (degree, rep) in &tracked.syzygies {
        let v = syz_module.from_entries(field, &rep[..active.len()]);
        if !v.is_zero() {
            candidates.push((*degree, v));
        }
    }
    candidates.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.leading_term().cmp(&b.1.leading_term())));
    let elems: Vec<FreeModuleElement> = candidates.into_iter().map(|(_, v)| v).collect();
    let keep = minimize_generators(&syz_module, &elems, gb)?;

    let mut generators = Vec::new();
    let mut degrees = Vec::new();
    for k in keep {
        let v = &elems[k];
        let parts = v.components(active.len());
        let mut full = vec![Polynomial::zero(field); n];
        for (slot, &i) in active.iter().enumerate() {
            full[i] = parts[slot].clone();
        }
        degrees.push(v.degree().unwrap());
        generators.push(full);
    }
    Ok(SyzygyBasis {
        coefficient_degrees,
        dropped,
        generators,
        degrees,
        soundness_degree: eq.bound,
        exhaustive_below: eq.bound,
        complete: tracked.basis.is_complete(),
    })
}

/// Check that every generator satisfies the equation modulo the relations
/// of the module and of the algebra.
pub fn verify_syzygies(eq: &EquationInstance, basis: &SyzygyBasis, gb: &GroebnerBasis) -> Result<bool> {
    let relations = complete_right(&eq.module.module, &eq.module.relations, gb, eq.bound)?;
    for g in &basis.generators {
        let mut sum = FreeModuleElement::zero(gb.field());
        for (a, x) in eq.coefficients.iter().zip(g) {
            sum.add_assign(&a.mul_poly(x));
        }
        if !relations.contains(&sum, gb)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Homogeneous generators of a right ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGenerators {
    pub generators: Vec<Polynomial>,
    pub degrees: Vec<u32>,
    /// Generators are exhaustive through this degree.
    pub bound: u32,
    pub complete: bool,
}

impl IdealGenerators {
    pub fn max_degree(&self) -> Option<u32> {
        self.degrees.iter().copied().max()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Minimal generating subset of a right ideal, ascending by degree then
/// leading word.
pub fn minimize_ideal(gens: &[Polynomial], gb: &GroebnerBasis) -> Result<Vec<Polynomial>> {
    let m = FreeModule::algebra();
    let mut v: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    v.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.leading_word().cmp(&b.leading_word()))
    });
    let elems: Vec<FreeModuleElement> = v.iter().map(|g| m.embed(0, g)).collect();
    let keep = minimize_generators(&m, &elems, gb)?;
    Ok(keep.into_iter().map(|i| v[i].clone()).collect())
}

fn ideal_from(gens: Vec<Polynomial>, bound: u32, complete: bool, gb: &GroebnerBasis) -> Result<IdealGenerators> {
    let gens: Vec<Polynomial> = gens
        .into_iter()
        .map(|g| gb.reduce(&g).map(|r| if r.is_zero() { r } else { r.monic() }))
        .collect::<Result<_>>()?;
    let generators = minimize_ideal(&gens, gb)?;
    let degrees = generators.iter().map(|g| g.degree().unwrap()).collect();
    Ok(IdealGenerators {
        generators,
        degrees,
        bound,
        complete,
    })
}

/// `(x : J) = {a : x a ∈ J}`. Syzygies are computed through total degree
/// `bound`, so generators are exhaustive through `bound - deg x`.
pub fn colon_ideal(x: &Polynomial, j: &[Polynomial], gb: &GroebnerBasis, bound: u32) -> Result<IdealGenerators> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("colon by the zero element".into()));
    }
    let dx = x.homogeneous_degree()?;
    let mut coeffs = vec![x.clone()];
    coeffs.extend(j.iter().cloned());
    let s = solve_linear_equation(&EquationInstance::over_algebra(&coeffs, bound), gb)?;
    let gens = s
        .generators
        .iter()
        .map(|g| g[0].clone())
        .filter(|a| !a.is_zero())
        .collect();
    ideal_from(gens, bound.saturating_sub(dx), s.complete, gb)
}

/// `Ann(x) = (x : 0)`.
pub fn annihilator(x: &Polynomial, gb: &GroebnerBasis, bound: u32) -> Result<IdealGenerators> {
    colon_ideal(x, &[], gb, bound)
}

/// `I ∩ J` from the syzygies of the concatenated generator list.
pub fn intersect_ideals(i: &[Polynomial], j: &[Polynomial], gb: &GroebnerBasis, bound: u32) -> Result<IdealGenerators> {
    let mut coeffs = i.to_vec();
    coeffs.extend(j.iter().cloned());
    let s = solve_linear_equation(&EquationInstance::over_algebra(&coeffs, bound), gb)?;
    let mut gens = Vec::new();
    for g in &s.generators {
        let mut e = Polynomial::zero(gb.field());
        for (a, x) in i.iter().zip(g) {
            e.add_assign(&a.mul(x));
        }
        gens.push(e);
    }
    ideal_from(gens, bound, s.complete, gb)
}

/// Minimal generator degrees of one level of a resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyLevel {
    /// Homological index: level `i` gives `m_i`.
    pub index: usize,
    pub degrees: Vec<u32>,
    /// No generators exist beyond the bound at this level.
    pub exact: bool,
}

impl SyzygyLevel {
    pub fn max_degree(&self) -> Option<u32> {
        self.degrees.iter().copied().max()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedSyzygies {
    /// `m(I)` as given by the minimized input.
    pub generator_degrees: Vec<u32>,
    pub levels: Vec<SyzygyLevel>,
    pub bound: u32,
    /// Some level may have generators beyond the bound.
    pub partial: bool,
}

impl IteratedSyzygies {
    /// `m_i`, or `None` when level `i` is zero or was not reached.
    pub fn m(&self, i: usize) -> Option<u32> {
        self.levels.get(i.checked_sub(1)?).and_then(|l| l.max_degree())
    }
}

/// Repeated syzygies of a submodule of a free module, `depth` levels deep.
pub fn iterated_syzygies(
    module: &FreeModule,
    gens: &[FreeModuleElement],
    depth: usize,
    gb: &GroebnerBasis,
    bound: u32,
) -> Result<IteratedSyzygies> {
    let nonzero: Vec<FreeModuleElement> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut sorted = nonzero.clone();
    sorted.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.leading_term().cmp(&b.leading_term()))
    });
    let keep = minimize_generators(module, &sorted, gb)?;
    let mut current: Vec<FreeModuleElement> = keep.into_iter().map(|i| sorted[i].clone()).collect();
    let generator_degrees = current.iter().map(|g| g.degree().unwrap()).collect();
    let mut current_module = module.clone();
    let mut levels = Vec::new();
    let mut partial = false;
    for index in 1..=depth {
        if current.is_empty() {
            break;
        }
        let eq =
            EquationInstance::over_module(ModulePresentation::free(current_module.clone()), current.clone(), bound);
        let s = solve_linear_equation(&eq, gb)?;
        partial |= !s.complete;
        levels.push(SyzygyLevel {
            index,
            degrees: s.degrees.clone(),
            exact: s.complete,
        });
        current_module = s.module();
        current = s.elements();
    }
    Ok(IteratedSyzygies {
        generator_degrees,
        levels,
        bound,
        partial,
    })
}

/// Iterated syzygies of a right ideal.
pub fn iterated_ideal_syzygies(
    gens: &[Polynomial],
    depth: usize,
    gb: &GroebnerBasis,
    bound: u32,
) -> Result<IteratedSyzygies> {
    let m = FreeModule::algebra();
    let elems: Vec<FreeModuleElement> = gens.iter().map(|g| m.embed(0, g)).collect();
    iterated_syzygies(&m, &elems, depth, gb, bound)
}

/// Solve `f̃_1 x_1 + … + f̃_r x_r = 0`, where `f̃_j` is relation `f_j` with
/// its leading letters split off into the free module on the generators.
/// The minimal generator degrees are those of `H_3`.
pub fn m3_probe(p: &Presentation, gb: &GroebnerBasis, bound: u32) -> Result<SyzygyBasis> {
    unsound(bound, gb)?;
    let field = p.field();
    let weights = p.weights();
    let module = FreeModule::new(weights.clone());
    let mut lifted = Vec::new();
    for f in p.relations() {
        let mut v = FreeModuleElement::zero(field);
        for (w, c) in f.terms() {
            let slot = w.letters()[0] as usize;
            let rest = gb.reduce_unchecked(Polynomial::monomial(field, w.suffix_from(1, &weights)));
            v.add_assign(&module.embed(slot, &rest).scale(c));
        }
        lifted.push(v);
    }
    let bound_rel = p.max_relation_degree();
    if gb.soundness_degree() < bound_rel {
        return Err(Error::UnsoundBound {
            degree: bound_rel,
            bound: gb.soundness_degree(),
        });
    }
    let mut sorted: Vec<FreeModuleElement> = lifted.into_iter().filter(|v| !v.is_zero()).collect();
    sorted.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.leading_term().cmp(&b.leading_term()))
    });
    let keep = minimize_generators(&module, &sorted, gb)?;
    let coeffs = keep.into_iter().map(|i| sorted[i].clone()).collect();
    let eq = EquationInstance::over_module(ModulePresentation::free(module), coeffs, bound);
    solve_linear_equation(&eq, gb)
}
