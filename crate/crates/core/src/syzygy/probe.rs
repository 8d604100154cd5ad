//! Empirical lower bounds for `D_R(d)`, `D^Ann(d)` and `D^∩(d)`.
//!
//! Right ideals generated in degrees `≤ d` are collected from two sources:
//! every ideal generated by normal words (up to a cap), and seeded random
//! polynomial ideals. For each one `m(I)` and `m_1(I)` are computed from an
//! explicit syzygy basis; for pairs the intersection and sum are computed
//! and the inequalities of the exact triple `0 → I∩J → I⊕J → I+J → 0` are
//! checked.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{intersect_ideals, minimize_ideal, solve_linear_equation, EquationInstance};
use crate::error::Result;
use crate::groebner::{complete_right, GroebnerBasis};
use crate::module::FreeModule;
use crate::poly::Polynomial;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeConfig {
    /// Generator degree bound `d`.
    pub degree: u32,
    /// Syzygy degree bound `D`.
    pub bound: u32,
    /// Random polynomial ideals to add.
    pub samples: usize,
    pub seed: u64,
    /// Cap on enumerated monomial ideals.
    pub max_ideals: usize,
    /// Cap on checked pairs.
    pub max_pairs: usize,
}

impl ProbeConfig {
    pub fn new(degree: u32, bound: u32) -> ProbeConfig {
        ProbeConfig {
            degree,
            bound,
            samples: 8,
            seed: 0,
            max_ideals: 400,
            max_pairs: 200,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealKind {
    Monomial,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealRecord {
    pub kind: IdealKind,
    /// Minimal generators.
    pub generators: Vec<Polynomial>,
    /// `m(I)`.
    pub m: u32,
    /// `m_1(I)`; `None` when the generators are free.
    pub m1: Option<u32>,
    pub syzygy_degrees: Vec<u32>,
    /// Every syzygy generator was checked to reduce to zero.
    pub certified: bool,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRecord {
    pub first: usize,
    pub second: usize,
    /// `m(I ∩ J)`.
    pub m_cap: Option<u32>,
    /// `m_1(I + J)`.
    pub m1_sum: Option<u32>,
    pub m_sum: u32,
    /// `m(I∩J) ≤ max{m_1(I+J), m(I), m(J)}`, which gives `≤ max{d, D(d)}`.
    pub inters_holds: bool,
    /// `m_1(I+J) ≤ max{m_1(I), m_1(J), m(I∩J)}`.
    pub sum_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub config: ProbeConfig,
    pub ideals: Vec<IdealRecord>,
    pub pairs: Vec<PairRecord>,
    /// Observed lower bound for `D_R(d)`.
    pub d_r: Option<u32>,
    /// Observed lower bound for `D^Ann(d)`, measured as `m_1(aR)`.
    pub d_ann: Option<u32>,
    /// Observed lower bound for `D^∩(d)`.
    pub d_cap: Option<u32>,
    /// Largest `m_1(I) - m(I)`, clipped at zero.
    pub max_excess: Option<u32>,
    pub enumeration_capped: bool,
    pub pairs_capped: bool,
    pub violations: Vec<String>,
}

impl ProbeReport {
    pub fn all_hold(&self) -> bool {
        self.violations.is_empty()
    }
}

fn omax(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Minimal generating sets of all right ideals generated by normal words of
/// degrees `1..=degree`, at most `cap` of them. Returns the sets and whether
/// the cap was hit.
pub fn enumerate_monomial_ideals(gb: &GroebnerBasis, degree: u32, cap: usize) -> Result<(Vec<Vec<Polynomial>>, bool)> {
    let mut words = Vec::new();
    for d in 1..=degree {
        words.extend(gb.normal_words(d)?);
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut capped = false;
    let mut chosen: Vec<Word> = Vec::new();
    dfs(gb, &words, 0, &mut chosen, &mut out, &mut seen, cap, &mut capped)?;
    Ok((out, capped))
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    gb: &GroebnerBasis,
    words: &[Word],
    start: usize,
    chosen: &mut Vec<Word>,
    out: &mut Vec<Vec<Polynomial>>,
    seen: &mut BTreeSet<Vec<Word>>,
    cap: usize,
    capped: &mut bool,
) -> Result<()> {
    let field = gb.field();
    let m = FreeModule::algebra();
    for i in start..words.len() {
        if out.len() >= cap {
            *capped = true;
            return Ok(());
        }
        let w = &words[i];
        if !chosen.is_empty() {
            let gens: Vec<_> = chosen
                .iter()
                .map(|u| m.embed(0, &Polynomial::monomial(field, u.clone())))
                .collect();
            let basis = complete_right(&m, &gens, gb, w.degree())?;
            if basis.contains(&m.embed(0, &Polynomial::monomial(field, w.clone())), gb)? {
                continue;
            }
        }
        chosen.push(w.clone());
        let mut key = chosen.clone();
        key.sort();
        if seen.insert(key) {
            out.push(chosen.iter().map(|u| Polynomial::monomial(field, u.clone())).collect());
        }
        dfs(gb, words, i + 1, chosen, out, seen, cap, capped)?;
        chosen.pop();
        if *capped {
            return Ok(());
        }
    }
    Ok(())
}

/// Seeded random right ideals with one or two generators of degree
/// `1..=degree`, each a dense combination of normal words with coefficients
/// in `-2..=2`.
pub fn sample_ideals(gb: &GroebnerBasis, degree: u32, count: usize, seed: u64) -> Result<Vec<Vec<Polynomial>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = gb.field();
    let mut out = Vec::new();
    if degree == 0 {
        return Ok(out);
    }
    let mut words = Vec::new();
    for d in 0..=degree {
        words.push(if d == 0 { Vec::new() } else { gb.normal_words(d)? });
    }
    let mut attempts = 0;
    while out.len() < count && attempts < count * 20 {
        attempts += 1;
        let k = rng.gen_range(1..=2);
        let mut gens = Vec::new();
        for _ in 0..k {
            let d = rng.gen_range(1..=degree) as usize;
            let mut p = Polynomial::zero(field);
            for w in &words[d] {
                let c: i64 = rng.gen_range(-2..=2);
                if c != 0 {
                    p.add_term(w.clone(), &field.from_i64(c));
                }
            }
            if !p.is_zero() {
                gens.push(p);
            }
        }
        if !gens.is_empty() {
            out.push(gens);
        }
    }
    Ok(out)
}

/// Minimal generators of one ideal with its first syzygy degrees.
pub fn ideal_record(kind: IdealKind, gens: &[Polynomial], gb: &GroebnerBasis, bound: u32) -> Result<IdealRecord> {
    let generators = minimize_ideal(gens, gb)?;
    let m = generators.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let eq = EquationInstance::over_algebra(&generators, bound);
    let s = solve_linear_equation(&eq, gb)?;
    let certified = super::verify_syzygies(&eq, &s, gb)?;
    Ok(IdealRecord {
        kind,
        m,
        m1: s.max_degree(),
        syzygy_degrees: s.degrees.clone(),
        certified,
        complete: s.complete,
        generators,
    })
}

/// Enumerate and sample ideals, then check the inequalities on each one and
/// on pairs of them.
pub fn coherence_probe(gb: &GroebnerBasis, config: &ProbeConfig) -> Result<ProbeReport> {
    let d = config.degree;
    let bound = config.bound;
    let mut report = ProbeReport {
        config: config.clone(),
        ideals: Vec::new(),
        pairs: Vec::new(),
        d_r: None,
        d_ann: None,
        d_cap: None,
        max_excess: None,
        enumeration_capped: false,
        pairs_capped: false,
        violations: Vec::new(),
    };
    if d == 0 {
        return Ok(report);
    }
    let (monomial, capped) = enumerate_monomial_ideals(gb, d, config.max_ideals)?;
    report.enumeration_capped = capped;
    for gens in &monomial {
        report.ideals.push(ideal_record(IdealKind::Monomial, gens, gb, bound)?);
    }
    for gens in sample_ideals(gb, d, config.samples, config.seed)? {
        report.ideals.push(ideal_record(IdealKind::Sampled, &gens, gb, bound)?);
    }
    for (i, r) in report.ideals.iter().enumerate() {
        if !r.certified {
            report
                .violations
                .push(format!("ideal {i}: syzygy failed to reduce to zero"));
        }
        report.d_r = omax(report.d_r, r.m1);
        if let Some(m1) = r.m1 {
            report.max_excess = omax(report.max_excess, Some(m1.saturating_sub(r.m)));
        }
        if r.generators.len() == 1 {
            report.d_ann = omax(report.d_ann, r.m1);
        }
    }

    let n = report.ideals.len();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    if pairs.len() > config.max_pairs {
        report.pairs_capped = true;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
        pairs.shuffle(&mut rng);
        pairs.truncate(config.max_pairs);
        pairs.sort();
    }
    for (a, b) in pairs {
        let (ia, ib) = (&report.ideals[a], &report.ideals[b]);
        let cap = intersect_ideals(&ia.generators, &ib.generators, gb, bound)?;
        let mut both = ia.generators.clone();
        both.extend(ib.generators.iter().cloned());
        let sum = ideal_record(IdealKind::Sampled, &both, gb, bound)?;
        let m_cap = cap.max_degree();
        let inters_holds = m_cap.is_none_or(|c| c <= sum.m1.unwrap_or(0).max(ia.m).max(ib.m));
        let sum_holds = sum.m1.is_none_or(|s| Some(s) <= omax(omax(ia.m1, ib.m1), m_cap));
        if !inters_holds {
            report.violations.push(format!(
                "pair ({a}, {b}): m(I∩J) = {m_cap:?} exceeds the intersection bound"
            ));
        }
        if !sum_holds {
            report
                .violations
                .push(format!("pair ({a}, {b}): m1(I+J) = {:?} exceeds the sum bound", sum.m1));
        }
        report.d_cap = omax(report.d_cap, m_cap);
        report.pairs.push(PairRecord {
            first: a,
            second: b,
            m_cap,
            m1_sum: sum.m1,
            m_sum: sum.m,
            inters_holds,
            sum_holds,
        });
    }
    // aggregate consequences
    if report.d_ann > report.d_r {
        report.violations.push("observed D^Ann(d) exceeds observed D(d)".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_presentation;
    use crate::groebner::complete_two_sided;

    fn gb(text: &str, bound: u32) -> GroebnerBasis {
        let p = parse_presentation(text).unwrap();
        complete_two_sided(&p, bound).unwrap()
    }

    #[test]
    fn monomial_enumeration_counts() {
        let g = gb("gens x", 4);
        // (x) only: x^2 lies in xR
        let (ideals, capped) = enumerate_monomial_ideals(&g, 2, 100).unwrap();
        assert!(!capped);
        assert_eq!(ideals.len(), 2);
        let g = gb("gens x y", 4);
        let (ideals, _) = enumerate_monomial_ideals(&g, 1, 100).unwrap();
        assert_eq!(ideals.len(), 3);
    }

    #[test]
    fn free_algebra_probe() {
        let g = gb("gens x y", 8);
        let r = coherence_probe(&g, &ProbeConfig::new(3, 8)).unwrap();
        assert!(r.d_r.is_none());
        assert!(r.all_hold());
    }

    #[test]
    fn zero_degree_is_empty() {
        let g = gb("gens x y; rels y*x", 8);
        let r = coherence_probe(&g, &ProbeConfig::new(0, 8)).unwrap();
        assert!(r.ideals.is_empty());
    }

    #[test]
    fn sampling_is_reproducible() {
        let g = gb("gens x y; rels y*x - x*y", 6);
        assert_eq!(sample_ideals(&g, 2, 5, 7).unwrap(), sample_ideals(&g, 2, 5, 7).unwrap());
    }

    #[test]
    fn syzygies_below_the_top_generator() {
        let p = parse_presentation("gens x y; order deglex y > x; rels y*x").unwrap();
        let g = complete_two_sided(&p, 8).unwrap();
        let gens = vec![p.poly("y").unwrap(), p.poly("x*x*x").unwrap()];
        let r = ideal_record(IdealKind::Sampled, &gens, &g, 8).unwrap();
        assert_eq!((r.m, r.m1), (3, Some(2)));
        let rep = coherence_probe(&g, &ProbeConfig::new(3, 8)).unwrap();
        assert!(rep.all_hold());
    }
}
