//! Anick chains of monomial algebras and cyclic monomial modules.
//!
//! For a monomial algebra the `i`-chains of degree `n` form a basis of
//! `Tor_{i+1}(k, k)_n`. A chain is extended by a word `t` when the previous
//! tail `s` followed by `t` ends in an obstruction that starts inside `s`,
//! and `s t` with its last letter removed has no obstruction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{monomial_words, TruncatedSeries};
use crate::automaton::ForbiddenAutomaton;
use crate::error::{Error, Result};
use crate::module::{FreeModule, FreeModuleElement, ModuleTerm};
use crate::presentation::{trivial_extension, ModulePresentation, Presentation};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub word: Word,
    /// The tail is `word[tail_start..]`.
    pub tail_start: usize,
}

impl Chain {
    pub fn degree(&self) -> u32 {
        self.word.degree()
    }

    pub fn tail(&self) -> &[Letter] {
        &self.word.letters()[self.tail_start..]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// `i`-chains give `Tor_{i+1}(k, k)`; generators are the 0-chains.
    Algebra,
    /// `i`-chains give `Tor_i(M, k)`; the module generator is the 0-chain.
    Module,
}

#[derive(Clone, Debug)]
pub struct AnickChainSet {
    pub kind: ChainKind,
    /// `chains[i]`: the `i`-chains of degree at most `bound`.
    pub chains: Vec<Vec<Chain>>,
    pub bound: u32,
    /// Some `i`-chain extension exceeded the bound at index `i`.
    pub cut: Vec<bool>,
    /// Extra degree carried by every chain (module generators).
    pub offset: u32,
}

impl AnickChainSet {
    pub fn max_index(&self) -> usize {
        self.chains.len().saturating_sub(1)
    }

    /// Indices `i` whose chain list is known to be complete in all degrees.
    pub fn complete_through(&self) -> Option<usize> {
        match self.cut.iter().position(|&c| c) {
            Some(0) => None,
            Some(i) => Some(i - 1),
            None => Some(self.max_index()),
        }
    }

    /// Counts of `i`-chains by degree, `0..=bound`.
    pub fn counts(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.bound as usize + 1];
        if let Some(list) = self.chains.get(i) {
            for c in list {
                v[(c.degree() + self.offset) as usize] += 1;
            }
        }
        v
    }

    fn chain_index(&self, i: usize) -> Option<usize> {
        match self.kind {
            ChainKind::Algebra => i.checked_sub(1),
            ChainKind::Module => Some(i),
        }
    }

    /// `H_i(z)` through the bound.
    pub fn homology(&self, i: usize) -> TruncatedSeries {
        if self.kind == ChainKind::Module {
            return TruncatedSeries::new(self.counts(i));
        }
        if i == 0 {
            let mut v = vec![BigInt::zero(); self.bound as usize + 1];
            v[self.offset as usize] = BigInt::one();
            return TruncatedSeries::new(v);
        }
        TruncatedSeries::new(self.counts(i - 1))
    }

    /// `m_i`: largest degree in `H_i`, when `H_i` is known to be complete
    /// and nonzero.
    pub fn m(&self, i: usize) -> Option<u32> {
        let Some(k) = self.chain_index(i) else {
            return Some(0);
        };
        if self.complete_through().is_none_or(|c| k > c) {
            return None;
        }
        self.chains[k].iter().map(|c| c.degree() + self.offset).max()
    }

    /// Chain lists run out at a known index: finite global dimension.
    pub fn terminates(&self) -> bool {
        match self.complete_through() {
            Some(c) => self.chains[..=c].iter().any(|l| l.is_empty()),
            None => false,
        }
    }
}

fn extend(
    chains: &[Chain],
    forbidden: &[Word],
    aut: &ForbiddenAutomaton,
    weights: &[u32],
    bound: u32,
) -> (Vec<Chain>, bool) {
    let mut out = Vec::new();
    let mut cut = false;
    for c in chains {
        let s = c.tail();
        for f in forbidden {
            let fl = f.letters();
            for j in 0..s.len() {
                let overlap = s.len() - j;
                if fl.len() <= overlap || s[j..] != fl[..overlap] {
                    continue;
                }
                let t = &fl[overlap..];
                let mut probe = s.to_vec();
                probe.extend_from_slice(&t[..t.len() - 1]);
                if aut.run(aut.start(), &probe).is_none() {
                    continue;
                }
                let tail = Word::from_letters(t.to_vec(), weights);
                let word = c.word.concat(&tail);
                if word.degree() > bound {
                    cut = true;
                    continue;
                }
                out.push(Chain {
                    tail_start: c.word.len(),
                    word,
                });
            }
        }
    }
    out.sort_by(|a, b| a.word.cmp(&b.word));
    out.dedup();
    (out, cut)
}

fn grow(
    roots: Vec<Chain>,
    root_cut: bool,
    forbidden: &[Word],
    weights: &[u32],
    i_max: usize,
    bound: u32,
    offset: u32,
) -> AnickChainSet {
    let aut = ForbiddenAutomaton::new(weights, forbidden);
    let mut chains = vec![roots];
    let mut cut = vec![root_cut];
    for _ in 0..i_max {
        let (next, c) = extend(
            chains.last().unwrap(),
            forbidden,
            &aut,
            weights,
            bound.saturating_sub(offset),
        );
        chains.push(next);
        cut.push(c);
    }
    AnickChainSet {
        kind: ChainKind::Algebra,
        chains,
        bound,
        cut,
        offset,
    }
}

/// All `i`-chains of degree at most `bound` for `i ≤ i_max`.
pub fn anick_chains(p: &Presentation, i_max: usize, bound: u32) -> Result<AnickChainSet> {
    let forbidden = monomial_words(p)?;
    let weights = p.weights();
    let mut roots = Vec::new();
    let mut cut = false;
    for (a, &w) in weights.iter().enumerate() {
        if w > bound {
            cut = true;
            continue;
        }
        roots.push(Chain {
            word: Word::letter(a as Letter, &weights),
            tail_start: 0,
        });
    }
    Ok(grow(roots, cut, &forbidden, &weights, i_max, bound, 0))
}

/// Chains of the cyclic module `R / (w_1 R + … + w_k R)` with generator in
/// degree `generator_degree`; `i`-chains give `Tor_i(M, k)`, with the
/// generator itself as the only 0-chain.
pub fn module_chains(
    p: &Presentation,
    words: &[Word],
    generator_degree: u32,
    i_max: usize,
    bound: u32,
) -> Result<AnickChainSet> {
    let forbidden = monomial_words(p)?;
    let weights = p.weights();
    let aut = ForbiddenAutomaton::new(&weights, &forbidden);
    // minimal monomial generators of the right ideal, nonzero in R
    let mut ws: Vec<Word> = words
        .iter()
        .filter(|w| aut.is_normal(w) && !w.is_empty())
        .cloned()
        .collect();
    ws.sort();
    ws.dedup();
    let gens: Vec<Word> = ws
        .iter()
        .filter(|w| !ws.iter().any(|u| u != *w && w.starts_with(u)))
        .cloned()
        .collect();
    let mut set = AnickChainSet {
        kind: ChainKind::Module,
        chains: vec![vec![Chain {
            word: Word::empty(),
            tail_start: 0,
        }]],
        bound,
        cut: vec![generator_degree > bound],
        offset: generator_degree,
    };
    if i_max == 0 {
        return Ok(set);
    }
    let mut first = Vec::new();
    let mut cut = false;
    for w in gens {
        if w.degree() + generator_degree > bound {
            cut = true;
        } else {
            first.push(Chain { word: w, tail_start: 0 });
        }
    }
    let rest = grow(first, cut, &forbidden, &weights, i_max - 1, bound, generator_degree);
    set.chains.extend(rest.chains);
    set.cut.extend(rest.cut);
    Ok(set)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateEstimate {
    pub value: BigRational,
    /// Homological index attaining the value, if it is attained in range.
    pub attained_at: Option<usize>,
    /// The value is claimed exact (finite global dimension, or eventually
    /// periodic chain degrees); otherwise it is a lower bound.
    pub exact: bool,
    /// `m_i` for `i = 2, 3, …` while known.
    pub m: Vec<u32>,
}

/// `max_i (m_i - 1) / (i - 1)` over the computed range `i ≥ 2`.
pub fn rate_estimate(chains: &AnickChainSet) -> Result<RateEstimate> {
    if chains.max_index() < 2 {
        return Err(Error::InvalidArgument("rate needs chains through index 2".into()));
    }
    let mut m = Vec::new();
    let mut best: Option<(BigRational, usize)> = None;
    let mut ended = false;
    let top = chains.complete_through().map_or(0, |c| c + 1);
    for i in 2..=top {
        match chains.m(i) {
            Some(mi) => {
                m.push(mi);
                let v = BigRational::new(BigInt::from(mi) - 1, BigInt::from(i - 1));
                if best.as_ref().is_none_or(|(b, _)| v > *b) {
                    best = Some((v, i));
                }
            }
            None => {
                ended = true;
                break;
            }
        }
    }
    let (value, at) = match best {
        Some((v, i)) => (v, Some(i)),
        None => (BigRational::zero(), None),
    };
    if ended {
        return Ok(RateEstimate {
            value,
            attained_at: at,
            exact: true,
            m,
        });
    }
    // periodic increments: the limit slope Δ/p bounds the tail
    let diffs: Vec<i64> = m.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    for p in 1..=diffs.len() / 3 {
        let tail = &diffs[diffs.len() - 3 * p..];
        if (p..tail.len()).all(|k| tail[k] == tail[k - p]) {
            let delta: i64 = tail[..p].iter().sum();
            let slope = BigRational::new(BigInt::from(delta), BigInt::from(p));
            return Ok(if slope > value {
                RateEstimate {
                    value: slope,
                    attained_at: None,
                    exact: true,
                    m,
                }
            } else {
                RateEstimate {
                    value,
                    attained_at: at,
                    exact: true,
                    m,
                }
            });
        }
    }
    Ok(RateEstimate {
        value,
        attained_at: at,
        exact: false,
        m,
    })
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); max + 1];
    for (i, x) in a.iter().enumerate().take(max + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(max + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(Σ (-1)^i H_i(z)) · R(z) - 1` through degree `bound`.
pub fn euler_check(p: &Presentation, bound: u32) -> Result<Vec<BigInt>> {
    let chains = anick_chains(p, bound as usize, bound)?;
    let forbidden = monomial_words(p)?;
    let counts = ForbiddenAutomaton::new(&p.weights(), &forbidden).count(bound);
    let max = bound as usize;
    let mut alt = vec![BigInt::zero(); max + 1];
    for i in 0..=chains.max_index() + 1 {
        let h = chains.homology(i);
        for (k, c) in h.coefficients.iter().enumerate() {
            if i % 2 == 0 {
                alt[k] += c;
            } else {
                alt[k] -= c;
            }
        }
    }
    let mut r = mul_trunc(&alt, &counts, max);
    r[0] -= 1;
    Ok(r)
}

/// Bigraded series as `[homological][internal]`.
pub type Bigraded = Vec<Vec<BigInt>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareCheck {
    /// `P_{C_M}` from the chains of the trivial extension.
    pub extension: Bigraded,
    /// `P_R / (1 - s P_M)` expanded.
    pub formula: Bigraded,
    pub residual: Bigraded,
}

impl PoincareCheck {
    pub fn vanishes(&self) -> bool {
        self.residual.iter().all(|row| row.iter().all(|c| c.is_zero()))
    }
}

fn poincare(chains: &AnickChainSet, s_max: usize) -> Bigraded {
    (0..=s_max).map(|i| chains.homology(i).coefficients).collect()
}

fn bi_mul(a: &Bigraded, b: &Bigraded, s_max: usize, t_max: usize) -> Bigraded {
    let mut out = vec![vec![BigInt::zero(); t_max + 1]; s_max + 1];
    for (i, ra) in a.iter().enumerate() {
        for (j, rb) in b.iter().enumerate() {
            if i + j > s_max {
                continue;
            }
            let prod = mul_trunc(ra, rb, t_max);
            for (k, c) in prod.into_iter().enumerate() {
                out[i + j][k] += c;
            }
        }
    }
    out
}

/// Compare the Poincaré series of `C_M = M ⊕ R`, for the cyclic monomial
/// module `M = R / (w_1 R + …)`, with `P_R / (1 - s P_M)` through
/// homological degree `s_max` and internal degree `bound`.
pub fn poincare_extension_check(p: &Presentation, words: &[Word], s_max: usize, bound: u32) -> Result<PoincareCheck> {
    let t_max = bound as usize;
    let module = FreeModule::new(vec![0]);
    let field = p.field();
    let relations = words
        .iter()
        .map(|w| FreeModuleElement::term(ModuleTerm::new(0, 0, w.clone()), field.one()))
        .collect();
    let te = trivial_extension(p, &ModulePresentation { module, relations })?;
    let gen_degree = te.degree_offset as u32;
    let ext_chains = anick_chains(&te.extended, s_max, bound)?;
    let r_chains = anick_chains(p, s_max, bound)?;
    let m_chains = module_chains(p, words, gen_degree, s_max, bound)?;
    let extension = poincare(&ext_chains, s_max);
    let pr = poincare(&r_chains, s_max);
    let pm = poincare(&m_chains, s_max);
    // s·P_M
    let mut spm: Bigraded = vec![vec![BigInt::zero(); t_max + 1]];
    spm.extend(pm.iter().take(s_max).cloned());
    // 1 + sP_M + (sP_M)^2 + …
    let mut geo: Bigraded = vec![vec![BigInt::zero(); t_max + 1]; s_max + 1];
    geo[0][0] = BigInt::one();
    let mut power = geo.clone();
    for _ in 0..s_max {
        power = bi_mul(&power, &spm, s_max, t_max);
        for (i, row) in power.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                geo[i][k] += c;
            }
        }
    }
    let formula = bi_mul(&pr, &geo, s_max, t_max);
    let residual = extension
        .iter()
        .zip(&formula)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
        .collect();
    Ok(PoincareCheck {
        extension,
        formula,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_presentation;

    fn degrees(set: &AnickChainSet, i: usize) -> Vec<u32> {
        set.chains[i].iter().map(|c| c.degree()).collect()
    }

    #[test]
    fn chains_of_yx() {
        let p = parse_presentation("gens x y; order deglex y > x; rels y*x").unwrap();
        let c = anick_chains(&p, 3, 10).unwrap();
        assert_eq!(degrees(&c, 1), vec![2]);
        assert!(c.chains[2].is_empty());
        assert!(c.terminates());
    }

    #[test]
    fn chains_of_powers() {
        let p = parse_presentation("gens x; rels x^2").unwrap();
        let c = anick_chains(&p, 4, 10).unwrap();
        for i in 0..=4 {
            assert_eq!(degrees(&c, i), vec![i as u32 + 1]);
        }
        let p = parse_presentation("gens x; rels x^3").unwrap();
        let c = anick_chains(&p, 4, 12).unwrap();
        let m: Vec<u32> = (1..=5).map(|i| c.m(i).unwrap()).collect();
        assert_eq!(m, vec![1, 3, 4, 6, 7]);
    }

    #[test]
    fn rates() {
        let rate = |text: &str| {
            let p = parse_presentation(text).unwrap();
            rate_estimate(&anick_chains(&p, 8, 20).unwrap()).unwrap()
        };
        let r = rate("gens x y; order deglex y > x; rels y*x");
        assert_eq!(r.value, BigRational::one());
        assert!(r.exact);
        let r = rate("gens x; rels x^2");
        assert_eq!(r.value, BigRational::one());
        assert!(r.exact);
        let r = rate("gens x; rels x^3");
        assert_eq!(r.value, BigRational::from_integer(2.into()));
        assert_eq!(r.attained_at, Some(2));
        assert!(r.exact);
    }

    #[test]
    fn euler_residuals_vanish() {
        for text in [
            "gens x y",
            "gens x y; rels y*x",
            "gens x; rels x^2",
            "gens x; rels x^3",
            "gens x y; rels x*x*y, y*x*x",
        ] {
            let p = parse_presentation(text).unwrap();
            assert!(euler_check(&p, 12).unwrap().iter().all(|c| c.is_zero()), "{text}");
        }
    }

    #[test]
    fn poincare_examples() {
        let p = parse_presentation("gens x").unwrap();
        let x = p.word("x").unwrap();
        let k = poincare_extension_check(&p, &[x], 3, 6).unwrap();
        assert!(k.vanishes());
        assert_eq!(k.extension[2][2], BigInt::from(3));
        let free = poincare_extension_check(&p, &[], 3, 6).unwrap();
        assert!(free.vanishes());
        let trivial = poincare_extension_check(&p, &[], 0, 6).unwrap();
        assert!(trivial.vanishes());
    }
}
