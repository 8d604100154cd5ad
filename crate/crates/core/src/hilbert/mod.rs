//! Hilbert series: truncated counts of normal words for any presentation,
//! exact rational forms for monomial algebras, and Anick chains.

mod chains;

pub use chains::{
    anick_chains, euler_check, module_chains, poincare_extension_check, rate_estimate, AnickChainSet, Chain, ChainKind,
    PoincareCheck, RateEstimate,
};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::automaton::ForbiddenAutomaton;
use crate::error::{Error, Result};
use crate::groebner::{complete_two_sided, GroebnerBasis};
use crate::intpoly::IntPoly;
use crate::poly::Polynomial;
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Coefficients `c_0, …, c_D` of a Hilbert series, exact through `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    pub coefficients: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn new(coefficients: Vec<BigInt>) -> TruncatedSeries {
        TruncatedSeries { coefficients }
    }

    pub fn from_i64(c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn bound(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn from_basis(gb: &GroebnerBasis, bound: u32) -> Result<TruncatedSeries> {
        Ok(TruncatedSeries::new(gb.dimensions(bound)?))
    }

    /// Every `n`-th coefficient.
    pub fn veronese(&self, n: usize) -> TruncatedSeries {
        assert!(n >= 1);
        TruncatedSeries::new(self.coefficients.iter().step_by(n).cloned().collect())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Graded dimensions `dim A_0, …, dim A_D` from a Gröbner basis computed to `D`.
pub fn hilbert_truncated(p: &Presentation, bound: u32) -> Result<TruncatedSeries> {
    let gb = complete_two_sided(p, bound.max(p.max_relation_degree()))?;
    TruncatedSeries::from_basis(&gb, bound)
}

/// `numerator / denominator` with integer coefficients, no common factor and
/// `denominator(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    numerator: IntPoly,
    denominator: IntPoly,
}

impl RationalSeries {
    /// Normalize; `None` if the denominator vanishes at 0 after reduction
    /// (the quotient is then not an integer power series).
    pub fn new(numerator: IntPoly, denominator: IntPoly) -> Option<RationalSeries> {
        if denominator.is_zero() {
            return None;
        }
        if numerator.is_zero() {
            return Some(RationalSeries {
                numerator,
                denominator: IntPoly::one(),
            });
        }
        let g = numerator.gcd(&denominator);
        let mut num = numerator.div_exact(&g)?;
        let mut den = denominator.div_exact(&g)?;
        let c = num.content().gcd(&den.content());
        num = num.div_exact_scalar(&c);
        den = den.div_exact_scalar(&c);
        let d0 = den.coeff(0);
        if d0.is_negative() {
            num = num.neg();
            den = den.neg();
        }
        if !den.coeff(0).is_one() {
            return None;
        }
        Some(RationalSeries {
            numerator: num,
            denominator: den,
        })
    }

    pub fn polynomial(p: IntPoly) -> RationalSeries {
        RationalSeries::new(p, IntPoly::one()).unwrap()
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.denominator
    }

    pub fn expand(&self, max: usize) -> Vec<BigInt> {
        self.numerator.series_div(&self.denominator, max)
    }

    pub fn truncated(&self, max: usize) -> TruncatedSeries {
        TruncatedSeries::new(self.expand(max))
    }

    /// Minimal rational form of a sequence via Berlekamp–Massey, requiring
    /// linear complexity at most `cap` and at least `cap + 3` terms to spare
    /// as a check.
    pub fn reconstruct(terms: &[BigInt], cap: usize) -> Option<RationalSeries> {
        let (conn, l) = berlekamp_massey(terms);
        if l > cap || 2 * l + 2 > terms.len() {
            return None;
        }
        let lcm = conn.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let den = IntPoly::new(
            conn.iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        );
        let s = IntPoly::new(terms.iter().take(l.max(1)).cloned().collect());
        let num = if l == 0 {
            IntPoly::zero()
        } else {
            s.mul(&den).truncate(l - 1)
        };
        let r = RationalSeries::new(num, den)?;
        if r.expand(terms.len() - 1) != terms {
            return None;
        }
        Some(r)
    }

    /// Every `n`-th coefficient, as a rational series.
    pub fn veronese(&self, n: usize) -> RationalSeries {
        assert!(n >= 1);
        if n == 1 {
            return self.clone();
        }
        let dp = self.numerator.degree().unwrap_or(0);
        let dq = self.denominator.degree().unwrap_or(0);
        let cap = dp + dq + 1;
        let terms = 2 * cap + 6;
        let full = self.expand(terms * n);
        let section: Vec<BigInt> = full.into_iter().step_by(n).take(terms).collect();
        RationalSeries::reconstruct(&section, cap).expect("sections of rational series are rational")
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &IntPoly| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.denominator.is_one() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "{} / {}", wrap(&self.numerator), wrap(&self.denominator))
    }
}

/// Connection polynomial `C` (with `C(0) = 1`) and linear complexity `L` of
/// the shortest recurrence `Σ_{i≤L} C_i s_{n-i} = 0` for `n ≥ L`.
pub fn berlekamp_massey(s: &[BigInt]) -> (Vec<BigRational>, usize) {
    let one = BigRational::one();
    let mut c = vec![one.clone()];
    let mut b = vec![one.clone()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = one;
    for n in 0..s.len() {
        let mut d = BigRational::from_integer(s[n].clone());
        for i in 1..=l.min(c.len() - 1) {
            d += &c[i] * BigRational::from_integer(s[n - i].clone());
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    (c, l)
}

/// Leading words reduced to an antichain under the factor order.
pub fn antichain(words: &[Word]) -> Vec<Word> {
    let mut v: Vec<Word> = words.to_vec();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v.dedup();
    let mut out: Vec<Word> = Vec::new();
    for w in v {
        if !out.iter().any(|u| w.contains(u)) {
            out.push(w);
        }
    }
    out.sort();
    out
}

fn monomial_words(p: &Presentation) -> Result<Vec<Word>> {
    if !p.is_monomial() {
        return Err(Error::NotMonomial);
    }
    Ok(antichain(
        &p.relations()
            .iter()
            .map(|r| r.leading_word().unwrap().clone())
            .collect::<Vec<_>>(),
    ))
}

/// Ufnarovski graph of a set of forbidden words: vertices are the normal
/// words of length `ℓ - 1`, where `ℓ` is the longest forbidden length, and
/// each normal one-letter extension `u a` gives an edge to its suffix.
#[derive(Clone, Debug)]
pub struct UfnarovskiGraph {
    pub vertices: Vec<Vec<Letter>>,
    /// `(from, to, letter)`.
    pub edges: Vec<(usize, usize, Letter)>,
    pub max_forbidden_length: usize,
}

impl UfnarovskiGraph {
    pub fn new(alphabet: usize, forbidden: &[Word]) -> UfnarovskiGraph {
        let unit = vec![1; alphabet];
        let aut = ForbiddenAutomaton::new(&unit, forbidden);
        let ell = forbidden.iter().map(|w| w.len()).max().unwrap_or(0);
        let k = ell.saturating_sub(1);
        let mut vertices = Vec::new();
        let mut cur = Vec::new();
        collect_normal(&aut, aut.start(), k, &mut cur, &mut vertices);
        vertices.sort();
        let index: std::collections::HashMap<Vec<Letter>, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut edges = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            for a in 0..alphabet as Letter {
                let mut ext = v.clone();
                ext.push(a);
                if aut.run(aut.start(), &ext).is_none() {
                    continue;
                }
                let to = if k == 0 { Vec::new() } else { ext[1..].to_vec() };
                edges.push((i, index[&to], a));
            }
        }
        UfnarovskiGraph {
            vertices,
            edges,
            max_forbidden_length: ell,
        }
    }

    pub fn transfer_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0u64; n]; n];
        for &(a, b, _) in &self.edges {
            m[a][b] += 1;
        }
        m
    }

    /// Number of walks of each length `0..=max`, over all start vertices.
    pub fn walk_counts(&self, max: usize) -> Vec<BigInt> {
        let n = self.vertices.len();
        let mut cur = vec![BigInt::one(); n];
        let mut out = vec![cur.iter().sum()];
        for _ in 0..max {
            let mut next = vec![BigInt::zero(); n];
            for &(a, b, _) in &self.edges {
                next[b] += &cur[a];
            }
            cur = next;
            out.push(cur.iter().sum());
        }
        out
    }
}

fn collect_normal(
    aut: &ForbiddenAutomaton,
    state: usize,
    len: usize,
    cur: &mut Vec<Letter>,
    out: &mut Vec<Vec<Letter>>,
) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for a in 0..aut.alphabet_size() as Letter {
        if let Some(t) = aut.step(state, a) {
            cur.push(a);
            collect_normal(aut, t, len, cur, out);
            cur.pop();
        }
    }
}

/// The monomial algebra on the leading words of a complete basis. It has
/// the same Hilbert series as the algebra itself.
pub fn associated_monomial(p: &Presentation, gb: &GroebnerBasis) -> Result<Presentation> {
    if p.is_monomial() {
        return Ok(p.clone());
    }
    if !gb.is_complete() {
        return Err(Error::IncompleteBasis);
    }
    let field = p.field();
    p.with_relations(
        gb.leading_words()
            .into_iter()
            .map(|w| Polynomial::monomial(field, w))
            .collect(),
    )
}

/// Exact Hilbert series of a monomial algebra, checked against direct counts
/// through `2·deg(den) + 5` (and further, up to the reconstruction window).
pub fn rational_series_monomial(p: &Presentation) -> Result<RationalSeries> {
    let forbidden = monomial_words(p)?;
    let weights = p.weights();
    let graph = UfnarovskiGraph::new(weights.len(), &forbidden);
    let wmax = weights.iter().copied().max().unwrap_or(1) as usize;
    let cap = (graph.vertices.len() + graph.max_forbidden_length + 1) * wmax;
    let aut = ForbiddenAutomaton::new(&weights, &forbidden);
    let terms = aut.count((2 * cap + 6) as u32);
    let r = RationalSeries::reconstruct(&terms, cap)
        .ok_or_else(|| Error::Budget("rational reconstruction failed".into()))?;
    let check = 2 * r.denominator().degree().unwrap_or(0) + 5;
    if r.expand(check) != aut.count(check as u32) {
        return Err(Error::Budget("rational form disagrees with normal-word counts".into()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_presentation;

    fn rs(text: &str) -> String {
        rational_series_monomial(&parse_presentation(text).unwrap())
            .unwrap()
            .to_string()
    }

    #[test]
    fn truncated_examples() {
        let p = parse_presentation("gens x y").unwrap();
        assert_eq!(
            hilbert_truncated(&p, 5).unwrap(),
            TruncatedSeries::from_i64(&[1, 2, 4, 8, 16, 32])
        );
        let p = parse_presentation("gens x y; order deglex y > x; rels y*x").unwrap();
        assert_eq!(
            hilbert_truncated(&p, 5).unwrap(),
            TruncatedSeries::from_i64(&[1, 2, 3, 4, 5, 6])
        );
        let p = parse_presentation("gens x y; order deglex y > x; rels x*y - y*x").unwrap();
        assert_eq!(
            hilbert_truncated(&p, 5).unwrap(),
            TruncatedSeries::from_i64(&[1, 2, 3, 4, 5, 6])
        );
    }

    #[test]
    fn rational_examples() {
        assert_eq!(rs("gens x y"), "1 / (1 - 2z)");
        assert_eq!(rs("gens x y z"), "1 / (1 - 3z)");
        assert_eq!(rs("gens x y; order deglex y > x; rels y*x"), "1 / (1 - 2z + z^2)");
        assert_eq!(rs("gens x y; rels x*x, x*y, y*x, y*y"), "1 + 2z");
        assert_eq!(rs("gens x; rels x^2"), "1 + z");
        assert!(matches!(
            rational_series_monomial(&parse_presentation("gens x y; rels x*y - y*x").unwrap()),
            Err(Error::NotMonomial)
        ));
    }

    #[test]
    fn weighted_rational() {
        // x of degree 2, y of degree 1, free: 1 / (1 - z - z^2)
        assert_eq!(rs("gens x:2 y:1"), "1 / (1 - z - z^2)");
    }

    #[test]
    fn berlekamp_massey_fibonacci() {
        let s: Vec<BigInt> = [1, 1, 2, 3, 5, 8, 13, 21].map(BigInt::from).to_vec();
        let (c, l) = berlekamp_massey(&s);
        assert_eq!(l, 2);
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn veronese_examples() {
        let geo = RationalSeries::new(IntPoly::one(), IntPoly::from_i64(&[1, -1])).unwrap();
        assert_eq!(geo.veronese(2), geo);
        let two = RationalSeries::new(IntPoly::one(), IntPoly::from_i64(&[1, -2])).unwrap();
        assert_eq!(two.veronese(2).to_string(), "1 / (1 - 4z)");
        assert_eq!(two.veronese(1), two);
        let t = TruncatedSeries::from_i64(&[1, 2, 4, 8, 16]);
        assert_eq!(t.veronese(2), TruncatedSeries::from_i64(&[1, 4, 16]));
    }

    #[test]
    fn ufnarovski_walks_count_normal_words() {
        let p = parse_presentation("gens x y; order deglex y > x; rels y*x, x*x*y").unwrap();
        let forbidden = monomial_words(&p).unwrap();
        let g = UfnarovskiGraph::new(2, &forbidden);
        let ell = g.max_forbidden_length;
        let aut = ForbiddenAutomaton::new(&[1, 1], &forbidden);
        let counts = aut.count(12);
        let walks = g.walk_counts(12 - (ell - 1));
        for n in 0..walks.len() {
            assert_eq!(walks[n], counts[n + ell - 1]);
        }
    }
}
