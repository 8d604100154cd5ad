//! r-processing: certificates, exhaustive verification, and the probe of
//! `m₁(I) <= m(I) + d` and `m₁(I) <= m(I) + 2r`.

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::Polynomial;
use crate::syzygy::{enumerate_monomial_ideals, ideal_record, sample_ideals, IdealKind, IdealRecord, ProbeConfig};
use crate::word::Word;

/// Upper limit on `(p, q)` pairs examined by [`rproc_verify`].
pub const RPROC_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Monomial basis whose elements have degree at most `r + 1`.
    MonomialDegree,
    /// Acyclic overlap graph; `r` is a conservative guess from the longest
    /// path.
    AcyclicOverlapGraph { longest_path: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RProcessingCertificate {
    pub r: u32,
    pub basis: Vec<Polynomial>,
    pub evidence: Evidence,
    /// `r` is not proven until [`rproc_verify`] passes.
    pub heuristic: bool,
    /// Degree through which the identity was checked exhaustively.
    pub verified_through: Option<u32>,
}

impl RProcessingCertificate {
    /// Record a passing verification at this certificate's `r`.
    pub fn upgrade(&mut self, verdict: &RProcVerdict) -> bool {
        match verdict {
            RProcVerdict::Pass { r, bound, .. } if *r == self.r => {
                self.heuristic = false;
                self.verified_through = Some(*bound);
                true
            }
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateOutcome {
    Certified(RProcessingCertificate),
    /// The overlap graph has this cycle of basis indices.
    Refused {
        cycle: Vec<usize>,
    },
}

fn overlaps(u: &Word, l: &Word) -> bool {
    u.contains(l) || l.contains(u) || !u.proper_overlaps(l).is_empty() || !l.proper_overlaps(u).is_empty()
}

/// Arrows `i -> j` when a non-leading word of `g_i` overlaps the leading
/// word of `g_j`.
fn overlap_graph(elements: &[Polynomial]) -> Vec<Vec<usize>> {
    let leads: Vec<&Word> = elements.iter().map(|g| g.leading_word().unwrap()).collect();
    elements
        .iter()
        .map(|g| {
            (0..leads.len())
                .filter(|&j| g.terms().rev().skip(1).any(|(u, _)| overlaps(u, leads[j])))
                .collect()
        })
        .collect()
}

fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    // 0 unvisited, 1 on stack, 2 done
    fn visit(v: usize, adj: &[Vec<usize>], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for &w in &adj[v] {
            if state[w] == 1 {
                let at = stack.iter().position(|&x| x == w).unwrap();
                return Some(stack[at..].to_vec());
            }
            if state[w] == 0 {
                if let Some(c) = visit(w, adj, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    let mut state = vec![0u8; adj.len()];
    for v in 0..adj.len() {
        if state[v] == 0 {
            if let Some(c) = visit(v, adj, &mut state, &mut Vec::new()) {
                return Some(c);
            }
        }
    }
    None
}

/// Edges on the longest path of an acyclic graph.
fn longest_path(adj: &[Vec<usize>]) -> usize {
    fn depth(v: usize, adj: &[Vec<usize>], memo: &mut [Option<usize>]) -> usize {
        if let Some(d) = memo[v] {
            return d;
        }
        let d = adj[v].iter().map(|&w| depth(w, adj, memo) + 1).max().unwrap_or(0);
        memo[v] = Some(d);
        d
    }
    let mut memo = vec![None; adj.len()];
    (0..adj.len()).map(|v| depth(v, adj, &mut memo)).max().unwrap_or(0)
}

/// Certificate from the shape of a finite Gröbner basis.
pub fn rproc_certificate(gb: &GroebnerBasis) -> Result<CertificateOutcome> {
    if !gb.is_complete() {
        return Err(Error::IncompleteBasis);
    }
    let elements = gb.elements().to_vec();
    let max_degree = elements.iter().filter_map(|g| g.degree()).max().unwrap_or(1);
    if elements.iter().all(|g| g.is_monomial()) {
        return Ok(CertificateOutcome::Certified(RProcessingCertificate {
            r: max_degree.max(1) - 1,
            basis: elements,
            evidence: Evidence::MonomialDegree,
            heuristic: false,
            verified_through: None,
        }));
    }
    let adj = overlap_graph(&elements);
    if let Some(cycle) = find_cycle(&adj) {
        return Ok(CertificateOutcome::Refused { cycle });
    }
    let longest = longest_path(&adj);
    Ok(CertificateOutcome::Certified(RProcessingCertificate {
        r: (longest as u32 + 1) * max_degree,
        basis: elements,
        evidence: Evidence::AcyclicOverlapGraph { longest_path: longest },
        heuristic: true,
        verified_through: None,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RProcVerdict {
    Pass { r: u32, bound: u32, checked: usize },
    Counterexample { p: Word, q: Word, q1: Word, q2: Word },
}

/// Check `N(pq) = N(pq₁) q₂` for all normal monomials `p, q` of positive
/// degree with `deg p + deg q <= bound`, where `q₁` is the longest prefix of
/// `q` of degree at most `r`. Pairs are visited by total degree, then `p`,
/// then `q`, so the first counterexample is canonical.
pub fn rproc_verify(gb: &GroebnerBasis, r: u32, bound: u32) -> Result<RProcVerdict> {
    if !gb.is_complete() {
        return Err(Error::IncompleteBasis);
    }
    if bound < r + 2 {
        return Err(Error::InvalidArgument(format!(
            "bound {bound} is below r + 2 = {}",
            r + 2
        )));
    }
    let gb = gb.extended(bound).expect("complete bases extend");
    let field = gb.field();
    let weights = gb.weights().to_vec();
    let words: Vec<Vec<Word>> = (0..=bound).map(|d| gb.normal_words(d)).collect::<Result<_>>()?;
    let mut checked = 0usize;
    for total in 2..=bound {
        for dp in 1..total {
            for p in &words[dp as usize] {
                for q in &words[(total - dp) as usize] {
                    let mut cut = 0;
                    let mut deg = 0;
                    for &l in q.letters() {
                        if deg + weights[l as usize] > r {
                            break;
                        }
                        deg += weights[l as usize];
                        cut += 1;
                    }
                    if cut == q.len() {
                        continue;
                    }
                    checked += 1;
                    if checked > RPROC_BUDGET {
                        return Err(Error::Budget(format!("more than {RPROC_BUDGET} pairs")));
                    }
                    let q1 = q.prefix(cut, &weights);
                    let q2 = q.suffix_from(cut, &weights);
                    let whole = gb.reduce(&Polynomial::monomial(field, p.concat(q)))?;
                    let head = gb.reduce(&Polynomial::monomial(field, p.concat(&q1)))?;
                    if whole != head.mul_words(&Word::empty(), &q2) {
                        return Ok(RProcVerdict::Counterexample {
                            p: p.clone(),
                            q: q.clone(),
                            q1,
                            q2,
                        });
                    }
                }
            }
        }
    }
    Ok(RProcVerdict::Pass { r, bound, checked })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalReport {
    pub degree: u32,
    pub bound: u32,
    /// Proven `r` used for the `t + 2r` check.
    pub r: Option<u32>,
    pub ideals: Vec<IdealRecord>,
    /// Largest `m₁(I)` among ideals with `m(I) = t`, for `t = 1..=degree`.
    pub max_m1: Vec<Option<u32>>,
    /// Largest `m₁(I) - m(I)`, clipped at zero.
    pub max_excess: Option<u32>,
    pub enumeration_capped: bool,
    /// Breaches of `m₁ <= t + d`.
    pub violations: Vec<String>,
    /// Breaches of a proven `t + 2r` bound: these indicate a bug.
    pub implementation_errors: Vec<String>,
}

impl UniversalReport {
    pub fn all_hold(&self) -> bool {
        self.violations.is_empty() && self.implementation_errors.is_empty()
    }
}

/// Enumerate monomial ideals and sample polynomial ideals generated in
/// degrees at most `config.degree`, and check their first syzygy degrees.
pub fn universal_coherence_probe(
    gb: &GroebnerBasis,
    certificate: Option<&RProcessingCertificate>,
    config: &ProbeConfig,
) -> Result<UniversalReport> {
    let d = config.degree;
    let bound = config.bound;
    if gb.soundness_degree() < bound {
        return Err(Error::UnsoundBound {
            degree: bound,
            bound: gb.soundness_degree(),
        });
    }
    let r = certificate.filter(|c| !c.heuristic).map(|c| c.r);
    let mut report = UniversalReport {
        degree: d,
        bound,
        r,
        ideals: Vec::new(),
        max_m1: vec![None; d as usize],
        max_excess: None,
        enumeration_capped: false,
        violations: Vec::new(),
        implementation_errors: Vec::new(),
    };
    if d == 0 {
        return Ok(report);
    }
    let (monomial, capped) = enumerate_monomial_ideals(gb, d, config.max_ideals)?;
    report.enumeration_capped = capped;
    let mut all: Vec<(IdealKind, Vec<Polynomial>)> = monomial.into_iter().map(|g| (IdealKind::Monomial, g)).collect();
    all.extend(
        sample_ideals(gb, d, config.samples, config.seed)?
            .into_iter()
            .map(|g| (IdealKind::Sampled, g)),
    );
    for (k, (kind, gens)) in all.iter().enumerate() {
        let rec = ideal_record(*kind, gens, gb, bound)?;
        let t = rec.m;
        if let Some(m1) = rec.m1 {
            let slot = &mut report.max_m1[t as usize - 1];
            *slot = Some(slot.map_or(m1, |s| s.max(m1)));
            let excess = m1.saturating_sub(t);
            report.max_excess = Some(report.max_excess.map_or(excess, |e| e.max(excess)));
            if m1 > t + d {
                report
                    .violations
                    .push(format!("ideal {k}: m1 = {m1} > m + d = {}", t + d));
            }
            if let Some(r) = r {
                if t + 2 * r <= bound && m1 > t + 2 * r {
                    report.implementation_errors.push(format!(
                        "ideal {k}: m1 = {m1} breaks the proven bound m + 2r = {}",
                        t + 2 * r
                    ));
                }
            }
        }
        if !rec.certified {
            report
                .implementation_errors
                .push(format!("ideal {k}: syzygies failed to reduce to zero"));
        }
        report.ideals.push(rec);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::tests::setup;
    use super::*;

    fn cert(text: &str) -> CertificateOutcome {
        let (_, gb) = setup(text, 8);
        rproc_certificate(&gb).unwrap()
    }

    #[test]
    fn monomial_certificate() {
        match cert("gens x y; rels y*x") {
            CertificateOutcome::Certified(c) => {
                assert_eq!(c.r, 1);
                assert_eq!(c.evidence, Evidence::MonomialDegree);
                assert!(!c.heuristic);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn commutative_is_refused() {
        assert_eq!(
            cert("gens y x; rels y*x - x*y"),
            CertificateOutcome::Refused { cycle: vec![0] }
        );
    }

    #[test]
    fn disjoint_supports_certify_heuristically() {
        match cert("gens x y z t; rels x*y - z*t") {
            CertificateOutcome::Certified(c) => {
                assert_eq!(c.evidence, Evidence::AcyclicOverlapGraph { longest_path: 0 });
                assert_eq!(c.r, 2);
                assert!(c.heuristic);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn incomplete_basis_is_an_error() {
        let (_, gb) = setup("gens x y; rels x*y - y*x, x*x*y - y*y*x", 3);
        if !gb.is_complete() {
            assert!(matches!(rproc_certificate(&gb), Err(Error::IncompleteBasis)));
        }
    }

    #[test]
    fn verify_yx_and_commutative() {
        let (_, gb) = setup("gens x y; rels y*x", 4);
        assert!(matches!(rproc_verify(&gb, 1, 7).unwrap(), RProcVerdict::Pass { .. }));
        let (p, gb) = setup("gens y x; rels y*x - x*y", 4);
        match rproc_verify(&gb, 1, 4).unwrap() {
            RProcVerdict::Counterexample { p: a, q, q1, q2 } => {
                assert_eq!(p.format_word(&a), "y");
                assert_eq!(p.format_word(&q), "x*x");
                assert_eq!((p.format_word(&q1), p.format_word(&q2)), ("x".into(), "x".into()));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(rproc_verify(&gb, 1, 2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn free_passes_and_upgrade() {
        let (_, gb) = setup("gens x y", 4);
        let v = rproc_verify(&gb, 0, 6).unwrap();
        assert!(matches!(v, RProcVerdict::Pass { .. }));
        let (_, gb) = setup("gens x y z t; rels x*y - z*t", 8);
        let CertificateOutcome::Certified(mut c) = rproc_certificate(&gb).unwrap() else {
            panic!()
        };
        let v = rproc_verify(&gb, c.r, 6).unwrap();
        assert!(c.upgrade(&v));
        assert!(!c.heuristic);
        assert_eq!(c.verified_through, Some(6));
    }

    #[test]
    fn universal_probe_examples() {
        let (_, gb) = setup("gens x y; rels y*x", 9);
        let CertificateOutcome::Certified(c) = rproc_certificate(&gb).unwrap() else {
            panic!()
        };
        let rep = universal_coherence_probe(&gb, Some(&c), &ProbeConfig::new(2, 9)).unwrap();
        assert!(rep.all_hold(), "{:?} {:?}", rep.violations, rep.implementation_errors);
        assert_eq!(rep.max_excess, Some(1));

        let (_, gb) = setup("gens x y", 6);
        let rep = universal_coherence_probe(&gb, None, &ProbeConfig::new(3, 6)).unwrap();
        assert!(rep.ideals.iter().all(|i| i.m1.is_none()));
        assert_eq!(rep.max_excess, None);

        let (_, gb) = setup("gens y x; rels y*x - x*y", 8);
        let rep = universal_coherence_probe(&gb, None, &ProbeConfig::new(1, 8)).unwrap();
        assert!(rep.all_hold());
        assert_eq!(rep.max_excess, Some(1));
    }
}
