//! Coherent families of right ideals, the rational Hilbert series they
//! force, r-processing certificates and desk-scale enumeration.
//!
//! A family is a finite set of homogeneous right ideals containing `0` and
//! the augmentation ideal `R̄`. Each nonzero member `I` carries a witness
//! `(J, x, N)` with `J` and `N` members, `I = J + xR`, `m(J) <= m(I)` and
//! `(x : J) = N`.
//!
//! Family files list members and witnesses:
//!
//! ```text
//! file    := (stmt? (';' | newline))*
//! stmt    := 'ideal' NAME '=' ('0' | expr (',' expr)*)
//!          | 'witness' NAME ':' 'J' '=' ref ',' 'x' '=' expr ',' 'N' '=' ref
//! ref     := NAME | '0'
//! ```

mod quadratic;
mod rproc;
mod solve;

pub use quadratic::{enumerate_quadratic_monomial, QuadraticEntry, QuadraticEnumeration, MAX_QUADRATIC_GENERATORS};
pub use rproc::{
    rproc_certificate, rproc_verify, universal_coherence_probe, CertificateOutcome, Evidence, RProcVerdict,
    RProcessingCertificate, UniversalReport,
};
pub use solve::{rational_series_from_family, RationalFamilySolve};

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::format::{parse_error, split_commas, statements, tokenize, ExprParser, Tok, Token};
use crate::groebner::{complete_right, GroebnerBasis, ModuleBasis};
use crate::module::FreeModule;
use crate::poly::Polynomial;
use crate::presentation::Presentation;
use crate::syzygy::{colon_ideal, iterated_ideal_syzygies, minimize_ideal};
use crate::word::{Letter, Word};

/// `I = J + xR` with `(x : J) = N`; `j` and `n` index family members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub j: usize,
    pub x: Polynomial,
    /// `deg x`.
    pub c: u32,
    pub n: usize,
}

/// Member 0 is always the zero ideal and has no witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentFamilySpec {
    names: Vec<String>,
    ideals: Vec<Vec<Polynomial>>,
    witnesses: Vec<Option<Witness>>,
}

impl CoherentFamilySpec {
    /// `members` lists the nonzero ideals; witness `(i, j, x, n)` belongs to
    /// member `i`, where indices count from 1 and 0 is the zero ideal.
    pub fn new(
        members: Vec<(String, Vec<Polynomial>)>,
        witnesses: Vec<(usize, usize, Polynomial, usize)>,
    ) -> Result<CoherentFamilySpec> {
        let mut names = vec!["0".to_string()];
        let mut ideals = vec![Vec::new()];
        for (name, gens) in members {
            let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
            if gens.is_empty() {
                return Err(Error::InvalidArgument(format!("member {name} is the zero ideal")));
            }
            for g in &gens {
                if g.homogeneous_degree()? == 0 {
                    return Err(Error::InvalidArgument(format!(
                        "member {name} has a constant generator"
                    )));
                }
            }
            names.push(name);
            ideals.push(gens);
        }
        let mut spec = CoherentFamilySpec {
            witnesses: vec![None; names.len()],
            names,
            ideals,
        };
        for (i, j, x, n) in witnesses {
            spec.set_witness(i, j, x, n)?;
        }
        Ok(spec)
    }

    fn set_witness(&mut self, i: usize, j: usize, x: Polynomial, n: usize) -> Result<()> {
        let len = self.names.len();
        for (what, k) in [("member", i), ("J", j), ("N", n)] {
            if k >= len {
                return Err(Error::InvalidWitness(format!(
                    "{what} index {k} out of range (family has {len})"
                )));
            }
        }
        if i == 0 {
            return Err(Error::InvalidWitness("the zero ideal takes no witness".into()));
        }
        if x.is_zero() {
            return Err(Error::InvalidWitness(format!(
                "witness element of {} is zero",
                self.names[i]
            )));
        }
        let c = x.homogeneous_degree()?;
        if self.witnesses[i].is_some() {
            return Err(Error::InvalidWitness(format!(
                "member {} has two witnesses",
                self.names[i]
            )));
        }
        self.witnesses[i] = Some(Witness { j, x, c, n });
        Ok(())
    }

    /// Number of nonzero members, `s`.
    pub fn s(&self) -> usize {
        self.names.len() - 1
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn generators(&self, i: usize) -> &[Polynomial] {
        &self.ideals[i]
    }

    pub fn witness(&self, i: usize) -> Option<&Witness> {
        self.witnesses[i].as_ref()
    }

    /// Largest declared generator degree, an upper bound for the family
    /// degree.
    pub fn declared_degree(&self) -> u32 {
        self.ideals
            .iter()
            .flatten()
            .filter_map(|g| g.degree())
            .max()
            .unwrap_or(0)
    }

    /// Render in the file format.
    pub fn to_text(&self, p: &Presentation) -> String {
        let mut out = String::new();
        for i in 1..self.len() {
            let gens: Vec<String> = self.ideals[i].iter().map(|g| p.format_poly(g)).collect();
            out.push_str(&format!("ideal {} = {}\n", self.names[i], gens.join(", ")));
        }
        for i in 1..self.len() {
            if let Some(w) = &self.witnesses[i] {
                out.push_str(&format!(
                    "witness {}: J = {}, x = {}, N = {}\n",
                    self.names[i],
                    self.names[w.j],
                    p.format_poly(&w.x),
                    self.names[w.n]
                ));
            }
        }
        out
    }
}

/// Parse a family file over the generators of `p`.
pub fn parse_family(p: &Presentation, text: &str) -> Result<CoherentFamilySpec> {
    let mut index: HashMap<String, usize> = HashMap::from([("0".to_string(), 0)]);
    let mut members = Vec::new();
    let mut witness_stmts = Vec::new();
    for stmt in statements(tokenize(text)?) {
        let head = &stmt[0];
        match &head.tok {
            Tok::Name(k) if k == "ideal" => {
                let (name, rest) = named(&stmt, '=')?;
                if index.contains_key(&name) {
                    return Err(parse_error(
                        stmt[1].line,
                        stmt[1].column,
                        format!("ideal {name} declared twice"),
                    ));
                }
                let gens = if is_zero_ref(rest) {
                    Vec::new()
                } else {
                    let mut gens = Vec::new();
                    for part in split_commas(rest) {
                        if part.is_empty() {
                            return Err(parse_error(head.line, head.column, "empty generator"));
                        }
                        let g = ExprParser::new(p, &part).parse_all()?;
                        if g.is_zero() {
                            continue;
                        }
                        match g.homogeneous_degree() {
                            Ok(0) => return Err(parse_error(part[0].line, part[0].column, "constant generator")),
                            Ok(_) => gens.push(g),
                            Err(e) => return Err(parse_error(part[0].line, part[0].column, e.to_string())),
                        }
                    }
                    gens
                };
                if gens.is_empty() {
                    index.insert(name, 0);
                } else {
                    members.push((name.clone(), gens));
                    index.insert(name, members.len());
                }
            }
            Tok::Name(k) if k == "witness" => witness_stmts.push(stmt),
            _ => return Err(parse_error(head.line, head.column, "expected `ideal` or `witness`")),
        }
    }
    let mut witnesses = Vec::new();
    for stmt in witness_stmts {
        let (name, rest) = named(&stmt, ':')?;
        let i = lookup(&index, &name, &stmt[1])?;
        let mut j = None;
        let mut x = None;
        let mut n = None;
        for part in split_commas(rest) {
            let at = part.first().unwrap_or(&stmt[0]);
            let key = match (part.first().map(|t| &t.tok), part.get(1).map(|t| &t.tok)) {
                (Some(Tok::Name(k)), Some(Tok::Sym('='))) => k.clone(),
                _ => return Err(parse_error(at.line, at.column, "expected `J = …`, `x = …` or `N = …`")),
            };
            let value = &part[2..];
            if value.is_empty() {
                return Err(parse_error(at.line, at.column, format!("missing value for {key}")));
            }
            match key.as_str() {
                "J" => j = Some(reference(&index, value)?),
                "N" => n = Some(reference(&index, value)?),
                "x" => x = Some(ExprParser::new(p, value).parse_all()?),
                _ => return Err(parse_error(at.line, at.column, format!("unknown witness key {key}"))),
            }
        }
        let missing = |what: &str| parse_error(stmt[0].line, stmt[0].column, format!("witness {name} lacks {what}"));
        let j = j.ok_or_else(|| missing("J"))?;
        let x = x.ok_or_else(|| missing("x"))?;
        let n = n.ok_or_else(|| missing("N"))?;
        if i == 0 {
            return Err(parse_error(
                stmt[1].line,
                stmt[1].column,
                "the zero ideal takes no witness",
            ));
        }
        witnesses.push((i, j, x, n));
    }
    CoherentFamilySpec::new(members, witnesses)
}

fn named(stmt: &[Token], sep: char) -> Result<(String, &[Token])> {
    let head = &stmt[0];
    match (stmt.get(1).map(|t| &t.tok), stmt.get(2).map(|t| &t.tok)) {
        (Some(Tok::Name(n)), Some(Tok::Sym(c))) if *c == sep => Ok((n.clone(), &stmt[3..])),
        (Some(Tok::Int(z)), Some(Tok::Sym(c))) if *c == sep && z.to_string() == "0" => Ok(("0".into(), &stmt[3..])),
        _ => Err(parse_error(
            head.line,
            head.column,
            format!("expected NAME {sep} after the keyword"),
        )),
    }
}

fn is_zero_ref(toks: &[Token]) -> bool {
    matches!(toks, [t] if matches!(&t.tok, Tok::Int(z) if z.to_string() == "0"))
}

fn reference(index: &HashMap<String, usize>, toks: &[Token]) -> Result<usize> {
    if is_zero_ref(toks) {
        return Ok(0);
    }
    match toks {
        [t] => match &t.tok {
            Tok::Name(n) => lookup(index, n, t),
            _ => Err(parse_error(t.line, t.column, "expected an ideal name")),
        },
        _ => Err(parse_error(
            toks[0].line,
            toks[0].column,
            "expected a single ideal name",
        )),
    }
}

fn lookup(index: &HashMap<String, usize>, name: &str, at: &Token) -> Result<usize> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| parse_error(at.line, at.column, format!("unknown ideal {name}")))
}

/// Which defining condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    MissingWitness,
    /// `x ∈ I`.
    Membership,
    /// `I = J + xR`.
    Sum,
    /// `m(J) <= m(I)`.
    GenerationDegree,
    /// `(x : J) = N`.
    Colon,
    /// `R̄` is a member.
    MaximalIdeal,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::MissingWitness => "missing witness",
            Condition::Membership => "x not in I",
            Condition::Sum => "I != J + xR",
            Condition::GenerationDegree => "m(J) > m(I)",
            Condition::Colon => "(x : J) != N",
            Condition::MaximalIdeal => "augmentation ideal missing",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFailure {
    pub member: usize,
    pub condition: Condition,
    /// Degree at which the discrepancy shows up, when there is one.
    pub degree: Option<u32>,
}

/// What was established for one member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberCertificate {
    pub name: String,
    /// `m(I)`; `None` for the zero ideal.
    pub m: Option<u32>,
    /// Graded dimensions of `I` in degrees `0..=bound`.
    pub dimensions: Vec<u64>,
    /// Minimal generator degrees of the computed `(x : J)`.
    pub colon_degrees: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyVerdict {
    pub verified: bool,
    pub bound: u32,
    /// `d = max m(I)`.
    pub degree: u32,
    /// Member equal to `R̄`.
    pub maximal: Option<usize>,
    pub members: Vec<MemberCertificate>,
    pub failure: Option<FamilyFailure>,
}

pub(crate) fn ideal_basis(gens: &[Polynomial], gb: &GroebnerBasis, bound: u32) -> Result<ModuleBasis> {
    let m = FreeModule::algebra();
    let elems: Vec<_> = gens.iter().map(|g| m.embed(0, g)).collect();
    complete_right(&m, &elems, gb, bound)
}

pub(crate) fn ideal_dims(gens: &[Polynomial], gb: &GroebnerBasis, bound: u32) -> Result<Vec<u64>> {
    ideal_basis(gens, gb, bound)?.dimensions(gb, bound)
}

fn contains(basis: &ModuleBasis, p: &Polynomial, gb: &GroebnerBasis) -> Result<bool> {
    basis.contains(&FreeModule::algebra().embed(0, p), gb)
}

fn first_difference(a: &[u64], b: &[u64]) -> Option<u32> {
    a.iter().zip(b).position(|(x, y)| x != y).map(|k| k as u32)
}

/// Check every defining condition through degree `bound`, stopping at the
/// first failure.
pub fn verify_coherent_family(spec: &CoherentFamilySpec, gb: &GroebnerBasis, bound: u32) -> Result<FamilyVerdict> {
    if gb.soundness_degree() < bound {
        return Err(Error::UnsoundBound {
            degree: bound,
            bound: gb.soundness_degree(),
        });
    }
    let mut members = Vec::new();
    let mut bases = Vec::new();
    for i in 0..spec.len() {
        let gens = minimize_ideal(spec.generators(i), gb)?;
        let basis = ideal_basis(spec.generators(i), gb, bound)?;
        members.push(MemberCertificate {
            name: spec.name(i).to_string(),
            m: gens.iter().filter_map(|g| g.degree()).max(),
            dimensions: basis.dimensions(gb, bound)?,
            colon_degrees: Vec::new(),
        });
        bases.push(basis);
    }
    let degree = members.iter().filter_map(|m| m.m).max().unwrap_or(0);
    let mut verdict = FamilyVerdict {
        verified: false,
        bound,
        degree,
        maximal: None,
        members,
        failure: None,
    };
    let fail = |v: &mut FamilyVerdict, member, condition, degree| {
        v.failure = Some(FamilyFailure {
            member,
            condition,
            degree,
        });
    };

    for i in 1..spec.len() {
        let Some(w) = spec.witness(i) else {
            fail(&mut verdict, i, Condition::MissingWitness, None);
            return Ok(verdict);
        };
        if w.c > bound {
            return Err(Error::UnsoundBound { degree: w.c, bound });
        }
        if !contains(&bases[i], &w.x, gb)? {
            fail(&mut verdict, i, Condition::Membership, Some(w.c));
            return Ok(verdict);
        }
        if let Some(g) = spec
            .generators(w.j)
            .iter()
            .find(|g| !contains(&bases[i], g, gb).unwrap_or(false))
        {
            fail(&mut verdict, i, Condition::Sum, g.degree());
            return Ok(verdict);
        }
        let mut sum = spec.generators(w.j).to_vec();
        sum.push(w.x.clone());
        let sum_dims = ideal_dims(&sum, gb, bound)?;
        if let Some(k) = first_difference(&sum_dims, &verdict.members[i].dimensions) {
            fail(&mut verdict, i, Condition::Sum, Some(k));
            return Ok(verdict);
        }
        if verdict.members[w.j].m > verdict.members[i].m {
            let mj = verdict.members[w.j].m;
            fail(&mut verdict, i, Condition::GenerationDegree, mj);
            return Ok(verdict);
        }
        let colon = colon_ideal(&w.x, spec.generators(w.j), gb, bound)?;
        verdict.members[i].colon_degrees = colon.degrees.clone();
        let top = colon.bound;
        let colon_basis = ideal_basis(&colon.generators, gb, top)?;
        let claimed = ideal_basis(spec.generators(w.n), gb, top)?;
        if let Some(k) = first_difference(&colon_basis.dimensions(gb, top)?, &claimed.dimensions(gb, top)?) {
            fail(&mut verdict, i, Condition::Colon, Some(k));
            return Ok(verdict);
        }
        let mut offending = None;
        for g in &colon.generators {
            if !contains(&claimed, g, gb)? {
                offending = g.degree();
                break;
            }
        }
        if offending.is_none() {
            for g in spec.generators(w.n) {
                let d = g.degree().unwrap();
                if d <= top && !contains(&colon_basis, g, gb)? {
                    offending = Some(d);
                    break;
                }
            }
        }
        if offending.is_some() {
            fail(&mut verdict, i, Condition::Colon, offending);
            return Ok(verdict);
        }
    }

    let full: Vec<u64> = gb
        .dimensions(bound)?
        .iter()
        .enumerate()
        .map(|(k, d)| {
            if k == 0 {
                0
            } else {
                u64::try_from(d).expect("dimension fits in u64")
            }
        })
        .collect();
    verdict.maximal = (1..spec.len()).find(|&i| verdict.members[i].dimensions == full);
    if verdict.maximal.is_none() {
        let k = (1..spec.len())
            .filter_map(|i| first_difference(&verdict.members[i].dimensions, &full))
            .max()
            .or(Some(0));
        fail(&mut verdict, 0, Condition::MaximalIdeal, k);
        return Ok(verdict);
    }
    verdict.verified = true;
    Ok(verdict)
}

/// The family of all ideals generated by sets of generators, for
/// presentations whose relations are words of length two. The witness of a
/// set peels off its last generator in declaration order.
pub fn monomial_family(p: &Presentation) -> Result<CoherentFamilySpec> {
    let n = p.generator_count();
    if n > 10 {
        return Err(Error::Budget(format!("{n} generators give too many subsets")));
    }
    let mut rels: Vec<&Word> = Vec::new();
    for r in p.relations() {
        match r.leading_word() {
            Some(w) if r.is_monomial() && w.len() == 2 => rels.push(w),
            _ => return Err(Error::NotMonomial),
        }
    }
    let field = p.field();
    let weights = p.weights();
    let letter = |l: usize| Polynomial::monomial(field, Word::letter(l as Letter, &weights));
    // declaration order is descending precedence
    let declared: Vec<usize> = (0..n).rev().collect();
    let name = |mask: usize| -> String {
        let parts: Vec<&str> = declared
            .iter()
            .filter(|&&l| mask & (1 << l) != 0)
            .map(|&l| p.generators()[l].name.as_str())
            .collect();
        parts.join("_")
    };
    let mut masks: Vec<usize> = (1..1usize << n).collect();
    masks.sort_by_key(|m| {
        (
            m.count_ones(),
            declared.iter().map(|&l| m & (1 << l) == 0).collect::<Vec<_>>(),
        )
    });
    let index: HashMap<usize, usize> = masks.iter().enumerate().map(|(k, &m)| (m, k + 1)).collect();
    let members = masks
        .iter()
        .map(|&m| {
            (
                name(m),
                (0..n).rev().filter(|l| m & (1 << l) != 0).map(letter).collect(),
            )
        })
        .collect();
    let mut witnesses = Vec::new();
    for &m in &masks {
        let last = *declared.iter().rev().find(|&&l| m & (1 << l) != 0).unwrap();
        let j = m & !(1 << last);
        let mut colon = 0usize;
        for w in &rels {
            if w.letters()[0] as usize == last {
                colon |= 1 << w.letters()[1];
            }
        }
        let at = |mask: usize| if mask == 0 { 0 } else { index[&mask] };
        witnesses.push((index[&m], at(j), letter(last), at(colon)));
    }
    CoherentFamilySpec::new(members, witnesses)
}

/// `m_i(I) <= m(I) + d·i` for one member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilRateRecord {
    pub member: usize,
    pub m: u32,
    /// `m_1, m_2, …`; `None` where the level is zero.
    pub m_i: Vec<Option<u32>>,
    /// Some level reached past the syzygy bound.
    pub partial: bool,
    pub holds: bool,
}

/// Iterated syzygies of every nonzero member of a verified family, checked
/// against `m(I) + d·i`.
pub fn check_fil_rate(
    spec: &CoherentFamilySpec,
    verdict: &FamilyVerdict,
    gb: &GroebnerBasis,
    depth: usize,
    bound: u32,
) -> Result<Vec<FilRateRecord>> {
    if !verdict.verified {
        return Err(Error::InvalidWitness("family is not verified".into()));
    }
    let d = verdict.degree;
    let mut out = Vec::new();
    for i in 1..spec.len() {
        let it = iterated_ideal_syzygies(spec.generators(i), depth, gb, bound)?;
        let m = it.generator_degrees.iter().copied().max().unwrap_or(0);
        let m_i: Vec<Option<u32>> = (1..=depth).map(|k| it.m(k)).collect();
        let holds = m_i
            .iter()
            .enumerate()
            .all(|(k, mk)| mk.is_none_or(|v| v <= m + d * (k as u32 + 1)));
        out.push(FilRateRecord {
            member: i,
            m,
            m_i,
            partial: it.partial,
            holds,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_presentation;
    use crate::groebner::complete_two_sided;

    pub(super) fn setup(text: &str, bound: u32) -> (Presentation, GroebnerBasis) {
        let p = parse_presentation(text).unwrap();
        let gb = complete_two_sided(&p, bound).unwrap();
        (p, gb)
    }

    pub(super) const YX_FAMILY: &str = "\
# Koszul filtration
ideal X = x
ideal Y = y
ideal M = x, y
witness X: J = 0, x = x, N = 0
witness Y: J = 0, x = y, N = X
witness M: J = X, x = y, N = X
";

    #[test]
    fn yx_filtration_verifies() {
        let (p, gb) = setup("gens x y; rels y*x", 8);
        let f = parse_family(&p, YX_FAMILY).unwrap();
        assert_eq!(f.s(), 3);
        let v = verify_coherent_family(&f, &gb, 8).unwrap();
        assert!(v.verified, "{:?}", v.failure);
        assert_eq!(v.degree, 1);
        assert_eq!(v.maximal, Some(3));
        assert_eq!(v.members[2].colon_degrees, vec![1]);
    }

    #[test]
    fn wrong_colon_is_rejected() {
        let (p, gb) = setup("gens x y; rels y*x", 8);
        let text = "ideal X = x; ideal M = x, y\nwitness X: J = 0, x = x, N = 0\nwitness M: J = X, x = y, N = 0";
        let v = verify_coherent_family(&parse_family(&p, text).unwrap(), &gb, 8).unwrap();
        assert!(!v.verified);
        let f = v.failure.unwrap();
        assert_eq!((f.member, f.condition, f.degree), (2, Condition::Colon, Some(1)));
    }

    #[test]
    fn unknown_reference_is_a_parse_error() {
        let (p, _) = setup("gens x y; rels y*x", 4);
        let text = "ideal M = x, y\nwitness M: J = X, x = y, N = 0";
        match parse_family(&p, text) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 16)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_one_generator() {
        let (p, gb) = setup("gens x", 6);
        let f = parse_family(&p, "ideal X = x\nwitness X: J = 0, x = x, N = 0").unwrap();
        let v = verify_coherent_family(&f, &gb, 6).unwrap();
        assert!(v.verified);
        assert_eq!(v.degree, 1);
    }

    #[test]
    fn missing_maximal_ideal() {
        let (p, gb) = setup("gens x y", 5);
        let f = parse_family(&p, "ideal X = x\nwitness X: J = 0, x = x, N = 0").unwrap();
        let v = verify_coherent_family(&f, &gb, 5).unwrap();
        assert_eq!(v.failure.unwrap().condition, Condition::MaximalIdeal);
    }

    #[test]
    fn sum_and_membership_failures() {
        let (p, gb) = setup("gens x y", 5);
        let f = parse_family(&p, "ideal X = x\nwitness X: J = 0, x = y, N = 0").unwrap();
        let v = verify_coherent_family(&f, &gb, 5).unwrap();
        assert_eq!(v.failure.unwrap().condition, Condition::Membership);
        let f = parse_family(
            &p,
            "ideal X = x\nideal M = x, y\nwitness X: J = 0, x = x, N = 0\nwitness M: J = 0, x = y, N = 0",
        )
        .unwrap();
        let v = verify_coherent_family(&f, &gb, 5).unwrap();
        let fail = v.failure.unwrap();
        assert_eq!((fail.member, fail.condition, fail.degree), (2, Condition::Sum, Some(1)));
    }

    #[test]
    fn witness_indices_checked() {
        let p = parse_presentation("gens x").unwrap();
        let x = p.poly("x").unwrap();
        let e = CoherentFamilySpec::new(vec![("X".into(), vec![x.clone()])], vec![(1, 5, x, 0)]);
        assert!(matches!(e, Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn text_round_trip() {
        let (p, _) = setup("gens x y; rels y*x", 4);
        let f = parse_family(&p, YX_FAMILY).unwrap();
        assert_eq!(parse_family(&p, &f.to_text(&p)).unwrap(), f);
    }

    #[test]
    fn discovered_family_verifies() {
        for text in [
            "gens x y; rels y*x",
            "gens x y z; rels x*x, y*z, z*y",
            "gens x",
            "gens x; rels x*x",
        ] {
            let (p, gb) = setup(text, 8);
            let f = monomial_family(&p).unwrap();
            assert_eq!(f.s(), (1 << p.generator_count()) - 1);
            let v = verify_coherent_family(&f, &gb, 8).unwrap();
            assert!(v.verified, "{text}: {:?}", v.failure);
        }
        let (p, _) = setup("gens x y; rels y*x - x*y", 4);
        assert!(matches!(monomial_family(&p), Err(Error::NotMonomial)));
    }

    #[test]
    fn fil_rate_on_filtration() {
        let (p, gb) = setup("gens x y; rels y*x", 9);
        let f = parse_family(&p, YX_FAMILY).unwrap();
        let v = verify_coherent_family(&f, &gb, 9).unwrap();
        let recs = check_fil_rate(&f, &v, &gb, 3, 9).unwrap();
        assert!(recs.iter().all(|r| r.holds));
        // (y) has Ann y = (x), then (x) is free
        assert_eq!(recs[1].m_i, vec![Some(2), None, None]);
    }
}
