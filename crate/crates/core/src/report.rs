//! Structured, deterministic result documents. Integers are written as
//! decimal strings so that no consumer has to guess at their width.

use std::fmt::Display;

use serde_json::{json, Map, Value};

use crate::coherence::{
    CertificateOutcome, CoherentFamilySpec, Evidence, FamilyVerdict, FilRateRecord, QuadraticEnumeration, RProcVerdict,
    RationalFamilySolve, UniversalReport,
};
use crate::groebner::GroebnerBasis;
use crate::hilbert::{AnickChainSet, RateEstimate, RationalSeries, TruncatedSeries};
use crate::intpoly::IntPoly;
use crate::poly::Polynomial;
use crate::presentation::Presentation;
use crate::syzygy::{IdealKind, IdealRecord, ProbeReport, SyzygyBasis};

pub const SCHEMA: &str = "ncgraded/1";

pub fn int(x: impl Display) -> Value {
    Value::String(x.to_string())
}

pub fn ints<T: Display>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(int).collect())
}

fn opt_int<T: Display>(x: Option<T>) -> Value {
    x.map_or(Value::Null, int)
}

fn polys(p: &Presentation, xs: &[Polynomial]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(p.format_poly(x))).collect())
}

pub fn gb(p: &Presentation, gb: &GroebnerBasis, dims_through: u32) -> Value {
    let dims = gb
        .dimensions(dims_through.min(gb.soundness_degree()))
        .unwrap_or_default();
    json!({
        "bound": int(gb.soundness_degree()),
        "complete": gb.is_complete(),
        "elements": polys(p, gb.elements()),
        "leading_words": gb.leading_words().iter().map(|w| p.format_word(w)).collect::<Vec<_>>(),
        "dimensions": ints(dims),
    })
}

pub fn syzygies(p: &Presentation, coefficients: &[Polynomial], s: &SyzygyBasis, verified: bool) -> Value {
    json!({
        "coefficients": polys(p, coefficients),
        "dropped": ints(&s.dropped),
        "generators": s.generators.iter().map(|g| polys(p, g)).collect::<Vec<_>>(),
        "degrees": ints(&s.degrees),
        "count": int(s.len()),
        "complete": s.complete,
        "exhaustive_below": int(s.exhaustive_below),
        "verified": verified,
    })
}

pub fn truncated(t: &TruncatedSeries) -> Value {
    ints(&t.coefficients)
}

pub fn intpoly(p: &IntPoly) -> Value {
    json!({ "text": p.to_string(), "coefficients": ints(p.coeffs()) })
}

pub fn rational(r: &RationalSeries) -> Value {
    json!({
        "text": r.to_string(),
        "numerator": ints(r.numerator().coeffs()),
        "denominator": ints(r.denominator().coeffs()),
    })
}

pub fn chains(p: &Presentation, c: &AnickChainSet) -> Value {
    let per_index: Vec<Value> = (0..c.chains.len())
        .map(|i| {
            json!({
                "index": int(i),
                "count": int(c.chains[i].len()),
                "by_degree": ints(c.counts(i)),
                "cut": c.cut[i],
                "sample": c.chains[i].iter().take(8).map(|ch| p.format_word(&ch.word)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let m: Vec<Value> = (1..=c.max_index() + 1).map(|i| opt_int(c.m(i))).collect();
    json!({
        "bound": int(c.bound),
        "chains": per_index,
        "m": m,
        "complete_through": opt_int(c.complete_through()),
        "terminates": c.terminates(),
    })
}

pub fn rate(r: &RateEstimate) -> Value {
    json!({
        "value": r.value.to_string(),
        "attained_at": opt_int(r.attained_at),
        "exact": r.exact,
        "m": ints(&r.m),
    })
}

pub fn certificate(p: &Presentation, c: &CertificateOutcome) -> Value {
    match c {
        CertificateOutcome::Refused { cycle } => json!({ "certified": false, "cycle": ints(cycle) }),
        CertificateOutcome::Certified(c) => {
            let evidence = match &c.evidence {
                Evidence::MonomialDegree => json!({ "kind": "monomial-degree" }),
                Evidence::AcyclicOverlapGraph { longest_path } => {
                    json!({ "kind": "acyclic-overlap-graph", "longest_path": int(longest_path) })
                }
            };
            json!({
                "certified": true,
                "r": int(c.r),
                "evidence": evidence,
                "heuristic": c.heuristic,
                "verified_through": opt_int(c.verified_through),
                "basis": polys(p, &c.basis),
            })
        }
    }
}

pub fn rproc_verdict(p: &Presentation, v: &RProcVerdict) -> Value {
    match v {
        RProcVerdict::Pass { r, bound, checked } => {
            json!({ "pass": true, "r": int(r), "bound": int(bound), "checked": int(checked) })
        }
        RProcVerdict::Counterexample { p: a, q, q1, q2 } => json!({
            "pass": false,
            "p": p.format_word(a),
            "q": p.format_word(q),
            "q1": p.format_word(q1),
            "q2": p.format_word(q2),
        }),
    }
}

pub fn family(spec: &CoherentFamilySpec, v: &FamilyVerdict) -> Value {
    let members: Vec<Value> = v
        .members
        .iter()
        .map(|m| {
            json!({
                "name": m.name,
                "m": opt_int(m.m),
                "dimensions": ints(&m.dimensions),
                "colon_degrees": ints(&m.colon_degrees),
            })
        })
        .collect();
    let failure = v.failure.as_ref().map_or(Value::Null, |f| {
        json!({
            "member": spec.name(f.member),
            "condition": f.condition.to_string(),
            "degree": opt_int(f.degree),
        })
    });
    json!({
        "verified": v.verified,
        "bound": int(v.bound),
        "degree": int(v.degree),
        "s": int(spec.s()),
        "maximal": v.maximal.map_or(Value::Null, |i| Value::String(spec.name(i).to_string())),
        "members": members,
        "failure": failure,
    })
}

pub fn family_solve(spec: &CoherentFamilySpec, r: &RationalFamilySolve) -> Value {
    let matrix: Vec<Vec<String>> =
        r.a.iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect();
    let members: Map<String, Value> = r
        .members
        .iter()
        .enumerate()
        .map(|(k, s)| (spec.name(k + 1).to_string(), rational(s)))
        .collect();
    json!({
        "A": matrix,
        "H0": r.h0.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "D": intpoly(&r.determinant),
        "C": r.cofactor.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "R": rational(&r.series),
        "members": members,
        "degree_bound": int(r.degree_bound),
        "degree_bound_holds": r.degree_bound_holds,
        "checked_through": int(r.checked_through),
    })
}

pub fn fil_rate(spec: &CoherentFamilySpec, recs: &[FilRateRecord]) -> Value {
    Value::Array(
        recs.iter()
            .map(|r| {
                json!({
                    "member": spec.name(r.member),
                    "m": int(r.m),
                    "m_i": r.m_i.iter().map(|x| opt_int(*x)).collect::<Vec<_>>(),
                    "partial": r.partial,
                    "holds": r.holds,
                })
            })
            .collect(),
    )
}

fn ideal(p: &Presentation, r: &IdealRecord) -> Value {
    json!({
        "kind": match r.kind { IdealKind::Monomial => "monomial", IdealKind::Sampled => "sampled" },
        "generators": polys(p, &r.generators),
        "m": int(r.m),
        "m1": opt_int(r.m1),
        "syzygy_degrees": ints(&r.syzygy_degrees),
        "certified": r.certified,
        "complete": r.complete,
    })
}

pub fn probe(p: &Presentation, r: &ProbeReport) -> Value {
    json!({
        "degree": int(r.config.degree),
        "bound": int(r.config.bound),
        "seed": int(r.config.seed),
        "samples": int(r.config.samples),
        "ideals": int(r.ideals.len()),
        "pairs": int(r.pairs.len()),
        "D_R": opt_int(r.d_r),
        "D_Ann": opt_int(r.d_ann),
        "D_cap": opt_int(r.d_cap),
        "max_excess": opt_int(r.max_excess),
        "enumeration_capped": r.enumeration_capped,
        "pairs_capped": r.pairs_capped,
        "violations": r.violations,
        "all_hold": r.all_hold(),
        "records": r.ideals.iter().map(|i| ideal(p, i)).collect::<Vec<_>>(),
    })
}

pub fn universal(p: &Presentation, r: &UniversalReport) -> Value {
    json!({
        "degree": int(r.degree),
        "bound": int(r.bound),
        "r": opt_int(r.r),
        "ideals": int(r.ideals.len()),
        "max_m1": r.max_m1.iter().map(|x| opt_int(*x)).collect::<Vec<_>>(),
        "max_excess": opt_int(r.max_excess),
        "enumeration_capped": r.enumeration_capped,
        "violations": r.violations,
        "implementation_errors": r.implementation_errors,
        "all_hold": r.all_hold(),
        "records": r.ideals.iter().map(|i| ideal(p, i)).collect::<Vec<_>>(),
    })
}

pub fn quadratic(e: &QuadraticEnumeration) -> Value {
    json!({
        "generators": int(e.generators),
        "subsets": int(e.entries.len()),
        "distinct_count": int(e.distinct_count()),
        "distinct": e.distinct.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "checked_through": int(e.checked_through),
        "entries": e.entries.iter().map(|x| json!({
            "relations": x.relations,
            "series": x.series.to_string(),
        })).collect::<Vec<_>>(),
    })
}
