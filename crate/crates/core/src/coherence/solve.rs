//! Hilbert series of a verified family from its linear system.
//!
//! Unrolling `I(z) = J(z) + z^c (R(z) - N(z))` along the `J`-chain writes
//! each member as `I_i = Σ_j a_ij (R - I_j) + a_i0 R` with `a_ij ∈ zZ[z]`,
//! that is `(A + E) H = R (A e + H₀)`. With `D = det(A + E)` and
//! `C = adj(A + E)(A e + H₀)`, the member equal to `R̄` gives
//! `R = D / (D - C_s)` and `I_i = C_i / (D - C_s)`.

use num_bigint::BigInt;

use super::{ideal_dims, CoherentFamilySpec, FamilyVerdict};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::hilbert::RationalSeries;
use crate::intpoly::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFamilySolve {
    /// `s × s`, entries in `zZ[z]`; row and column `k` are member `k + 1`.
    pub a: Vec<Vec<IntPoly>>,
    pub h0: Vec<IntPoly>,
    pub determinant: IntPoly,
    pub cofactor: Vec<IntPoly>,
    /// Member index of `R̄`.
    pub maximal: usize,
    pub series: RationalSeries,
    /// `I_1(z), …, I_s(z)`.
    pub members: Vec<RationalSeries>,
    /// `d·s`.
    pub degree_bound: usize,
    /// `deg D` and `deg(D - C_s)` stay within `d·s`.
    pub degree_bound_holds: bool,
    /// Expansions were compared with normal-word and right-ideal counts
    /// through this degree.
    pub checked_through: u32,
}

fn unroll(spec: &CoherentFamilySpec) -> Result<(Vec<Vec<IntPoly>>, Vec<IntPoly>)> {
    let s = spec.s();
    let mut a = vec![vec![IntPoly::zero(); s]; s];
    let mut h0 = vec![IntPoly::zero(); s];
    for i in 1..=s {
        let mut cur = i;
        let mut steps = 0;
        while cur != 0 {
            steps += 1;
            if steps > s {
                return Err(Error::InvalidWitness(format!("witness cycle through {}", spec.name(i))));
            }
            let w = spec
                .witness(cur)
                .ok_or_else(|| Error::InvalidWitness(format!("member {} lacks a witness", spec.name(cur))))?;
            let zc = IntPoly::monomial(BigInt::from(1), w.c as usize);
            if w.n == 0 {
                h0[i - 1] = h0[i - 1].add(&zc);
            } else {
                a[i - 1][w.n - 1] = a[i - 1][w.n - 1].add(&zc);
            }
            cur = w.j;
        }
    }
    Ok((a, h0))
}

/// `(det M, adj(M) v)` by fraction-free elimination. Pivots are searched
/// downward from the diagonal, lowest row first.
fn bareiss_solve(m: &[Vec<IntPoly>], v: &[IntPoly]) -> Result<(IntPoly, Vec<IntPoly>)> {
    let n = m.len();
    let mut rows: Vec<Vec<IntPoly>> = m
        .iter()
        .zip(v)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut negate = false;
    let mut prev = IntPoly::one();
    let exact = |a: &IntPoly, b: &IntPoly| {
        a.div_exact(b)
            .ok_or_else(|| Error::InvalidArgument("inexact division during elimination".into()))
    };
    for k in 0..n {
        let p = (k..n)
            .find(|&r| !rows[r][k].is_zero())
            .ok_or_else(|| Error::InvalidArgument("singular system matrix".into()))?;
        if p != k {
            rows.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = rows[i][j].mul(&rows[k][k]).sub(&rows[i][k].mul(&rows[k][j]));
                rows[i][j] = exact(&t, &prev)?;
            }
            rows[i][k] = IntPoly::zero();
        }
        prev = rows[k][k].clone();
    }
    if n == 0 {
        return Ok((IntPoly::one(), Vec::new()));
    }
    let det = rows[n - 1][n - 1].clone();
    let mut y = vec![IntPoly::zero(); n];
    for i in (0..n).rev() {
        let mut t = det.mul(&rows[i][n]);
        for j in i + 1..n {
            t = t.sub(&rows[i][j].mul(&y[j]));
        }
        y[i] = exact(&t, &rows[i][i])?;
    }
    if negate {
        Ok((det.neg(), y.iter().map(IntPoly::neg).collect()))
    } else {
        Ok((det, y))
    }
}

fn to_bigints(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&d| BigInt::from(d)).collect()
}

/// Solve the family system exactly and cross-check every series against
/// direct counts through `max(d·s + 5, verdict.bound)`.
pub fn rational_series_from_family(
    spec: &CoherentFamilySpec,
    verdict: &FamilyVerdict,
    gb: &GroebnerBasis,
) -> Result<RationalFamilySolve> {
    if !verdict.verified {
        return Err(Error::InvalidWitness("family is not verified".into()));
    }
    let maximal = verdict.maximal.expect("verified families contain R̄");
    let s = spec.s();
    let (a, h0) = unroll(spec)?;
    let mut m = a.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = row[i].add(&IntPoly::one());
    }
    let v: Vec<IntPoly> = (0..s)
        .map(|i| a[i].iter().fold(h0[i].clone(), |acc, x| acc.add(x)))
        .collect();
    let (det, c) = bareiss_solve(&m, &v)?;
    for i in 0..s {
        let lhs = (0..s).fold(IntPoly::zero(), |acc, j| acc.add(&m[i][j].mul(&c[j])));
        if lhs != det.mul(&v[i]) {
            return Err(Error::InvalidArgument("elimination does not solve the system".into()));
        }
    }
    let den = det.sub(&c[maximal - 1]);
    let bad = || Error::InvalidArgument("series denominator vanishes at 0".into());
    let series = RationalSeries::new(det.clone(), den.clone()).ok_or_else(bad)?;
    let members = c
        .iter()
        .map(|ci| RationalSeries::new(ci.clone(), den.clone()).ok_or_else(bad))
        .collect::<Result<Vec<_>>>()?;
    let degree_bound = verdict.degree as usize * s;
    let within = |p: &IntPoly| p.degree().unwrap_or(0) <= degree_bound;
    let degree_bound_holds = within(&det) && within(&den);

    let top = (degree_bound as u32 + 5).max(verdict.bound);
    let ext = gb.extended(top).ok_or(Error::UnsoundBound {
        degree: top,
        bound: gb.soundness_degree(),
    })?;
    if series.expand(top as usize) != ext.dimensions(top)? {
        return Err(Error::InvalidArgument(format!(
            "R(z) = {series} disagrees with normal-word counts"
        )));
    }
    for (k, ms) in members.iter().enumerate() {
        let counts = to_bigints(&ideal_dims(spec.generators(k + 1), &ext, top)?);
        if ms.expand(top as usize) != counts {
            return Err(Error::InvalidArgument(format!(
                "series of {} disagrees with its graded dimensions",
                spec.name(k + 1)
            )));
        }
    }
    Ok(RationalFamilySolve {
        a,
        h0,
        determinant: det,
        cofactor: c,
        maximal,
        series,
        members,
        degree_bound,
        degree_bound_holds,
        checked_through: top,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{setup, YX_FAMILY};
    use super::super::{monomial_family, parse_family, verify_coherent_family};
    use super::*;

    fn solve(pres: &str, family: Option<&str>, bound: u32) -> RationalFamilySolve {
        let (p, gb) = setup(pres, bound);
        let f = match family {
            Some(t) => parse_family(&p, t).unwrap(),
            None => monomial_family(&p).unwrap(),
        };
        let v = verify_coherent_family(&f, &gb, bound).unwrap();
        assert!(v.verified, "{:?}", v.failure);
        rational_series_from_family(&f, &v, &gb).unwrap()
    }

    #[test]
    fn yx_filtration() {
        let r = solve("gens x y; rels y*x", Some(YX_FAMILY), 8);
        assert_eq!(r.series.to_string(), "1 / (1 - 2z + z^2)");
        assert_eq!(r.members[0].to_string(), "z / (1 - 2z + z^2)");
        assert_eq!(r.members[1].to_string(), "z / (1 - z)");
        assert_eq!(r.degree_bound, 3);
        assert!(r.degree_bound_holds);
        assert_eq!(r.checked_through, 8);
    }

    #[test]
    fn free_algebras() {
        let r = solve("gens x", Some("ideal X = x\nwitness X: J = 0, x = x, N = 0"), 6);
        assert_eq!(r.series.to_string(), "1 / (1 - z)");
        let fam = "ideal X = x; ideal M = x, y\nwitness X: J = 0, x = x, N = 0\nwitness M: J = X, x = y, N = 0";
        let r = solve("gens x y", Some(fam), 6);
        assert_eq!(r.series.to_string(), "1 / (1 - 2z)");
        assert_eq!(r.h0, vec![IntPoly::z(), IntPoly::from_i64(&[0, 2])]);
    }

    #[test]
    fn discovered_families() {
        assert_eq!(solve("gens x; rels x*x", None, 8).series.to_string(), "1 + z");
        for text in [
            "gens x y z; rels x*x, y*z, z*y",
            "gens x y; rels x*y, y*y",
            "gens x y z",
        ] {
            let r = solve(text, None, 8);
            assert!(r.degree_bound_holds);
            let p = crate::format::parse_presentation(text).unwrap();
            assert_eq!(r.series, crate::hilbert::rational_series_monomial(&p).unwrap());
        }
    }

    #[test]
    fn bareiss_with_row_swap() {
        let p = |c: &[i64]| IntPoly::from_i64(c);
        let m = vec![vec![p(&[0]), p(&[1])], vec![p(&[1]), p(&[0, 1])]];
        let (det, y) = bareiss_solve(&m, &[p(&[1]), p(&[0])]).unwrap();
        assert_eq!(det, p(&[-1]));
        // adj(M) = [[z, -1], [-1, 0]]
        assert_eq!(y, vec![p(&[0, 1]), p(&[-1])]);
    }
}
