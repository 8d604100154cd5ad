//! Every quadratic monomial algebra on a few degree-one generators, with its
//! exact Hilbert series.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groebner::complete_two_sided;
use crate::hilbert::{rational_series_monomial, RationalSeries};
use crate::poly::Polynomial;
use crate::presentation::{Generator, Presentation};
use crate::scalar::Field;
use crate::word::{Letter, Word};

/// `2^(n²)` subsets; three generators give 512.
pub const MAX_QUADRATIC_GENERATORS: usize = 3;

const NAMES: [&str; MAX_QUADRATIC_GENERATORS] = ["x", "y", "z"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticEntry {
    /// Relation words such as `y*x`.
    pub relations: Vec<String>,
    pub series: RationalSeries,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticEnumeration {
    pub generators: usize,
    pub entries: Vec<QuadraticEntry>,
    /// Distinct series sorted by their printed form.
    pub distinct: Vec<RationalSeries>,
    /// Each series was compared with normal-word counts through this degree.
    pub checked_through: u32,
}

/// Subset `mask` of the `n²` words `ab` picks word `a·n + b` when bit
/// `a·n + b` is set; letters index the generators `x, y, z`.
pub fn enumerate_quadratic_monomial(n: usize, bound: u32) -> Result<QuadraticEnumeration> {
    if n == 0 || n > MAX_QUADRATIC_GENERATORS {
        return Err(Error::Budget(format!(
            "quadratic enumeration supports 1..={MAX_QUADRATIC_GENERATORS} generators, got {n}"
        )));
    }
    let bound = bound.max(2);
    let field = Field::Rational;
    let weights = vec![1; n];
    let gens: Vec<Generator> = NAMES[..n]
        .iter()
        .map(|s| Generator {
            name: s.to_string(),
            degree: 1,
        })
        .collect();
    let words: Vec<Word> = (0..n * n)
        .map(|k| Word::from_letters(vec![(k / n) as Letter, (k % n) as Letter], &weights))
        .collect();
    let mut entries = Vec::new();
    for mask in 0u32..1 << (n * n) {
        let chosen: Vec<&Word> = (0..n * n).filter(|k| mask & (1 << k) != 0).map(|k| &words[k]).collect();
        let rels = chosen
            .iter()
            .map(|w| Polynomial::monomial(field, (*w).clone()))
            .collect();
        let p = Presentation::new(field, gens.clone(), rels)?;
        let series = rational_series_monomial(&p)?;
        let counts = complete_two_sided(&p, bound)?.dimensions(bound)?;
        if series.expand(bound as usize) != counts {
            return Err(Error::InvalidArgument(format!(
                "series {series} disagrees with counts for mask {mask}"
            )));
        }
        entries.push(QuadraticEntry {
            relations: chosen.iter().map(|w| p.format_word(w)).collect(),
            series,
        });
    }
    let mut distinct: Vec<RationalSeries> = entries.iter().map(|e| e.series.clone()).collect();
    distinct.sort_by_key(|s| s.to_string());
    distinct.dedup();
    Ok(QuadraticEnumeration {
        generators: n,
        entries,
        distinct,
        checked_through: bound,
    })
}

impl QuadraticEnumeration {
    pub fn distinct_count(&self) -> usize {
        self.distinct.len()
    }

    /// `dim A_k` of every entry, for cross-checks.
    pub fn expansions(&self, max: usize) -> Vec<Vec<BigInt>> {
        self.entries.iter().map(|e| e.series.expand(max)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_generator() {
        let e = enumerate_quadratic_monomial(1, 8).unwrap();
        let s: Vec<String> = e.distinct.iter().map(|s| s.to_string()).collect();
        assert_eq!(s, ["1 + z", "1 / (1 - z)"]);
    }

    #[test]
    fn empty_relations_give_free_series() {
        for n in 1..=3 {
            let e = enumerate_quadratic_monomial(n, 6).unwrap();
            assert_eq!(
                e.entries[0].series.to_string(),
                format!("1 / (1 - {}z)", n).replace("1 - 1z", "1 - z")
            );
            assert_eq!(e.entries.len(), 1 << (n * n));
        }
    }

    #[test]
    fn too_many_generators() {
        assert!(matches!(enumerate_quadratic_monomial(4, 6), Err(Error::Budget(_))));
    }
}
