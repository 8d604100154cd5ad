//! Finite presentations of connected graded algebras and the trivial
//! extension that turns right-module computations into ideal computations.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::module::{FreeModule, FreeModuleElement};
use crate::poly::Polynomial;
use crate::scalar::Field;
use crate::word::{Letter, MonomialOrder, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Generators are stored by ascending precedence, so the index of a
/// generator is its letter in every [`Word`] over this presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: Field,
    generators: Vec<Generator>,
    relations: Vec<Polynomial>,
    index: HashMap<String, Letter>,
}

impl Presentation {
    /// `generators` must be listed from the smallest to the largest in the
    /// monomial order.
    pub fn new(field: Field, generators: Vec<Generator>, relations: Vec<Polynomial>) -> Result<Presentation> {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::InvalidArgument(format!("generator {} has degree 0", g.name)));
            }
            if index.insert(g.name.clone(), i as Letter).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate generator {}", g.name)));
            }
        }
        let mut rels = Vec::new();
        for r in relations {
            if r.field() != field {
                return Err(Error::InvalidField("relation over a different field".into()));
            }
            if r.is_zero() {
                continue;
            }
            let d = r.homogeneous_degree()?;
            if d < 2 {
                return Err(Error::InvalidArgument(format!(
                    "relation {} has degree {d}; connected presentations need degree >= 2",
                    format_polynomial(&r, &generators)
                )));
            }
            for (w, _) in r.terms() {
                if let Some(&l) = w.letters().iter().find(|&&l| l as usize >= generators.len()) {
                    return Err(Error::MismatchedGenerators {
                        index: l as usize,
                        count: generators.len(),
                    });
                }
            }
            rels.push(r);
        }
        Ok(Presentation {
            field,
            generators,
            relations: rels,
            index,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn weights(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::new(self.weights())
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relations.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(Polynomial::is_monomial)
    }

    pub fn with_relations(&self, relations: Vec<Polynomial>) -> Result<Presentation> {
        Presentation::new(self.field, self.generators.clone(), relations)
    }

    /// Word from whitespace- or `*`-separated generator names, e.g. `"y x"`.
    pub fn word(&self, names: &str) -> Result<Word> {
        let weights = self.weights();
        let mut w = Word::empty();
        for name in names
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|s| !s.is_empty())
        {
            let l = self
                .letter(name)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown generator {name}")))?;
            w.push(l, &weights);
        }
        Ok(w)
    }

    /// Parse a polynomial expression over these generators.
    pub fn poly(&self, expr: &str) -> Result<Polynomial> {
        crate::format::parse_expression(self, expr)
    }

    pub fn format_word(&self, w: &Word) -> String {
        format_word(w, &self.generators)
    }

    pub fn format_poly(&self, p: &Polynomial) -> String {
        format_polynomial(p, &self.generators)
    }

    /// Components joined as `[p0, p1, …]`.
    pub fn format_element(&self, v: &FreeModuleElement, rank: usize) -> String {
        let parts: Vec<String> = v.components(rank).iter().map(|p| self.format_poly(p)).collect();
        format!("[{}]", parts.join(", "))
    }
}

pub fn format_word(w: &Word, gens: &[Generator]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.letters()
        .iter()
        .map(|&l| gens[l as usize].name.as_str())
        .collect::<Vec<_>>()
        .join("*")
}

pub fn format_polynomial(p: &Polynomial, gens: &[Generator]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (w, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if w.is_empty() {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push('*');
            }
            out.push_str(&format_word(w, gens));
        }
    }
    out
}

impl fmt::Display for Presentation {
    /// Canonical text form accepted by [`crate::format::parse_presentation`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}:{}", g.name, g.degree))
            .collect();
        writeln!(f, "gens {}", gens.join(" "))?;
        let order: Vec<&str> = self.generators.iter().rev().map(|g| g.name.as_str()).collect();
        writeln!(f, "order deglex {}", order.join(" > "))?;
        let rels: Vec<String> = self.relations.iter().map(|r| self.format_poly(r)).collect();
        if !rels.is_empty() {
            writeln!(f, "rels {}", rels.join(", "))?;
        }
        Ok(())
    }
}

/// A finitely presented graded right module `F / K` with `F` free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub module: FreeModule,
    pub relations: Vec<FreeModuleElement>,
}

impl ModulePresentation {
    pub fn free(module: FreeModule) -> ModulePresentation {
        ModulePresentation {
            module,
            relations: Vec::new(),
        }
    }
}

/// `R' = M ⊕ R`: one new generator per module slot, placed above every
/// algebra generator in the order. Slot generators are killed by every
/// generator on the left and by each other, so the words of `R'` that involve
/// a slot generator are exactly `e_s · w`.
#[derive(Clone, Debug)]
pub struct TrivialExtensionPresentation {
    pub base: Presentation,
    pub module: ModulePresentation,
    pub extended: Presentation,
    /// Letter of `e_s` in `extended`.
    pub slot_letters: Vec<Letter>,
    /// `deg e_s - shift_s`, the same for every slot.
    pub degree_offset: i64,
}

pub fn trivial_extension(base: &Presentation, module: &ModulePresentation) -> Result<TrivialExtensionPresentation> {
    let field = base.field();
    let shifts = &module.module.shifts;
    for r in &module.relations {
        r.homogeneous_degree()?;
        if r.terms().any(|(t, _)| t.word.is_empty()) {
            return Err(Error::InvalidArgument(
                "module relation with a scalar entry: presentation is not minimal".into(),
            ));
        }
    }
    let min_shift = shifts.iter().copied().min().unwrap_or(0) as i64;
    let degree_offset = 1 - min_shift;
    let n = base.generator_count();
    let mut generators = base.generators().to_vec();
    let mut slot_letters = Vec::new();
    for (s, &shift) in shifts.iter().enumerate() {
        let mut name = format!("e{s}");
        while base.letter(&name).is_some() {
            name.push('_');
        }
        generators.push(Generator {
            name,
            degree: (shift as i64 + degree_offset) as u32,
        });
        slot_letters.push((n + s) as Letter);
    }
    let weights: Vec<u32> = generators.iter().map(|g| g.degree).collect();
    let mut relations = base.relations().to_vec();
    for &e in &slot_letters {
        for x in 0..n as Letter {
            relations.push(Polynomial::monomial(field, Word::from_letters(vec![x, e], &weights)));
        }
    }
    for &e in &slot_letters {
        for &f in &slot_letters {
            relations.push(Polynomial::monomial(field, Word::from_letters(vec![e, f], &weights)));
        }
    }
    for r in &module.relations {
        let mut p = Polynomial::zero(field);
        for (t, c) in r.terms() {
            let e = Word::letter(slot_letters[t.slot], &weights);
            p.add_term(e.concat(&t.word), c);
        }
        relations.push(p);
    }
    let extended = Presentation::new(field, generators, relations)?;
    Ok(TrivialExtensionPresentation {
        base: base.clone(),
        module: module.clone(),
        extended,
        slot_letters,
        degree_offset,
    })
}

impl TrivialExtensionPresentation {
    /// `Σ e_s · p_s` as an element of `R'`.
    pub fn embed(&self, v: &FreeModuleElement) -> Polynomial {
        let weights = self.extended.weights();
        let mut p = Polynomial::zero(v.field());
        for (t, c) in v.terms() {
            let e = Word::letter(self.slot_letters[t.slot], &weights);
            p.add_term(e.concat(&t.word), c);
        }
        p
    }

    /// Inverse of [`embed`](Self::embed) on polynomials whose words all start
    /// with a slot generator followed by algebra letters.
    pub fn extract(&self, p: &Polynomial) -> Option<FreeModuleElement> {
        let weights = self.base.weights();
        let mut v = FreeModuleElement::zero(p.field());
        for (w, c) in p.terms() {
            let (&first, rest) = w.letters().split_first()?;
            let slot = self.slot_letters.iter().position(|&e| e == first)?;
            if rest.iter().any(|l| self.slot_letters.contains(l)) {
                return None;
            }
            let word = Word::from_letters(rest.to_vec(), &weights);
            v.add_term(
                crate::module::ModuleTerm::new(slot, self.module.module.shifts[slot], word),
                c,
            );
        }
        Some(v)
    }
}
