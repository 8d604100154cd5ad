//! Text formats: presentation files and polynomial expressions.
//!
//! ```text
//! file      := stmt ((';' | newline) stmt)*
//! stmt      := 'field' ('Q' | 'prime' INT | 'GF' '(' INT ')')
//!            | 'gens' (NAME [':' INT])+
//!            | 'order' 'deglex' NAME ('>' NAME)*
//!            | 'rels' expr (',' expr)*
//! expr      := ['+' | '-'] term (('+' | '-') term)*
//! term      := factor (['*'] factor)*
//! factor    := atom ['^' INT]
//! atom      := INT ['/' INT] | NAME | '(' expr ')'
//! ```
//!
//! `#` starts a comment. Juxtaposition is multiplication. A name that is not
//! a generator is split into generator names when that is possible, so with
//! one-letter generators `zy - tz` reads as `z*y - t*z`. Without an `order`
//! statement the first listed generator is the largest.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::presentation::{Generator, Presentation};
use crate::scalar::Field;
use crate::word::Word;

use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Name(String),
    Int(BigInt),
    Sym(char),
    Newline,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let line = li + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Name(chars[start..i].iter().collect()),
                    line,
                    column,
                });
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Int(s.parse().expect("digits")),
                    line,
                    column,
                });
                continue;
            }
            if "+-*/^(),;:>=[]".contains(c) {
                out.push(Token {
                    tok: Tok::Sym(c),
                    line,
                    column,
                });
                i += 1;
                continue;
            }
            return Err(parse_error(line, column, format!("unexpected character {c:?}")));
        }
        out.push(Token {
            tok: Tok::Newline,
            line: li + 1,
            column: chars.len() + 1,
        });
    }
    Ok(out)
}

/// Split a token stream into statements at `;` and newlines.
pub(crate) fn statements(tokens: Vec<Token>) -> Vec<Vec<Token>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for t in tokens {
        match t.tok {
            Tok::Newline | Tok::Sym(';') => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            _ => cur.push(t),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let stmts = statements(tokenize(text)?);
    let mut field = Field::Rational;
    let mut gens: Vec<Generator> = Vec::new();
    let mut order: Option<(Vec<String>, Token)> = None;
    let mut rel_tokens: Vec<Vec<Token>> = Vec::new();
    for stmt in stmts {
        let head = &stmt[0];
        let Tok::Name(kw) = &head.tok else {
            return Err(parse_error(head.line, head.column, "expected a keyword"));
        };
        let rest = &stmt[1..];
        match kw.as_str() {
            "field" => field = parse_field(head, rest)?,
            "gens" => parse_gens(rest, &mut gens)?,
            "order" => {
                let names = parse_order(head, rest)?;
                order = Some((names, head.clone()));
            }
            "rels" => rel_tokens.extend(split_commas(rest)),
            other => {
                return Err(parse_error(
                    head.line,
                    head.column,
                    format!("unknown statement {other:?}"),
                ));
            }
        }
    }
    if gens.is_empty() {
        return Err(parse_error(1, 1, "no generators declared"));
    }
    let ordered = match order {
        None => gens.iter().rev().cloned().collect::<Vec<_>>(),
        Some((names, at)) => {
            if names.len() != gens.len() {
                return Err(parse_error(
                    at.line,
                    at.column,
                    "order must list every generator exactly once",
                ));
            }
            let mut out = Vec::new();
            for name in names.iter().rev() {
                let g = gens
                    .iter()
                    .find(|g| &g.name == name)
                    .ok_or_else(|| parse_error(at.line, at.column, format!("unknown generator {name} in order")))?;
                if out.iter().any(|h: &Generator| h.name == g.name) {
                    return Err(parse_error(
                        at.line,
                        at.column,
                        format!("generator {name} listed twice"),
                    ));
                }
                out.push(g.clone());
            }
            out
        }
    };
    let bare = Presentation::new(field, ordered, Vec::new())?;
    let mut relations = Vec::new();
    for toks in rel_tokens {
        if toks.is_empty() {
            continue;
        }
        let first = toks[0].clone();
        let p = ExprParser::new(&bare, &toks).parse_all()?;
        if let Err(Error::Inhomogeneous { first: a, second: b }) = p.homogeneous_degree() {
            return Err(parse_error(
                first.line,
                first.column,
                format!("inhomogeneous relation: degrees {a} and {b}"),
            ));
        }
        if let Some(d) = p.degree() {
            if d < 2 {
                return Err(parse_error(
                    first.line,
                    first.column,
                    format!("relation of degree {d} < 2"),
                ));
            }
        }
        relations.push(p);
    }
    bare.with_relations(relations)
}

fn parse_field(head: &Token, rest: &[Token]) -> Result<Field> {
    let toks: Vec<&Tok> = rest.iter().map(|t| &t.tok).collect();
    let modulus = match toks.as_slice() {
        [Tok::Name(q)] if q == "Q" || q == "QQ" => return Ok(Field::Rational),
        [Tok::Name(p), Tok::Int(n)] if p == "prime" || p == "GF" => n,
        [Tok::Name(p), Tok::Sym('('), Tok::Int(n), Tok::Sym(')')] if p == "GF" => n,
        _ => {
            return Err(parse_error(
                head.line,
                head.column,
                "expected `field Q` or `field prime P`",
            ))
        }
    };
    let p: u64 = modulus
        .try_into()
        .map_err(|_| parse_error(head.line, head.column, "modulus too large"))?;
    Field::prime(p).map_err(|e| parse_error(head.line, head.column, e.to_string()))
}

fn parse_gens(rest: &[Token], gens: &mut Vec<Generator>) -> Result<()> {
    let mut i = 0;
    while i < rest.len() {
        let t = &rest[i];
        let Tok::Name(name) = &t.tok else {
            return Err(parse_error(t.line, t.column, "expected a generator name"));
        };
        if gens.iter().any(|g| &g.name == name) {
            return Err(parse_error(t.line, t.column, format!("duplicate generator {name}")));
        }
        let mut degree = 1;
        i += 1;
        if i < rest.len() && rest[i].tok == Tok::Sym(':') {
            match rest.get(i + 1).map(|t| &t.tok) {
                Some(Tok::Int(d)) => {
                    degree = d.try_into().ok().filter(|&d: &u32| d >= 1).ok_or_else(|| {
                        parse_error(
                            rest[i + 1].line,
                            rest[i + 1].column,
                            "degree must be a positive integer",
                        )
                    })?;
                    i += 2;
                }
                _ => return Err(parse_error(rest[i].line, rest[i].column, "expected a degree after ':'")),
            }
        } else if i < rest.len() && rest[i].tok == Tok::Sym(',') {
            i += 1;
        }
        gens.push(Generator {
            name: name.clone(),
            degree,
        });
    }
    Ok(())
}

fn parse_order(head: &Token, rest: &[Token]) -> Result<Vec<String>> {
    let mut it = rest.iter();
    match it.next().map(|t| &t.tok) {
        Some(Tok::Name(k)) if k == "deglex" => {}
        _ => return Err(parse_error(head.line, head.column, "only `order deglex` is supported")),
    }
    let mut names = Vec::new();
    let mut expect_name = true;
    for t in it {
        match (&t.tok, expect_name) {
            (Tok::Name(n), true) => {
                names.push(n.clone());
                expect_name = false;
            }
            (Tok::Sym('>'), false) => expect_name = true,
            _ => return Err(parse_error(t.line, t.column, "expected `name > name > …`")),
        }
    }
    Ok(names)
}

pub(crate) fn split_commas(toks: &[Token]) -> Vec<Vec<Token>> {
    let mut out = vec![Vec::new()];
    let mut depth = 0i32;
    for t in toks {
        match t.tok {
            Tok::Sym('(') | Tok::Sym('[') => depth += 1,
            Tok::Sym(')') | Tok::Sym(']') => depth -= 1,
            Tok::Sym(',') if depth == 0 => {
                out.push(Vec::new());
                continue;
            }
            _ => {}
        }
        out.last_mut().unwrap().push(t.clone());
    }
    out
}

/// Parse one polynomial expression over the generators of `p`.
pub fn parse_expression(p: &Presentation, text: &str) -> Result<Polynomial> {
    let toks: Vec<Token> = tokenize(text)?.into_iter().filter(|t| t.tok != Tok::Newline).collect();
    if toks.is_empty() {
        return Err(parse_error(1, 1, "empty expression"));
    }
    ExprParser::new(p, &toks).parse_all()
}

/// Parse a comma-separated list of expressions.
pub fn parse_expression_list(p: &Presentation, text: &str) -> Result<Vec<Polynomial>> {
    let toks: Vec<Token> = tokenize(text)?.into_iter().filter(|t| t.tok != Tok::Newline).collect();
    split_commas(&toks)
        .into_iter()
        .filter(|t| !t.is_empty())
        .map(|t| ExprParser::new(p, &t).parse_all())
        .collect()
}

pub(crate) struct ExprParser<'a> {
    pres: &'a Presentation,
    weights: Vec<u32>,
    toks: &'a [Token],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    pub(crate) fn new(pres: &'a Presentation, toks: &'a [Token]) -> ExprParser<'a> {
        ExprParser {
            pres,
            weights: pres.weights(),
            toks,
            pos: 0,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) => (t.line, t.column + if self.pos >= self.toks.len() { 1 } else { 0 }),
            None => (1, 1),
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (l, c) = self.here();
        parse_error(l, c, msg)
    }

    pub(crate) fn parse_all(mut self) -> Result<Polynomial> {
        let p = self.expr()?;
        if self.pos < self.toks.len() {
            return Err(self.err("unexpected token"));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let field = self.pres.field();
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Sym('-')) => {
                sign = -1;
                self.pos += 1;
            }
            Some(Tok::Sym('+')) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?.scale(&field.from_i64(sign));
        loop {
            match self.peek() {
                Some(Tok::Sym('+')) => {
                    self.pos += 1;
                    acc.add_assign(&self.term()?);
                }
                Some(Tok::Sym('-')) => {
                    self.pos += 1;
                    acc.sub_assign(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Name(_)) | Some(Tok::Int(_)) | Some(Tok::Sym('(')) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Sym('^')) {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Int(n)) => u32::try_from(n).map_err(|_| self.err("exponent too large"))?,
                _ => return Err(self.err("expected an exponent")),
            };
            self.pos += 1;
            let mut r = Polynomial::monomial(self.pres.field(), Word::empty());
            for _ in 0..e {
                r = r.mul(&base);
            }
            return Ok(r);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let field = self.pres.field();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut c = field.from_bigint(&n);
                if self.peek() == Some(&Tok::Sym('/')) {
                    self.pos += 1;
                    let d = match self.peek() {
                        Some(Tok::Int(d)) => field.from_bigint(d),
                        _ => return Err(self.err("expected a denominator")),
                    };
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    self.pos += 1;
                    c = &c * &d.inv();
                }
                Ok(Polynomial::term(Word::empty(), c))
            }
            Some(Tok::Name(name)) => {
                let letters = self.resolve(&name)?;
                self.pos += 1;
                Ok(Polynomial::monomial(field, Word::from_letters(letters, &self.weights)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(&Tok::Sym(')')) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(p)
            }
            _ => Err(self.err("expected a number, generator or '('")),
        }
    }

    /// A generator name, or a concatenation of generator names.
    fn resolve(&self, name: &str) -> Result<Vec<u16>> {
        if let Some(l) = self.pres.letter(name) {
            return Ok(vec![l]);
        }
        split_names(self.pres, name).ok_or_else(|| self.err(format!("unknown generator {name}")))
    }
}

fn split_names(p: &Presentation, s: &str) -> Option<Vec<u16>> {
    if s.is_empty() {
        return Some(Vec::new());
    }
    // longest match first; backtrack on failure
    for end in (1..=s.len()).rev() {
        if !s.is_char_boundary(end) {
            continue;
        }
        if let Some(l) = p.letter(&s[..end]) {
            if let Some(mut rest) = split_names(p, &s[end..]) {
                rest.insert(0, l);
                return Some(rest);
            }
        }
    }
    None
}
