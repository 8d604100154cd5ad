//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's rewriting code: quotients are computed by sparse
//! rational elimination on spanning sets of the ideal in each degree.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Vector = BTreeMap<u64, BigRational>;

/// Incremental row echelon form. Each row is keyed by its largest key and
/// normalised so that entry is one.
#[derive(Default)]
pub struct Echelon {
    rows: HashMap<u64, Vector>,
}

fn axpy(v: &mut Vector, c: &BigRational, row: &Vector) {
    for (k, x) in row {
        let e = v.entry(*k).or_insert_with(BigRational::zero);
        *e -= c * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: u64) -> bool {
        self.rows.contains_key(&k)
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, mut v: Vector) -> Vector {
        self.reduce_tracked(&mut v, None);
        v
    }

    fn reduce_tracked(&self, v: &mut Vector, mut side: Option<(&mut Vector, &HashMap<u64, Vector>)>) {
        let mut cursor = u64::MAX;
        loop {
            let hit = v
                .range(..=cursor)
                .rev()
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = hit else { break };
            axpy(v, &c, &self.rows[&k]);
            if let Some((combo, tags)) = side.as_mut() {
                axpy(combo, &c, &tags[&k]);
            }
            if k == 0 {
                break;
            }
            cursor = k - 1;
        }
    }

    /// Adds `v` to the span; false when it was already there.
    pub fn insert(&mut self, v: Vector) -> bool {
        let v = self.reduce(v);
        self.push(v).is_some()
    }

    fn push(&mut self, mut v: Vector) -> Option<u64> {
        let (&k, c) = v.iter().next_back()?;
        let inv = c.recip();
        for x in v.values_mut() {
            *x *= &inv;
        }
        self.rows.insert(k, v);
        Some(k)
    }
}

/// A homogeneous relation: integer coefficients on words over letters
/// `0..n`.
pub type Relation = Vec<(i64, Vec<u8>)>;

pub fn word_index(n: usize, w: &[u8]) -> u64 {
    w.iter().fold(0, |acc, &l| acc * n as u64 + l as u64)
}

pub fn index_word(n: usize, degree: usize, mut idx: u64) -> Vec<u8> {
    let mut w = vec![0u8; degree];
    for slot in w.iter_mut().rev() {
        *slot = (idx % n as u64) as u8;
        idx /= n as u64;
    }
    w
}

/// One test algebra: the oracle's view and the equivalent presentation text
/// for the library.
#[derive(Clone, Debug)]
pub struct Case {
    pub name: &'static str,
    pub letters: Vec<char>,
    pub relations: Vec<Relation>,
    pub text: String,
}

impl Case {
    /// `rels` uses one character per letter, e.g. `&[(1, "yx"), (-1, "xy")]`.
    pub fn new(name: &'static str, letters: &str, rels: &[&[(i64, &str)]]) -> Case {
        let letters: Vec<char> = letters.chars().collect();
        let relations: Vec<Relation> = rels
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, w)| {
                        (
                            *c,
                            w.chars()
                                .map(|ch| letters.iter().position(|&l| l == ch).unwrap() as u8)
                                .collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut text = format!(
            "gens {}\n",
            letters.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
        );
        if !rels.is_empty() {
            let rendered: Vec<String> = rels.iter().map(|r| render(r)).collect();
            text.push_str(&format!("rels {}\n", rendered.join(", ")));
        }
        Case {
            name,
            letters,
            relations,
            text,
        }
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(|r| r.len() == 1)
    }

    pub fn word(&self, s: &str) -> Vec<u8> {
        s.chars()
            .map(|ch| self.letters.iter().position(|&l| l == ch).unwrap() as u8)
            .collect()
    }

    pub fn format_word(&self, w: &[u8]) -> String {
        w.iter()
            .map(|&l| self.letters[l as usize].to_string())
            .collect::<Vec<_>>()
            .join("*")
    }
}

pub fn render(r: &[(i64, &str)]) -> String {
    let mut out = String::new();
    for (i, (c, w)) in r.iter().enumerate() {
        let word = w.chars().map(|ch| ch.to_string()).collect::<Vec<_>>().join("*");
        let mag = c.abs();
        let sign = if *c < 0 { "-" } else { "+" };
        if i == 0 {
            if *c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if mag != 1 {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&word);
    }
    out
}

/// The fixed corpus of small presentations.
pub fn corpus() -> Vec<Case> {
    vec![
        Case::new("free2", "xy", &[]),
        Case::new("yx", "xy", &[&[(1, "yx")]]),
        Case::new("comm2", "xy", &[&[(1, "yx"), (-1, "xy")]]),
        Case::new(
            "comm3",
            "xyz",
            &[
                &[(1, "yx"), (-1, "xy")],
                &[(1, "zx"), (-1, "xz")],
                &[(1, "zy"), (-1, "yz")],
            ],
        ),
        Case::new("x2", "x", &[&[(1, "xx")]]),
        Case::new("x3", "x", &[&[(1, "xxx")]]),
        Case::new("zt", "xyzt", &[&[(1, "zy"), (-1, "tz")], &[(1, "zx")]]),
    ]
}

pub fn case(name: &str) -> Case {
    corpus().into_iter().find(|c| c.name == name).unwrap()
}

fn rat(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// The quotient of the free algebra by a two-sided ideal, degree by degree.
pub struct Quotient {
    pub n: usize,
    relations: Vec<Relation>,
    /// `ideal[t]`: echelon form of the degree-`t` part of the ideal.
    pub ideal: Vec<Echelon>,
}

impl Quotient {
    pub fn new(case: &Case, max: usize) -> Quotient {
        let mut q = Quotient {
            n: case.n(),
            relations: case.relations.clone(),
            ideal: Vec::new(),
        };
        for t in 0..=max {
            let e = q.ideal_in_degree(t);
            q.ideal.push(e);
        }
        q
    }

    fn pow(&self, k: usize) -> u64 {
        (self.n as u64).pow(k as u32)
    }

    fn ideal_in_degree(&self, t: usize) -> Echelon {
        let mut e = Echelon::default();
        for r in &self.relations {
            let d = r[0].1.len();
            if d > t {
                continue;
            }
            for a in 0..=t - d {
                let b = t - d - a;
                for u in 0..self.pow(a) {
                    for v in 0..self.pow(b) {
                        let vec: Vector = r
                            .iter()
                            .map(|(c, w)| {
                                let idx = (u * self.pow(d) + word_index(self.n, w)) * self.pow(b) + v;
                                (idx, rat(*c))
                            })
                            .collect();
                        e.insert(vec);
                    }
                }
            }
        }
        e
    }

    pub fn max(&self) -> usize {
        self.ideal.len() - 1
    }

    pub fn dims(&self) -> Vec<u64> {
        (0..=self.max())
            .map(|t| self.pow(t) - self.ideal[t].rank() as u64)
            .collect()
    }

    /// Words of degree `t` that are not pivots: a basis of the quotient.
    pub fn standard(&self, t: usize) -> Vec<u64> {
        (0..self.pow(t)).filter(|&w| !self.ideal[t].is_pivot(w)).collect()
    }

    pub fn reduce(&self, t: usize, v: Vector) -> Vector {
        self.ideal[t].reduce(v)
    }

    /// Dimensions of the right ideal generated by `gens` (each a degree and
    /// a vector of words) inside the quotient, degree by degree.
    pub fn right_ideal_dims(&self, gens: &[(usize, Vector)]) -> Vec<u64> {
        (0..=self.max())
            .map(|t| {
                let mut e = Echelon::default();
                for (d, g) in gens {
                    if *d > t {
                        continue;
                    }
                    let b = t - d;
                    for v in 0..self.pow(b) {
                        let shifted: Vector = g.iter().map(|(w, c)| (w * self.pow(b) + v, c.clone())).collect();
                        e.insert(self.reduce(t, shifted));
                    }
                }
                e.rank() as u64
            })
            .collect()
    }

    pub fn poly(&self, terms: &[(i64, &[u8])]) -> (usize, Vector) {
        let d = terms[0].1.len();
        (d, terms.iter().map(|(c, w)| (word_index(self.n, w), rat(*c))).collect())
    }

    /// Degrees of a minimal generating set of the right module of solutions
    /// of `Σ a_i x_i = 0`, through total degree `bound`. Relies on the
    /// algebra being generated in degree one.
    pub fn syzygy_degrees(&self, coeffs: &[(usize, Vector)], bound: usize) -> Vec<usize> {
        const SHIFT: u32 = 48;
        let mut out = Vec::new();
        let mut previous: Vec<Vector> = Vec::new();
        for t in 0..=bound.min(self.max()) {
            let mut images = Echelon::default();
            let mut tags: HashMap<u64, Vector> = HashMap::new();
            let mut kernel = Vec::new();
            for (i, (d, a)) in coeffs.iter().enumerate() {
                if *d > t {
                    continue;
                }
                let b = t - d;
                for w in self.standard(b) {
                    let key = ((i as u64) << SHIFT) | w;
                    let image: Vector = a.iter().map(|(u, c)| (u * self.pow(b) + w, c.clone())).collect();
                    let mut image = self.reduce(t, image);
                    let mut combo: Vector = [(key, BigRational::one())].into_iter().collect();
                    images.reduce_tracked(&mut image, Some((&mut combo, &tags)));
                    if image.is_empty() {
                        kernel.push(combo);
                        continue;
                    }
                    // scale the tag along with the row normalisation
                    let inv = image.values().next_back().unwrap().recip();
                    for x in combo.values_mut() {
                        *x *= &inv;
                    }
                    let pivot = images.push(image).unwrap();
                    tags.insert(pivot, combo);
                }
            }
            let mut decomposable = Echelon::default();
            for k in &previous {
                for x in 0..self.n as u64 {
                    let mut v = Vector::new();
                    for (key, c) in k {
                        let i = (key >> SHIFT) as usize;
                        let w = key & ((1 << SHIFT) - 1);
                        let b = t - coeffs[i].0;
                        let reduced = self.reduce(b, [(w * self.n as u64 + x, c.clone())].into_iter().collect());
                        for (u, e) in reduced {
                            let slot = v.entry(((i as u64) << SHIFT) | u).or_insert_with(BigRational::zero);
                            *slot += e;
                            if slot.is_zero() {
                                v.remove(&(((i as u64) << SHIFT) | u));
                            }
                        }
                    }
                    decomposable.insert(v);
                }
            }
            let new = kernel.len() - decomposable.rank();
            out.extend(std::iter::repeat_n(t, new));
            previous = kernel;
        }
        out
    }
}

/// Syzygy instances: algebra and comma separated coefficients, each given
/// once in the library's syntax and once as oracle terms.
pub fn instances() -> Vec<(&'static str, Vec<&'static str>, u32)> {
    vec![
        ("free2", vec!["x", "y"], 8),
        ("free2", vec!["x*y", "y*y", "x"], 8),
        ("free2", vec!["x*y - y*x", "x*x"], 8),
        ("yx", vec!["x", "y"], 8),
        ("yx", vec!["y", "x*x"], 8),
        ("yx", vec!["x*x*y", "y*y"], 8),
        ("comm2", vec!["x", "y"], 8),
        ("comm2", vec!["x*x", "x*y", "y*y"], 8),
        ("comm2", vec!["x*x*x", "y*y*y"], 8),
        ("comm3", vec!["x", "y", "z"], 8),
        ("comm3", vec!["x*y", "z"], 8),
        ("comm3", vec!["x + y", "z"], 8),
        ("comm3", vec!["x*x - y*z", "x*y + z*z"], 8),
        ("x2", vec!["x"], 8),
        ("x3", vec!["x*x"], 8),
        ("x3", vec!["x", "x*x"], 8),
        ("zt", vec!["z"], 8),
        ("zt", vec!["z", "t"], 8),
        ("zt", vec!["z + x", "y"], 8),
    ]
}

/// Signed sums of words with unit coefficients, e.g. `x*y - y*x`.
pub fn oracle_coefficient(c: &Case, q: &Quotient, expr: &str) -> (usize, Vector) {
    let signed = expr.replace(" - ", " + -");
    let terms: Vec<(i64, Vec<u8>)> = signed
        .split(" + ")
        .map(|t| match t.strip_prefix('-') {
            Some(w) => (-1, c.word(&w.replace('*', ""))),
            None => (1, c.word(&t.replace('*', ""))),
        })
        .collect();
    let refs: Vec<(i64, &[u8])> = terms.iter().map(|(k, w)| (*k, w.as_slice())).collect();
    q.poly(&refs)
}

/// Number of words of each length `0..=max` over `n` letters avoiding every
/// word in `forbidden` as a factor, by direct enumeration.
pub fn avoiding_counts(n: usize, forbidden: &[Vec<u8>], max: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max + 1];
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for count in counts.iter_mut() {
        *count = layer.len() as u64;
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..n as u8 {
                let mut v = w.clone();
                v.push(l);
                if !forbidden.iter().any(|f| v.ends_with(f)) {
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    counts
}

/// Expansion of `num / den` through degree `max`, `den[0] = ±1`.
pub fn expand(num: &[BigInt], den: &[BigInt], max: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(max + 1);
    for k in 0..=max {
        let mut c = num.get(k).cloned().unwrap_or_default();
        for j in 1..den.len().min(k + 1) {
            c -= &den[j] * &out[k - j];
        }
        out.push(c * &den[0]);
    }
    out
}
