//! On-disk cache of two-sided Gröbner bases.
//!
//! Entries are named by the SHA-256 of the canonical presentation text and
//! the degree bound. An entry is plain text:
//!
//! ```text
//! ncgraded-gb 1
//! key <hex>
//! bound <D>
//! complete <true|false>
//! elements <k>
//! <element>        (k lines, expression syntax, stored order)
//! checksum <hex>   (SHA-256 of everything above, including newlines)
//! ```
//!
//! Loading re-checks the checksum, re-parses every element and re-verifies
//! the basis (monic elements, irredundant leading words, every obstruction
//! through the bound reduces to zero, every relation reduces to zero). Any
//! failure rejects the entry.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::format::parse_expression;
use crate::groebner::{complete_two_sided, GroebnerBasis};
use crate::presentation::Presentation;

pub const CACHE_VERSION: u32 = 1;
const MAGIC: &str = "ncgraded-gb";

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "NCGRADED_CACHE";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// A stored entry was rejected for this reason and replaced.
    Recomputed(String),
}

impl CacheStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CacheStatus::Hit => "hit",
            CacheStatus::Miss => "miss",
            CacheStatus::Recomputed(_) => "recomputed",
        }
    }
}

/// Lowercase hex SHA-256.
pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

/// Content hash of a presentation and bound.
pub fn cache_key(p: &Presentation, bound: u32) -> String {
    sha256_hex(format!("{MAGIC} {CACHE_VERSION}\n{p}bound {bound}\n").as_bytes())
}

/// Canonical text of a cache entry.
pub fn encode(p: &Presentation, gb: &GroebnerBasis) -> String {
    let bound = gb.soundness_degree();
    let mut body = format!(
        "{MAGIC} {CACHE_VERSION}\nkey {}\nbound {bound}\ncomplete {}\nelements {}\n",
        cache_key(p, bound),
        gb.is_complete(),
        gb.elements().len()
    );
    for e in gb.elements() {
        body.push_str(&p.format_poly(e));
        body.push('\n');
    }
    let sum = sha256_hex(body.as_bytes());
    body.push_str(&format!("checksum {sum}\n"));
    body
}

fn reject(msg: impl Into<String>) -> Error {
    Error::Cache(msg.into())
}

fn field<'a>(line: Option<&'a str>, name: &str) -> Result<&'a str> {
    line.and_then(|l| l.strip_prefix(name))
        .and_then(|l| l.strip_prefix(' '))
        .ok_or_else(|| reject(format!("missing `{name}` line")))
}

/// Parse and re-verify an entry for `p` at `bound`.
pub fn decode(p: &Presentation, bound: u32, text: &str) -> Result<GroebnerBasis> {
    let body_end = text.rfind("checksum ").ok_or_else(|| reject("missing checksum"))?;
    let (body, tail) = text.split_at(body_end);
    let sum = field(Some(tail.trim_end_matches('\n')), "checksum")?;
    if sum != sha256_hex(body.as_bytes()) {
        return Err(reject("checksum mismatch"));
    }
    let mut lines = body.lines();
    let header = lines.next().ok_or_else(|| reject("empty entry"))?;
    if header != format!("{MAGIC} {CACHE_VERSION}") {
        return Err(reject(format!("unsupported header {header:?}")));
    }
    if field(lines.next(), "key")? != cache_key(p, bound) {
        return Err(reject("entry belongs to a different presentation or bound"));
    }
    let stored: u32 = field(lines.next(), "bound")?.parse().map_err(|_| reject("bad bound"))?;
    if stored != bound {
        return Err(reject("bound mismatch"));
    }
    let complete = match field(lines.next(), "complete")? {
        "true" => true,
        "false" => false,
        other => return Err(reject(format!("bad completeness flag {other:?}"))),
    };
    let count: usize = field(lines.next(), "elements")?
        .parse()
        .map_err(|_| reject("bad element count"))?;
    let mut elements = Vec::with_capacity(count);
    for line in lines.by_ref().take(count) {
        elements.push(parse_expression(p, line).map_err(|e| reject(format!("bad element: {e}")))?);
    }
    if elements.len() != count || lines.next().is_some() {
        return Err(reject("element count mismatch"));
    }
    let gb = GroebnerBasis::from_elements(p.field(), p.weights(), elements, bound, complete);
    if !gb.verify(p.relations())? {
        return Err(reject("stored basis fails re-verification"));
    }
    Ok(gb)
}

#[derive(Clone, Debug)]
pub struct GbCache {
    dir: PathBuf,
}

impl GbCache {
    pub fn new(dir: impl Into<PathBuf>) -> GbCache {
        GbCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, p: &Presentation, bound: u32) -> PathBuf {
        self.dir.join(format!("{}.gb", cache_key(p, bound)))
    }

    /// `Ok(None)` when there is no entry; `Err(Error::Cache)` when the entry
    /// exists but is rejected.
    pub fn load(&self, p: &Presentation, bound: u32) -> Result<Option<GroebnerBasis>> {
        let path = self.path(p, bound);
        match fs::read_to_string(&path) {
            Ok(text) => decode(p, bound, &text).map(Some),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) if e.kind() == std::io::ErrorKind::InvalidData => Err(reject("entry is not UTF-8")),
            Err(e) => Err(e.into()),
        }
    }

    /// Write atomically through a temporary file in the same directory.
    pub fn store(&self, p: &Presentation, gb: &GroebnerBasis) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(p, gb.soundness_degree());
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, encode(p, gb))?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Cached basis if a valid entry exists, otherwise compute and store.
    pub fn get_or_compute(&self, p: &Presentation, bound: u32) -> Result<(GroebnerBasis, CacheStatus)> {
        let status = match self.load(p, bound) {
            Ok(Some(gb)) => return Ok((gb, CacheStatus::Hit)),
            Ok(None) => CacheStatus::Miss,
            Err(Error::Cache(reason)) => CacheStatus::Recomputed(reason),
            Err(e) => return Err(e),
        };
        let gb = complete_two_sided(p, bound)?;
        self.store(p, &gb)?;
        Ok((gb, status))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_presentation;

    fn pres() -> Presentation {
        parse_presentation("gens x y; rels x*x - 1/2*y*y").unwrap()
    }

    #[test]
    fn round_trip() {
        let p = pres();
        let gb = complete_two_sided(&p, 6).unwrap();
        let text = encode(&p, &gb);
        let back = decode(&p, 6, &text).unwrap();
        assert_eq!(back.elements(), gb.elements());
        assert_eq!(back.is_complete(), gb.is_complete());
        assert_eq!(encode(&p, &back), text);
    }

    #[test]
    fn tampering_is_detected() {
        let p = pres();
        let gb = complete_two_sided(&p, 6).unwrap();
        let text = encode(&p, &gb);
        assert!(matches!(
            decode(&p, 6, &text.replacen("x*x", "y*x", 1)),
            Err(Error::Cache(_))
        ));
        assert!(matches!(decode(&p, 5, &text), Err(Error::Cache(_))));
        assert!(matches!(decode(&p, 6, &text[..text.len() - 3]), Err(Error::Cache(_))));
    }

    #[test]
    fn forged_checksum_fails_verification() {
        let p = pres();
        let gb = complete_two_sided(&p, 6).unwrap();
        let text = encode(&p, &gb);
        // drop one element and recompute a valid checksum
        let body: String = text
            .lines()
            .filter(|l| !l.starts_with("checksum"))
            .collect::<Vec<_>>()
            .join("\n")
            + "\n";
        let mut lines: Vec<&str> = body.lines().collect();
        let n: usize = lines[4].strip_prefix("elements ").unwrap().parse().unwrap();
        assert!(n >= 2);
        lines.pop();
        let count = format!("elements {}", n - 1);
        lines[4] = &count;
        let forged = lines.join("\n") + "\n";
        let forged = format!("{forged}checksum {}\n", sha256_hex(forged.as_bytes()));
        assert!(matches!(decode(&p, 6, &forged), Err(Error::Cache(_))));
    }

    #[test]
    fn directory_cache() {
        let dir = tempfile::tempdir().unwrap();
        let cache = GbCache::new(dir.path());
        let p = pres();
        let (a, s) = cache.get_or_compute(&p, 6).unwrap();
        assert_eq!(s, CacheStatus::Miss);
        let (b, s) = cache.get_or_compute(&p, 6).unwrap();
        assert_eq!(s, CacheStatus::Hit);
        assert_eq!(a.elements(), b.elements());
        let path = cache.path(&p, 6);
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("1/2", "1/3", 1)).unwrap();
        let (c, s) = cache.get_or_compute(&p, 6).unwrap();
        assert!(matches!(s, CacheStatus::Recomputed(_)));
        assert_eq!(c.elements(), a.elements());
        assert_eq!(cache.get_or_compute(&p, 6).unwrap().1, CacheStatus::Hit);
    }
}
