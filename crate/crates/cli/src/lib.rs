//! Command dispatch for the `ncgraded` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use ncgraded::cache::{sha256_hex, CacheStatus, GbCache, CACHE_ENV};
use ncgraded::coherence::{
    check_fil_rate, enumerate_quadratic_monomial, monomial_family, parse_family, rational_series_from_family,
    rproc_certificate, rproc_verify, universal_coherence_probe, verify_coherent_family, CertificateOutcome,
    RProcVerdict,
};
use ncgraded::format::parse_expression_list;
use ncgraded::hilbert::{anick_chains, associated_monomial, rate_estimate, rational_series_monomial, TruncatedSeries};
use ncgraded::report::{self, int, SCHEMA};
use ncgraded::syzygy::{
    coherence_probe, m3_probe, solve_linear_equation, verify_syzygies, EquationInstance, ProbeConfig,
};
use ncgraded::{complete_two_sided, parse_presentation, GroebnerBasis, Presentation};

pub const DEFAULT_BOUND: u32 = 10;

#[derive(Parser, Debug)]
#[command(
    name = "ncgraded",
    version,
    about = "Gröbner bases, syzygies and Hilbert series of graded algebras"
)]
pub struct Cli {
    /// Directory for cached Gröbner bases.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,

    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Print only the payload, without timing or cache metadata.
    #[arg(long, global = true)]
    pub payload_only: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Presentation file.
    pub file: PathBuf,
    /// Degree bound D.
    #[arg(long = "deg", default_value_t = DEFAULT_BOUND)]
    pub bound: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Two-sided Gröbner basis and graded dimensions.
    Gb(Input),
    /// Syzygies of a row of coefficients.
    Solve {
        #[command(flatten)]
        input: Input,
        /// Comma-separated coefficient expressions.
        #[arg(long)]
        coeffs: String,
    },
    /// Hilbert series coefficients, optionally in rational form.
    Hilbert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        exact: bool,
    },
    /// Anick chains of the (associated) monomial algebra.
    Chains {
        #[command(flatten)]
        input: Input,
        /// Highest chain index.
        #[arg(long, default_value_t = 4)]
        index: usize,
    },
    /// Rate estimate from Anick chains.
    Rate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        index: usize,
    },
    /// r-processing certificate and exhaustive check.
    Rproc {
        #[command(flatten)]
        input: Input,
        /// Check this r instead of the certified one.
        #[arg(long)]
        r: Option<u32>,
    },
    /// Verify a coherent family and solve for its Hilbert series.
    Family {
        #[command(flatten)]
        input: Input,
        /// Family file; omit with --discover.
        #[arg(long, required_unless_present = "discover")]
        spec: Option<PathBuf>,
        /// Build the generator-subset family of a quadratic monomial algebra.
        #[arg(long, conflicts_with = "spec")]
        discover: bool,
        /// Also solve for R(z) and the member series.
        #[arg(long)]
        series: bool,
        /// Also check m_i(I) <= m(I) + d·i for i <= 3.
        #[arg(long)]
        fil_rate: bool,
    },
    /// Coherence inequalities on enumerated and sampled right ideals.
    Probe {
        #[command(flatten)]
        input: Input,
        /// Generator degree bound d.
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check m1(I) <= m(I) + d and, with a proven r, m(I) + 2r.
        #[arg(long)]
        universal: bool,
    },
    /// Hilbert series of every quadratic monomial algebra on n generators.
    Enumerate {
        #[arg(long)]
        gens: usize,
        #[arg(long = "deg", default_value_t = DEFAULT_BOUND)]
        bound: u32,
    },
    /// Degrees of H_3 from the syzygies of the lifted relations.
    M3(Input),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb(_) => "gb",
            Command::Solve { .. } => "solve",
            Command::Hilbert { .. } => "hilbert",
            Command::Chains { .. } => "chains",
            Command::Rate { .. } => "rate",
            Command::Rproc { .. } => "rproc",
            Command::Family { .. } => "family",
            Command::Probe { .. } => "probe",
            Command::Enumerate { .. } => "enumerate",
            Command::M3(_) => "m3",
        }
    }
}

/// One invocation: what ran, on what, and what came out.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub command: String,
    pub input_sha256: String,
    pub bounds: Map<String, Value>,
    pub cache: Option<CacheStatus>,
    pub wall_time_ms: u128,
    pub payload: Value,
    pub summary: String,
}

impl RunRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "input_sha256": self.input_sha256,
            "bounds": self.bounds,
            "cache": self.cache.as_ref().map(|c| c.as_str()),
            "wall_time_ms": int(self.wall_time_ms),
            "payload": self.payload,
        })
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(x).join("ncgraded"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("ncgraded"))
}

struct Session {
    cache: Option<GbCache>,
    status: Option<CacheStatus>,
    hashed: Vec<u8>,
}

impl Session {
    fn read(&mut self, path: &Path) -> anyhow::Result<String> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        self.hashed.extend_from_slice(text.as_bytes());
        self.hashed.push(0);
        Ok(text)
    }

    fn presentation(&mut self, input: &Input) -> anyhow::Result<Presentation> {
        let text = self.read(&input.file)?;
        parse_presentation(&text).with_context(|| format!("parsing {}", input.file.display()))
    }

    fn basis(&mut self, p: &Presentation, bound: u32) -> anyhow::Result<GroebnerBasis> {
        match &self.cache {
            Some(c) => {
                let (gb, status) = c.get_or_compute(p, bound)?;
                self.status = Some(status);
                Ok(gb)
            }
            None => Ok(complete_two_sided(p, bound)?),
        }
    }
}

fn bounds(pairs: &[(&str, String)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
        .collect()
}

/// Run one command.
pub fn dispatch(cli: &Cli) -> anyhow::Result<RunRecord> {
    let start = Instant::now();
    let cache = if cli.no_cache {
        None
    } else {
        cli.cache_dir.clone().or_else(default_cache_dir).map(GbCache::new)
    };
    let mut cx = Session {
        cache,
        status: None,
        hashed: Vec::new(),
    };
    cx.hashed.extend_from_slice(cli.command.name().as_bytes());
    cx.hashed.push(0);
    let (bounds, payload, summary) = run(&cli.command, &mut cx)?;
    Ok(RunRecord {
        command: cli.command.name().to_string(),
        input_sha256: sha256_hex(&cx.hashed),
        bounds,
        cache: cx.status,
        wall_time_ms: start.elapsed().as_millis(),
        payload,
        summary,
    })
}

type Outcome = (Map<String, Value>, Value, String);

fn run(cmd: &Command, cx: &mut Session) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Gb(input) => {
            let p = cx.presentation(input)?;
            let gb = cx.basis(&p, input.bound)?;
            let summary = format!(
                "{} basis elements through degree {}{}",
                gb.elements().len(),
                input.bound,
                if gb.is_complete() { ", complete" } else { "" }
            );
            Ok((
                bounds(&[("D", input.bound.to_string())]),
                report::gb(&p, &gb, input.bound),
                summary,
            ))
        }
        Command::Solve { input, coeffs } => {
            cx.hashed.extend_from_slice(coeffs.as_bytes());
            let p = cx.presentation(input)?;
            let coefficients = parse_expression_list(&p, coeffs).context("parsing --coeffs")?;
            if coefficients.is_empty() {
                bail!("--coeffs needs at least one expression");
            }
            let gb = cx.basis(&p, input.bound)?;
            let eq = EquationInstance::over_algebra(&coefficients, input.bound);
            let s = solve_linear_equation(&eq, &gb)?;
            let verified = verify_syzygies(&eq, &s, &gb)?;
            let summary = format!("{} syzygy generators in degrees {:?}", s.len(), s.degrees);
            Ok((
                bounds(&[("D", input.bound.to_string())]),
                report::syzygies(&p, &coefficients, &s, verified),
                summary,
            ))
        }
        Command::Hilbert { input, exact } => {
            let p = cx.presentation(input)?;
            let gb = cx.basis(&p, input.bound)?;
            let t = TruncatedSeries::from_basis(&gb, input.bound)?;
            let mut payload = json!({ "coefficients": report::truncated(&t) });
            let mut summary = t.to_string();
            if *exact {
                let m = associated_monomial(&p, &gb)?;
                let r = rational_series_monomial(&m)?;
                summary = format!("{summary}\n= {r}");
                payload["rational"] = report::rational(&r);
                payload["via_leading_words"] = Value::Bool(!p.is_monomial());
            }
            Ok((bounds(&[("D", input.bound.to_string())]), payload, summary))
        }
        Command::Chains { input, index } | Command::Rate { input, index } => {
            let p = cx.presentation(input)?;
            let m = if p.is_monomial() {
                p.clone()
            } else {
                let gb = cx.basis(&p, input.bound)?;
                associated_monomial(&p, &gb)?
            };
            let chains = anick_chains(&m, *index, input.bound)?;
            let b = bounds(&[("D", input.bound.to_string()), ("index", index.to_string())]);
            let via = Value::Bool(!p.is_monomial());
            if let Command::Chains { .. } = cmd {
                let mut payload = report::chains(&m, &chains);
                payload["via_leading_words"] = via;
                let counts: Vec<usize> = chains.chains.iter().map(|c| c.len()).collect();
                Ok((b, payload, format!("chain counts by index {counts:?}")))
            } else {
                let r = rate_estimate(&chains)?;
                let mut payload = report::rate(&r);
                payload["via_leading_words"] = via;
                let summary = format!("rate {} ({})", r.value, if r.exact { "exact" } else { "lower bound" });
                Ok((b, payload, summary))
            }
        }
        Command::Rproc { input, r } => {
            let p = cx.presentation(input)?;
            let gb = cx.basis(&p, input.bound)?;
            let mut cert = rproc_certificate(&gb)?;
            let check = r.or(match &cert {
                CertificateOutcome::Certified(c) => Some(c.r),
                CertificateOutcome::Refused { .. } => None,
            });
            let mut verdict = Value::Null;
            let mut summary = match &cert {
                CertificateOutcome::Certified(c) => format!("certificate r = {}", c.r),
                CertificateOutcome::Refused { cycle } => format!("refused: overlap cycle {cycle:?}"),
            };
            if let Some(r) = check.filter(|r| input.bound >= r + 2) {
                let v = rproc_verify(&gb, r, input.bound)?;
                if let CertificateOutcome::Certified(c) = &mut cert {
                    c.upgrade(&v);
                }
                summary = match &v {
                    RProcVerdict::Pass { .. } => {
                        format!("{summary}; identity holds at r = {r} through {}", input.bound)
                    }
                    RProcVerdict::Counterexample { p: a, q, .. } => {
                        format!(
                            "{summary}; counterexample at r = {r}: p = {}, q = {}",
                            p.format_word(a),
                            p.format_word(q)
                        )
                    }
                };
                verdict = report::rproc_verdict(&p, &v);
            }
            let payload = json!({ "certificate": report::certificate(&p, &cert), "verification": verdict });
            let mut b = vec![("D", input.bound.to_string())];
            if let Some(r) = r {
                b.push(("r", r.to_string()));
            }
            Ok((bounds(&b), payload, summary))
        }
        Command::Family {
            input,
            spec,
            discover,
            series,
            fil_rate,
        } => {
            let p = cx.presentation(input)?;
            let family = match spec {
                Some(path) => {
                    let text = cx.read(path)?;
                    parse_family(&p, &text).with_context(|| format!("parsing {}", path.display()))?
                }
                None if *discover => monomial_family(&p)?,
                None => bail!("family needs --spec FILE or --discover"),
            };
            let gb = cx.basis(&p, input.bound)?;
            let verdict = verify_coherent_family(&family, &gb, input.bound)?;
            let mut payload = json!({ "verdict": report::family(&family, &verdict) });
            let mut summary = if verdict.verified {
                format!(
                    "verified family of degree {} with {} nonzero members",
                    verdict.degree,
                    family.s()
                )
            } else {
                let f = verdict.failure.as_ref().unwrap();
                format!(
                    "rejected at {}: {} (degree {:?})",
                    family.name(f.member),
                    f.condition,
                    f.degree
                )
            };
            if *series && verdict.verified {
                let solved = rational_series_from_family(&family, &verdict, &gb)?;
                summary = format!("{summary}\nR(z) = {}", solved.series);
                payload["solve"] = report::family_solve(&family, &solved);
            }
            if *fil_rate && verdict.verified {
                let recs = check_fil_rate(&family, &verdict, &gb, 3, input.bound)?;
                payload["fil_rate"] = report::fil_rate(&family, &recs);
            }
            Ok((bounds(&[("D", input.bound.to_string())]), payload, summary))
        }
        Command::Probe {
            input,
            degree,
            samples,
            seed,
            universal,
        } => {
            let p = cx.presentation(input)?;
            let gb = cx.basis(&p, input.bound)?;
            let mut config = ProbeConfig::new(*degree, input.bound);
            config.samples = *samples;
            config.seed = *seed;
            let b = bounds(&[
                ("D", input.bound.to_string()),
                ("d", degree.to_string()),
                ("seed", seed.to_string()),
            ]);
            if *universal {
                let cert = match gb.is_complete().then(|| rproc_certificate(&gb)).transpose()? {
                    Some(CertificateOutcome::Certified(c)) => Some(c),
                    _ => None,
                };
                let rep = universal_coherence_probe(&gb, cert.as_ref(), &config)?;
                let summary = format!(
                    "{} ideals, max m1 - m = {:?}, {}",
                    rep.ideals.len(),
                    rep.max_excess,
                    if rep.all_hold() {
                        "all bounds hold"
                    } else {
                        "VIOLATIONS"
                    }
                );
                Ok((b, report::universal(&p, &rep), summary))
            } else {
                let rep = coherence_probe(&gb, &config)?;
                let summary = format!(
                    "{} ideals, {} pairs, D_R = {:?}, {}",
                    rep.ideals.len(),
                    rep.pairs.len(),
                    rep.d_r,
                    if rep.all_hold() {
                        "all inequalities hold"
                    } else {
                        "VIOLATIONS"
                    }
                );
                Ok((b, report::probe(&p, &rep), summary))
            }
        }
        Command::Enumerate { gens, bound } => {
            let e = enumerate_quadratic_monomial(*gens, *bound)?;
            let summary = format!(
                "{} relation sets, {} distinct series",
                e.entries.len(),
                e.distinct_count()
            );
            Ok((
                bounds(&[("D", bound.to_string()), ("n", gens.to_string())]),
                report::quadratic(&e),
                summary,
            ))
        }
        Command::M3(input) => {
            let p = cx.presentation(input)?;
            let gb = cx.basis(&p, input.bound)?;
            let s = m3_probe(&p, &gb, input.bound)?;
            let payload = json!({
                "degrees": report::ints(&s.degrees),
                "count": int(s.len()),
                "complete": s.complete,
                "exhaustive_below": int(s.exhaustive_below),
            });
            Ok((
                bounds(&[("D", input.bound.to_string())]),
                payload,
                format!("H_3 generators in degrees {:?}", s.degrees),
            ))
        }
    }
}
