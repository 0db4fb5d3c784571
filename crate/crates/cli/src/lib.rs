//! Command dispatch for the `fhc` binary.
//!
//! [`run`] parses arguments and returns everything the process would print
//! together with its exit code: 0 on success, 1 on user error and 2 when a
//! resource guard refused the request.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fhc_core::forest::{h_leq_oracle_bounded, DEFAULT_ORACLE_BOUND};
use fhc_core::hierarchy::{
    complete_witness, enumerate_segment, hasse_dot, level_relation, LevelDescriptor,
};
use fhc_core::iterated::{colim_leq, iminimize, lift, r_drop, Alphabet, Homomorphic, IForest};
use fhc_core::levels::build_t;
use fhc_core::ordinal::OrdinalCNF;
use fhc_core::syntax::{parse_forest, parse_term, serialize, Term};
use fhc_core::term::{
    encode, g_to_s, interpret, jump_height, restrict_level, s_to_g, window_normalize, GTerm, STerm,
};
use fhc_core::Error;

/// Environment variable overriding the brute-force oracle's map bound.
pub const ORACLE_BOUND_VAR: &str = "FHC_ORACLE_BOUND";

#[derive(Debug, Parser)]
#[command(name = "fhc", version, about = "Iterated forests, their terms and the levels they index")]
struct Cli {
    /// Number of colors, or `w` for an unbounded alphabet.
    #[arg(long, global = true, default_value = "2")]
    k: Alphabet,

    /// Shift or relation level.
    #[arg(long, global = true, default_value_t = 0)]
    n: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare two forests under ≤^n: prints <, >, = or ||.
    Cmp {
        lhs: String,
        rhs: String,
        /// Decide by exhaustive search over node maps.
        #[arg(long)]
        oracle: bool,
    },
    /// Minimal equivalent forest.
    Min { forest: String },
    /// Join-irreducible components, one per line.
    Decompose { forest: String },
    /// Term of a forest with products shifted by --n.
    Encode { forest: String },
    /// Minimal forest denoted by a term.
    Eval { term: String },
    /// Rewrite a G-term with graded products.
    G2s { term: String },
    /// Rewrite a product term with G.
    S2g { term: String },
    /// Jump height of a term.
    JumpHeight { term: String },
    /// Restrict a term to jump height --n, or with --m map it into the
    /// window [n, n+m).
    Normalize {
        term: String,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Inclusion between the levels indexed by two forests.
    LevelSubset { lhs: String, rhs: String },
    /// Complete-partition term for the level of a forest.
    Witness { forest: String },
    /// The level tree for an ordinal below ε₀ and a color.
    #[command(name = "build-T")]
    BuildT { alpha: String, color: u32 },
    /// Quotient segment in the cache file format.
    Enumerate {
        #[arg(long, default_value_t = 3)]
        nodes: usize,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
    /// Hasse diagram of a quotient segment in DOT.
    Diagram {
        #[arg(long, default_value_t = 3)]
        nodes: usize,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    User(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_guard() {
            Failure::Guard(e.to_string())
        } else {
            Failure::User(e.to_string())
        }
    }
}

/// What a command computed, before rendering.
struct Report {
    text: String,
    verdict: Value,
    lhs: Option<String>,
    rhs: Option<String>,
    params: Value,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(report) => Outcome {
            code: 0,
            stdout: render(&cli, report),
            stderr: String::new(),
        },
        Err(Failure::User(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Guard(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("refused: {msg}\n"),
        },
    }
}

fn render(cli: &Cli, report: Report) -> String {
    match cli.format {
        Format::Json => {
            let doc = json!({
                "verdict": report.verdict,
                "lhs": report.lhs,
                "rhs": report.rhs,
                "params": report.params,
            });
            format!("{doc}\n")
        }
        Format::Text | Format::Dot => report.text,
    }
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let (k, n) = (cli.k, cli.n);
    let k_json = k.finite().map_or_else(|| json!(k.to_string()), |c| json!(c));
    let base = json!({"k": k_json, "n": n});
    if cli.format == Format::Dot
        && !matches!(cli.command, Command::Diagram { .. } | Command::Enumerate { .. })
    {
        return Err(Failure::User(
            "dot output is only available for enumerate and diagram".into(),
        ));
    }
    let report = |text: String, verdict: Value, lhs: &str, rhs: Option<&str>| Report {
        text,
        verdict,
        lhs: Some(lhs.to_string()),
        rhs: rhs.map(str::to_string),
        params: base.clone(),
    };
    Ok(match &cli.command {
        Command::Cmp { lhs, rhs, oracle } => {
            let (f, g) = (parse_forest(lhs, k)?, parse_forest(rhs, k)?);
            let (le, ge) = if *oracle {
                let bound = oracle_bound()?;
                (oracle_leq(&f, &g, n, bound)?, oracle_leq(&g, &f, n, bound)?)
            } else {
                (colim_leq(&f, &g, n), colim_leq(&g, &f, n))
            };
            let verdict = match (le, ge) {
                (true, true) => "=",
                (true, false) => "<",
                (false, true) => ">",
                (false, false) => "||",
            };
            let mut r = report(line(verdict), json!(verdict), lhs, Some(rhs));
            r.params["oracle"] = json!(oracle);
            r
        }
        Command::Min { forest } => {
            let m = serialize(&iminimize(&parse_forest(forest, k)?));
            report(line(&m), json!(m), forest, None)
        }
        Command::Decompose { forest } => {
            let m = iminimize(&parse_forest(forest, k)?);
            let parts: Vec<String> = m
                .trees()
                .iter()
                .map(|t| serialize(&IForest::from(t.clone())))
                .collect();
            let text = parts.iter().map(|p| line(p)).collect();
            report(text, json!(parts), forest, None)
        }
        Command::Encode { forest } => {
            let u = encode(&parse_forest(forest, k)?, n)?.to_string();
            report(line(&u), json!(u), forest, None)
        }
        Command::Eval { term } => {
            let f = interpret(&as_sterm(term, k)?);
            let m = serialize(&iminimize(&f));
            report(line(&m), json!(m), term, None)
        }
        Command::G2s { term } => {
            let u = g_to_s(&as_gterm(term, k)?).to_string();
            report(line(&u), json!(u), term, None)
        }
        Command::S2g { term } => {
            let u = s_to_g(&as_sterm(term, k)?).to_string();
            report(line(&u), json!(u), term, None)
        }
        Command::JumpHeight { term } => {
            let h = jump_height(&as_gterm(term, k)?);
            report(line(&h.to_string()), json!(h), term, None)
        }
        Command::Normalize { term, m } => {
            let u = as_sterm(term, k)?;
            let out = match m {
                None => restrict_level(&u, n)?,
                Some(m) => window_normalize(&u, n, *m)?,
            }
            .to_string();
            let mut r = report(line(&out), json!(out), term, None);
            r.params["m"] = json!(m);
            r
        }
        Command::LevelSubset { lhs, rhs } => {
            let t = LevelDescriptor::new(parse_forest(lhs, k)?)?;
            let v = LevelDescriptor::new(parse_forest(rhs, k)?)?;
            let rel = level_relation(&t, &v).to_string();
            report(line(&rel), json!(rel), lhs, Some(rhs))
        }
        Command::Witness { forest } => {
            let t = LevelDescriptor::new(parse_forest(forest, k)?)?;
            let w = complete_witness(&t, n).to_string();
            report(line(&w), json!(w), forest, None)
        }
        Command::BuildT { alpha, color } => {
            let a: OrdinalCNF = alpha.parse()?;
            let t = serialize(&build_t(&a, *color, n, k)?);
            let mut r = report(line(&t), json!(t), alpha, None);
            r.params["color"] = json!(color);
            r
        }
        Command::Enumerate { nodes, level } | Command::Diagram { nodes, level } => {
            let colors = k.finite().ok_or(Error::InfiniteAlphabet)?;
            let seg = enumerate_segment(colors, *nodes, *level)?;
            let dot = matches!(cli.command, Command::Diagram { .. }) || cli.format == Format::Dot;
            let text = if dot { hasse_dot(&seg) } else { seg.to_cache_text() };
            let verdict = if dot {
                json!(text)
            } else {
                json!({
                    "classes": seg.classes().iter().map(serialize).collect::<Vec<_>>(),
                    "covers": seg.covers(),
                })
            };
            Report {
                text,
                verdict,
                lhs: None,
                rhs: None,
                params: json!({"k": colors, "nodes": nodes, "level": level}),
            }
        }
    })
}

fn line(s: &str) -> String {
    format!("{s}\n")
}

fn check_colors(max: Option<u32>, k: Alphabet) -> Result<(), Failure> {
    match max {
        Some(c) => k.check(c).map_err(Failure::from),
        None => Ok(()),
    }
}

fn as_sterm(text: &str, k: Alphabet) -> Result<STerm, Failure> {
    let u = match parse_term(text)? {
        Term::S(u) => u,
        Term::G(u) => g_to_s(&u),
    };
    check_colors(interpret(&u).max_color(), k)?;
    Ok(u)
}

fn as_gterm(text: &str, k: Alphabet) -> Result<GTerm, Failure> {
    let u = match parse_term(text)? {
        Term::G(u) => u,
        Term::S(u) => s_to_g(&u),
    };
    check_colors(interpret(&g_to_s(&u)).max_color(), k)?;
    Ok(u)
}

fn oracle_bound() -> Result<u128, Failure> {
    match std::env::var(ORACLE_BOUND_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::User(format!("{ORACLE_BOUND_VAR} must be a natural number"))),
        Err(_) => Ok(DEFAULT_ORACLE_BOUND),
    }
}

// ≤^n by brute force: drop n levels, then search maps between the shape
// forests with labels compared homomorphically.
fn oracle_leq(f: &IForest, g: &IForest, n: usize, bound: u128) -> Result<bool, Failure> {
    let (mut f, mut g) = (f.clone(), g.clone());
    for _ in 0..n {
        let m = f.level().max(g.level());
        f = r_drop(&lift(&f, m)?);
        g = r_drop(&lift(&g, m)?);
    }
    let m = f.level().max(g.level()).max(1);
    let (f, g) = (lift(&f, m)?, lift(&g, m)?);
    let (fs, gs) = (
        f.shapes().expect("level above 0"),
        g.shapes().expect("level above 0"),
    );
    Ok(h_leq_oracle_bounded(&fs, &gs, &Homomorphic, bound)?)
}
