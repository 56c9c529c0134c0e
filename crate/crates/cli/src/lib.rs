//! The `coclone` command line.
//!
//! [`run`] parses arguments, writes to the given streams and returns the
//! exit code: 0 for success (or a YES / all-pass answer), 1 for a NO answer
//! or failed verification, 2 for usage and parse errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use coclone::boolfn::Budget;
use coclone::definability::qpp_definable;
use coclone::galois::{c_cols, pol_k, ppol_k_with, Fingerprint};
use coclone::lattice::{
    entry, is_minimal_weak_base, replay_trace, verify_table, MinimalityMode, RuleChain,
    VerifyOptions,
};
use coclone::relcore::ConjAtom;
use coclone::{parse_relation, Classifier, CoCloneId, Error, Family, FnKind, Relation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// JSON schema of `verify-table --json`.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Parser)]
#[command(name = "coclone", version, about = "Boolean co-clones, weak bases and partial polymorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Name the co-clone generated by a relation.
    Classify {
        relation: Option<String>,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Classify every literal in a file (one per line, `#` comments).
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Print the weak base of a co-clone.
    Weakbase {
        id: String,
        /// Chain parameter, for ids given without it (`IS00 --n 2`).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Verify every catalog entry.
    VerifyTable {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        k_partial: usize,
        #[arg(long)]
        exhaustive_minimality: bool,
        #[arg(long)]
        slow_k4: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check that no proper subset of a relation generates its co-clone.
    Minimal {
        relation: String,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Decide q.p.p. definability of a relation from a language.
    Define {
        relation: String,
        /// Comma-separated relation literals.
        #[arg(long)]
        lang: String,
        /// Allow equality atoms.
        #[arg(long)]
        eq: bool,
    },
    /// Print C(COLS^s) for the clone of a co-clone.
    Cols {
        s: usize,
        #[arg(long)]
        coclone: String,
    },
    /// Total polymorphisms up to arity K.
    Pol {
        relation: String,
        #[arg(short, default_value_t = 2)]
        k: usize,
        /// List members instead of the hex dump.
        #[arg(long)]
        list: bool,
    },
    /// Partial polymorphisms up to arity K.
    Ppol {
        relation: String,
        #[arg(short, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        list: bool,
        /// Allow K = 4.
        #[arg(long)]
        slow: bool,
    },
    /// Replay a derivation chain such as `IM1(COLS^2) > (1=2) > irr`.
    Derive { chain: String },
    /// The computed inclusion order of the catalog.
    Lattice {
        #[arg(long)]
        dot: bool,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{source}")]
    Core {
        source: Error,
        /// Text the error offset refers to.
        input: Option<String>,
    },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl From<Error> for CliError {
    fn from(source: Error) -> Self {
        CliError::Core { source, input: None }
    }
}

/// Exit code of a subcommand.
type Outcome = Result<i32, CliError>;

fn with_input(input: &str) -> impl FnOnce(Error) -> CliError + '_ {
    move |source| CliError::Core { source, input: Some(input.to_string()) }
}

fn relation(src: &str) -> Result<Relation, CliError> {
    parse_relation(src).map_err(with_input(src))
}

fn coclone_id(src: &str, n: Option<usize>) -> Result<CoCloneId, CliError> {
    match n {
        None => src.parse().map_err(with_input(src)),
        Some(n) => {
            let family: Family = src.parse().map_err(with_input(src))?;
            Ok(CoCloneId::new(family, Some(n))?)
        }
    }
}

/// Splits at commas outside brackets, so literals like `{01,10}` survive.
fn split_top_level(src: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in src.char_indices() {
        match c {
            '{' | '(' | '[' => depth += 1,
            '}' | ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&src[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&src[start..]);
    parts.into_iter().map(str::trim).filter(|p| !p.is_empty()).collect()
}

fn formula_literal(e: &coclone::lattice::CatalogEntry) -> Result<String, Error> {
    let atoms: Vec<String> = e
        .formula
        .conjunct_atoms()?
        .into_iter()
        .map(|(r, p)| ConjAtom::new(r, p).map(|a| a.to_string()))
        .collect::<Result<_, _>>()?;
    Ok(format!("conj({}; {})", e.weak_base.arity(), atoms.join(", ")))
}

fn print_fingerprint(out: &mut dyn Write, fp: &Fingerprint, list: bool) -> std::io::Result<()> {
    if !list {
        return out.write_all(fp.to_hex().as_bytes());
    }
    for m in 1..=fp.max_arity() {
        let members: Vec<String> = match fp.kind() {
            FnKind::Total => fp.total_members(m).iter().map(|f| f.to_string()).collect(),
            FnKind::Partial => fp.partial_members(m).iter().map(|f| f.to_string()).collect(),
        };
        writeln!(out, "m={m} n={}: {}", members.len(), members.join(" "))?;
    }
    Ok(())
}

fn classify_cmd(
    out: &mut dyn Write,
    rel: Option<String>,
    n_max: usize,
    fixtures: Option<PathBuf>,
) -> Outcome {
    let classifier = Classifier::new(n_max)?;
    if let Some(path) = fixtures {
        let text = fs::read_to_string(&path).map_err(|source| CliError::Io { path: path.clone(), source })?;
        for line in text.lines() {
            let src = line.split('#').next().unwrap_or("").trim();
            if src.is_empty() {
                continue;
            }
            let r = relation(src)?;
            let class = classifier.classify(&r)?;
            writeln!(out, "{src}\t{class}").ok();
        }
    }
    if let Some(src) = rel {
        let r = relation(&src)?;
        writeln!(out, "{}", classifier.classify(&r)?).ok();
    }
    Ok(EXIT_OK)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Classify { relation: rel, n_max, fixtures } => {
            if rel.is_none() && fixtures.is_none() {
                return Err(CliError::Usage("expected a relation or --fixtures".into()));
            }
            classify_cmd(out, rel, n_max, fixtures)
        }
        Command::Weakbase { id, n } => {
            let id = coclone_id(&id, n)?;
            let e = entry(id)?;
            writeln!(out, "{}", formula_literal(&e)?).ok();
            writeln!(out, "{}", e.weak_base.to_literal()).ok();
            Ok(EXIT_OK)
        }
        Command::VerifyTable { n_max, k_partial, exhaustive_minimality, slow_k4, json } => {
            let opts = VerifyOptions { n_max, k_partial, exhaustive_minimality, slow_k4 };
            let report = verify_table(opts)?;
            if json {
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                writeln!(out, "{text}").ok();
            } else {
                out.write_all(report.to_text().as_bytes()).ok();
            }
            Ok(if report.all_pass() { EXIT_OK } else { EXIT_NO })
        }
        Command::Minimal { relation: src, n_max, exhaustive } => {
            let r = relation(&src)?;
            let classifier = Classifier::new(n_max)?;
            let Some(id) = classifier.classify(&r)?.id() else {
                writeln!(out, "unknown co-clone; nothing to compare against").ok();
                return Ok(EXIT_NO);
            };
            let mode = if exhaustive { MinimalityMode::Exhaustive } else { MinimalityMode::Auto };
            let v = is_minimal_weak_base(&classifier, &r, id, mode)?;
            let how = if v.exhaustive { "exhaustive" } else { "single removals" };
            if v.minimal {
                writeln!(out, "minimal for {id} ({how}, {} subsets)", v.subsets_checked).ok();
                Ok(EXIT_OK)
            } else {
                writeln!(out, "not minimal for {id} ({how})").ok();
                for w in v.counterexamples() {
                    writeln!(out, "keeps {id}: {}", w.kept(&r).to_literal()).ok();
                }
                Ok(EXIT_NO)
            }
        }
        Command::Define { relation: src, lang, eq } => {
            let r = relation(&src)?;
            let gamma = split_top_level(&lang)
                .into_iter()
                .map(relation)
                .collect::<Result<Vec<_>, _>>()?;
            let ans = qpp_definable(&r, &gamma, eq);
            if ans.definable {
                writeln!(out, "YES").ok();
                for a in &ans.witness {
                    writeln!(out, "{a}").ok();
                }
                Ok(EXIT_OK)
            } else {
                writeln!(out, "NO").ok();
                if let Some(t) = ans.counterexample {
                    writeln!(out, "not excluded: {t}").ok();
                }
                Ok(EXIT_NO)
            }
        }
        Command::Cols { s, coclone } => {
            let id = coclone_id(&coclone, None)?;
            let base = entry(id)?.weak_base;
            let r = c_cols(&[base], s)?;
            writeln!(out, "{}", r.to_literal()).ok();
            Ok(EXIT_OK)
        }
        Command::Pol { relation: src, k, list } => {
            let r = relation(&src)?;
            let fp = pol_k(&[r], k)?;
            print_fingerprint(out, &fp, list).ok();
            Ok(EXIT_OK)
        }
        Command::Ppol { relation: src, k, list, slow } => {
            let r = relation(&src)?;
            let budget = if slow { Budget::Slow } else { Budget::Default };
            let fp = ppol_k_with(&[r], k, budget)?;
            print_fingerprint(out, &fp, list).ok();
            Ok(EXIT_OK)
        }
        Command::Derive { chain } => {
            let c: RuleChain = chain.parse().map_err(with_input(&chain))?;
            let trace = replay_trace(&c)?;
            writeln!(out, "{}(COLS^{}): {}", c.start, c.s, trace[0].to_literal()).ok();
            for (step, r) in c.steps.iter().zip(&trace[1..]) {
                writeln!(out, "{step}: {}", r.to_literal()).ok();
            }
            Ok(EXIT_OK)
        }
        Command::Lattice { dot, n_max } => {
            let classifier = Classifier::new(n_max)?;
            let order = classifier.order();
            if dot {
                out.write_all(order.to_dot().as_bytes()).ok();
            } else {
                for (a, b) in order.hasse() {
                    writeln!(out, "{a} < {b}").ok();
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn report_error(err: &mut dyn Write, e: &CliError) {
    writeln!(err, "error: {e}").ok();
    if let CliError::Core { source: Error::Parse { offset, .. }, input: Some(src) } = e {
        writeln!(err, "  {src}").ok();
        writeln!(err, "  {}^", " ".repeat(src[..(*offset).min(src.len())].chars().count())).ok();
    }
}

/// Caps the worker pool at `COCLONE_THREADS` when set.
fn configure_threads() {
    if let Some(n) = std::env::var("COCLONE_THREADS").ok().and_then(|v| v.parse().ok()) {
        // Fails only if the pool already exists, which keeps its size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                err.write_all(text.as_bytes()).ok();
            } else {
                out.write_all(text.as_bytes()).ok();
            }
            return code;
        }
    };
    configure_threads();
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            report_error(err, &e);
            EXIT_USAGE
        }
    }
}
