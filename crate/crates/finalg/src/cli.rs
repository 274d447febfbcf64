//! Command-line front end. Loads theories and algebras from files or
//! builtin generators, runs any single construction or the whole
//! verification suite, and prints a text table or one JSON report with
//! stable sorted keys. Exit codes: 0 when every verdict held, 1 when a
//! check failed, 2 when the invocation itself was bad (usage, unreadable
//! file, parse error).

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{enumerate_congruences, Homomorphism, Point};
use crate::algebra::FiniteAlgebra;
use crate::equivalence::{builtin_hoop_witness, builtin_mv_witness, check_bj_witness, check_maltsev, roundtrip_hoop, roundtrip_point, BJWitness};
use crate::ideals::{enumerate_filters, enumerate_mv_ideals, is_relative_u_ideal, IdealError, SubsetWitness, UIdealVerdict};
use crate::parse::{parse_algebra, parse_theory};
use crate::search::find_models;
use crate::suite;
use crate::term::{check_theory, CorpusVerdict, Theory};
use crate::theories::{boolean_cube, builtins, family, family_names, hoop_reduct, lukasiewicz_chain};
use crate::unital::{dorroh, mv_closure, ClosureResult};

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Unreadable {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write `{path}`: {source}")]
    Unwritable {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    BadFile { path: PathBuf, message: String },
    #[error("duplicate algebra name `{0}` in the corpus")]
    DuplicateName(String),
    #[error("no builtin theory or theory file named `{0}`")]
    UnknownTheory(String),
    #[error("{0}")]
    Usage(String),
}

/// One finished invocation: the canonical JSON payload plus its human
/// rendering.
struct Outcome {
    report: Report,
    text: Vec<String>,
}

/// The machine-readable result of a run.
pub struct Report {
    pub command: String,
    pub ok: bool,
    pub details: Value,
    pub corpus: Vec<String>,
    pub duration_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "ok": self.ok,
            "details": self.details,
            "corpus": self.corpus,
            "duration_ms": self.duration_ms,
        })
    }
}

#[derive(Parser)]
#[command(
    name = "finalg",
    version,
    about = "Finite-model workbench for hoops, MV-algebras, rings, and their unitalisations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit one JSON report with sorted keys instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for corpus sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Seed for sampled checks; exhaustive checks ignore it.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
}

/// Algebras named on the command line: files plus builtin generators.
#[derive(Args, Debug, Default)]
struct CorpusArgs {
    /// Algebra files in the text format.
    #[arg(value_name = "ALGFILE")]
    files: Vec<PathBuf>,
    /// Builtin chains: a size (`--luk 3`) or inclusive range (`--luk 2..5`).
    #[arg(long, value_name = "N|A..B")]
    luk: Option<String>,
    /// Model-search results to include, as `THEORY:SIZE` (repeatable).
    #[arg(long, value_name = "THEORY:SIZE")]
    models: Vec<String>,
}

impl CorpusArgs {
    fn is_empty(&self) -> bool {
        self.files.is_empty() && self.luk.is_none() && self.models.is_empty()
    }
}

#[derive(Clone, Debug)]
struct Subset(Vec<usize>);

fn parse_subset(s: &str) -> Result<Subset, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad element `{t}`: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Subset)
}

#[derive(Subcommand)]
enum Command {
    /// Check algebras against a theory's equations.
    Check {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Builtin theory name or theory file (default: each algebra's own).
        #[arg(long, value_name = "THEORY")]
        theory: Option<String>,
    },
    /// Print one builtin family member in the algebra text format.
    Gen {
        /// Family name, e.g. `lukasiewicz` or `cyclic_ring`.
        family: String,
        /// Size parameter.
        param: usize,
        /// Write here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// List the filters of each hoop (MV-algebras are reduced first).
    Filters {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// List the ideals of each MV-algebra.
    Ideals {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Test whether a subset of an MV-algebra is a congruence-class kernel,
    /// cross-checked against the filter test on the reduct.
    #[command(name = "u-ideal")]
    UIdeal {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Comma-separated elements, e.g. `0,2`.
        #[arg(long, value_name = "ELEMS", value_parser = parse_subset)]
        subset: Subset,
    },
    /// List every congruence of each algebra (carrier at most 6).
    Congruences {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Close a Wajsberg hoop into an MV-algebra of twice the size.
    #[command(name = "mv-closure")]
    MvClosure {
        #[arg(value_name = "ALGFILE")]
        file: PathBuf,
        /// Write the algebra text here and the map sidecar to `FILE.json`.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Attach a scalar identity to a commutative rng.
    Dorroh {
        #[arg(value_name = "ALGFILE")]
        file: PathBuf,
        /// Additive exponent for the scalar part.
        #[arg(long, value_name = "M")]
        exponent: usize,
        /// Write the algebra text here and the map sidecar to `FILE.json`.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Rebuild Wajsberg hoops from the kernels of their closures.
    Roundtrip {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Sweep the builtin corpus of hoops and points instead of files.
        #[arg(long)]
        all: bool,
    },
    /// Check the unit-and-kernel witness terms on a corpus of models.
    #[command(name = "bj-check")]
    BjCheck {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// `hoops` or `mv`.
        #[arg(long, default_value = "hoops", value_name = "THEORY")]
        theory: String,
        /// Witness source; only `builtin` exists.
        #[arg(long, default_value = "builtin", value_name = "SRC")]
        witness: String,
    },
    /// Check the Mal'tsev identities of the induced ternary term.
    Maltsev {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// `hoops` or `mv`.
        #[arg(long, default_value = "hoops", value_name = "THEORY")]
        theory: String,
    },
    /// Verify the split short five lemma for a point file.
    Ssfl {
        #[arg(value_name = "POINTFILE")]
        file: PathBuf,
    },
    /// Search for all models of a theory at one size.
    #[command(name = "find-models")]
    FindModels {
        /// Builtin theory name or theory file.
        theory: String,
        #[arg(long, value_name = "N")]
        size: usize,
        /// Stop the raw search after this many tables.
        #[arg(long, value_name = "K")]
        limit: Option<usize>,
    },
    /// Run the verification suite.
    Suite {
        /// Run every part (this is also the default).
        #[arg(long)]
        full: bool,
        /// Run one named part instead.
        #[arg(long, value_name = "NAME", conflicts_with = "full")]
        part: Option<String>,
    },
}

/// Parses argv and runs the invocation; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        // a later invocation in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    let seed = cli.seed.unwrap_or(suite::DEFAULT_SEED);
    let start = Instant::now();
    match dispatch(cli.command, seed) {
        Ok(mut outcome) => {
            outcome.report.duration_ms = start.elapsed().as_millis() as u64;
            if cli.json {
                println!("{}", outcome.report.to_json());
            } else {
                for line in &outcome.text {
                    println!("{line}");
                }
            }
            i32::from(!outcome.report.ok)
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cmd: Command, seed: u64) -> Result<Outcome, CliError> {
    match cmd {
        Command::Check { corpus, theory } => cmd_check(corpus, theory),
        Command::Gen { family, param, out } => cmd_gen(&family, param, out),
        Command::Filters { corpus } => cmd_filters(corpus),
        Command::Ideals { corpus } => cmd_ideals(corpus),
        Command::UIdeal { corpus, subset } => cmd_u_ideal(corpus, subset),
        Command::Congruences { corpus } => cmd_congruences(corpus),
        Command::MvClosure { file, out } => cmd_mv_closure(&file, out),
        Command::Dorroh {
            file,
            exponent,
            out,
        } => cmd_dorroh(&file, exponent, out),
        Command::Roundtrip { corpus, all } => cmd_roundtrip(corpus, all),
        Command::BjCheck {
            corpus,
            theory,
            witness,
        } => cmd_bj(corpus, &theory, &witness, true),
        Command::Maltsev { corpus, theory } => cmd_bj(corpus, &theory, "builtin", false),
        Command::Ssfl { file } => cmd_ssfl(&file),
        Command::FindModels {
            theory,
            size,
            limit,
        } => cmd_find_models(&theory, size, limit),
        Command::Suite { full: _, part } => cmd_suite(part.as_deref(), seed),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Unreadable {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Unwritable {
        path: path.to_path_buf(),
        source,
    })
}

fn load_algebra(path: &Path) -> Result<Arc<FiniteAlgebra>, CliError> {
    let text = read(path)?;
    parse_algebra(&text)
        .map(Arc::new)
        .map_err(|e| CliError::BadFile {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
}

/// A builtin theory by name, or a theory file by path.
fn resolve_theory(spec: &str) -> Result<Theory, CliError> {
    if let Some(t) = builtins().get(spec) {
        return Ok(t.clone());
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = read(path)?;
        return parse_theory(&text).map_err(|e| CliError::BadFile {
            path: path.to_path_buf(),
            message: e.to_string(),
        });
    }
    Err(CliError::UnknownTheory(spec.to_string()))
}

/// Chain sizes from `--luk`: one size or an inclusive `A..B` range.
fn parse_luk(spec: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad --luk value `{spec}`: expected N or A..B with 2 <= A <= B"));
    let range = if let Some((a, b)) = spec.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        vec![spec.trim().parse().map_err(|_| bad())?]
    };
    if range.iter().any(|&n| n < 2) {
        return Err(bad());
    }
    Ok(range)
}

/// Loads and merges all requested algebras, rejecting duplicate names,
/// sorted by name.
fn load_corpus(args: &CorpusArgs) -> Result<Vec<Arc<FiniteAlgebra>>, CliError> {
    if args.is_empty() {
        return Err(CliError::Usage(
            "empty corpus: pass ALGFILE arguments, --luk N, or --models THEORY:SIZE".into(),
        ));
    }
    let mut out: Vec<Arc<FiniteAlgebra>> = Vec::new();
    for path in &args.files {
        out.push(load_algebra(path)?);
    }
    if let Some(spec) = &args.luk {
        for n in parse_luk(spec)? {
            out.push(Arc::new(lukasiewicz_chain(n)));
        }
    }
    for spec in &args.models {
        let (th_name, size) = spec.split_once(':').ok_or_else(|| {
            CliError::Usage(format!("bad --models value `{spec}`: expected THEORY:SIZE"))
        })?;
        let th = resolve_theory(th_name)?;
        let size: usize = size
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad size in --models value `{spec}`")))?;
        out.extend(find_models(&th, size, None).into_iter().map(Arc::new));
    }
    let mut seen = BTreeSet::new();
    for a in &out {
        if !seen.insert(a.name().to_string()) {
            return Err(CliError::DuplicateName(a.name().to_string()));
        }
    }
    out.sort_by(|a, b| a.name().cmp(b.name()));
    Ok(out)
}

fn names(corpus: &[Arc<FiniteAlgebra>]) -> Vec<String> {
    corpus.iter().map(|a| a.name().to_string()).collect()
}

fn cmd_check(corpus: CorpusArgs, theory: Option<String>) -> Result<Outcome, CliError> {
    let algs = load_corpus(&corpus)?;
    let fixed = theory.as_deref().map(resolve_theory).transpose()?;
    let rows: Vec<(Value, String, bool)> = algs
        .par_iter()
        .map(|a| {
            let th = match &fixed {
                Some(t) => t.clone(),
                None => match resolve_theory(a.theory()) {
                    Ok(t) => t,
                    Err(_) => {
                        return (
                            json!({"algebra": a.name(), "error": format!("unknown declared theory `{}`", a.theory()), "ok": false}),
                            format!("{}: FAIL unknown declared theory `{}`", a.name(), a.theory()),
                            false,
                        )
                    }
                },
            };
            match check_theory(a, &th) {
                Ok(v) if v.ok() => (
                    json!({"algebra": a.name(), "ok": true, "theory": th.name}),
                    format!("{}: ok against `{}` ({} equations)", a.name(), th.name, th.equations.len()),
                    true,
                ),
                Ok(v) => {
                    let (eq, verdict) = v
                        .verdicts
                        .iter()
                        .find(|(_, v)| !v.holds())
                        .expect("failing theory has a failing equation");
                    let at = verdict.counterexample().unwrap_or_default().to_vec();
                    (
                        json!({
                            "algebra": a.name(),
                            "counterexample": {"assignment": at, "equation": eq.to_string()},
                            "ok": false,
                            "theory": th.name,
                        }),
                        format!("{}: FAIL `{}` at {:?}", a.name(), eq, at),
                        false,
                    )
                }
                Err(e) => (
                    json!({"algebra": a.name(), "error": e.to_string(), "ok": false, "theory": th.name}),
                    format!("{}: FAIL {e}", a.name()),
                    false,
                ),
            }
        })
        .collect();
    let ok = rows.iter().all(|(_, _, ok)| *ok);
    Ok(Outcome {
        report: Report {
            command: "check".into(),
            ok,
            details: Value::Array(rows.iter().map(|(v, _, _)| v.clone()).collect()),
            corpus: names(&algs),
            duration_ms: 0,
        },
        text: rows.into_iter().map(|(_, line, _)| line).collect(),
    })
}

fn cmd_gen(family_name: &str, param: usize, out: Option<PathBuf>) -> Result<Outcome, CliError> {
    let alg = family(family_name, param).ok_or_else(|| {
        CliError::Usage(format!(
            "no member `{family_name}({param})`; families: {}",
            family_names().join(", ")
        ))
    })?;
    let text = alg.to_string();
    if let Some(path) = &out {
        write(path, &text)?;
    }
    Ok(Outcome {
        report: Report {
            command: "gen".into(),
            ok: true,
            details: alg.to_json(),
            corpus: vec![alg.name().to_string()],
            duration_ms: 0,
        },
        text: match out {
            Some(path) => vec![format!("wrote {} to {}", alg.name(), path.display())],
            None => text.lines().map(String::from).collect(),
        },
    })
}

fn subsets_json(sets: &[SubsetWitness]) -> Value {
    Value::Array(
        sets.iter()
            .map(|s| Value::Array(s.sorted().into_iter().map(Value::from).collect()))
            .collect(),
    )
}

fn subsets_text(sets: &[SubsetWitness]) -> String {
    sets.iter()
        .map(|s| {
            format!(
                "{{{}}}",
                s.sorted()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Shared shape of `filters` and `ideals`: one subset list per algebra.
fn subset_listing(
    command: &str,
    corpus: CorpusArgs,
    what: &str,
    list: impl Fn(&Arc<FiniteAlgebra>) -> Result<Vec<SubsetWitness>, IdealError> + Sync,
) -> Result<Outcome, CliError> {
    let algs = load_corpus(&corpus)?;
    let rows: Vec<(Value, String, bool)> = algs
        .par_iter()
        .map(|a| match list(a) {
            Ok(sets) => (
                json!({"algebra": a.name(), command: subsets_json(&sets), "ok": true}),
                format!("{}: {} {what}: {}", a.name(), sets.len(), subsets_text(&sets)),
                true,
            ),
            Err(e) => (
                json!({"algebra": a.name(), "error": e.to_string(), "ok": false}),
                format!("{}: FAIL {e}", a.name()),
                false,
            ),
        })
        .collect();
    let ok = rows.iter().all(|(_, _, ok)| *ok);
    Ok(Outcome {
        report: Report {
            command: command.into(),
            ok,
            details: Value::Array(rows.iter().map(|(v, _, _)| v.clone()).collect()),
            corpus: names(&algs),
            duration_ms: 0,
        },
        text: rows.into_iter().map(|(_, line, _)| line).collect(),
    })
}

fn cmd_filters(corpus: CorpusArgs) -> Result<Outcome, CliError> {
    subset_listing("filters", corpus, "filters", |a| {
        if a.signature().arity("oplus").is_some() {
            let reduct = Arc::new(hoop_reduct(a)?);
            enumerate_filters(&reduct)
        } else {
            enumerate_filters(a)
        }
    })
}

fn cmd_ideals(corpus: CorpusArgs) -> Result<Outcome, CliError> {
    subset_listing("ideals", corpus, "ideals", enumerate_mv_ideals)
}

fn cmd_u_ideal(corpus: CorpusArgs, subset: Subset) -> Result<Outcome, CliError> {
    let algs = load_corpus(&corpus)?;
    if algs.len() != 1 {
        return Err(CliError::Usage(format!(
            "u-ideal takes exactly one algebra, got {}",
            algs.len()
        )));
    }
    let a = &algs[0];
    let members: BTreeSet<usize> = subset.0.iter().copied().collect();
    let shown: Vec<usize> = members.iter().copied().collect();
    let (detail, line, ok) = match is_relative_u_ideal(a, &members) {
        Ok(UIdealVerdict::Holds {
            congruence,
            quotient,
        }) => (
            json!({
                "algebra": a.name(),
                "congruence": congruence.repr(),
                "holds": true,
                "quotient": quotient.cod().name(),
                "subset": shown,
            }),
            format!(
                "{}: {{{}}} is the kernel of the quotient onto {}",
                a.name(),
                shown
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                quotient.cod().name()
            ),
            true,
        ),
        Ok(UIdealVerdict::Fails) => (
            json!({"algebra": a.name(), "holds": false, "subset": shown}),
            format!(
                "{}: {{{}}} is not a congruence-class kernel",
                a.name(),
                shown
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            false,
        ),
        Err(e @ IdealError::OutOfCarrier { .. }) => {
            return Err(CliError::Usage(e.to_string()));
        }
        Err(e) => (
            json!({"algebra": a.name(), "error": e.to_string(), "holds": false, "subset": shown}),
            format!("{}: FAIL {e}", a.name()),
            false,
        ),
    };
    Ok(Outcome {
        report: Report {
            command: "u-ideal".into(),
            ok,
            details: detail,
            corpus: names(&algs),
            duration_ms: 0,
        },
        text: vec![line],
    })
}

fn cmd_congruences(corpus: CorpusArgs) -> Result<Outcome, CliError> {
    let algs = load_corpus(&corpus)?;
    if let Some(big) = algs.iter().find(|a| a.size() > 6) {
        return Err(CliError::Usage(format!(
            "`{}` has {} elements; congruence enumeration stops at 6",
            big.name(),
            big.size()
        )));
    }
    let rows: Vec<(Value, String)> = algs
        .par_iter()
        .map(|a| {
            let congs = enumerate_congruences(a);
            let blocks: Vec<Value> = congs
                .iter()
                .map(|c| {
                    Value::Array(
                        c.blocks()
                            .into_iter()
                            .map(|b| Value::Array(b.into_iter().map(Value::from).collect()))
                            .collect(),
                    )
                })
                .collect();
            (
                json!({"algebra": a.name(), "congruences": blocks, "count": congs.len()}),
                format!(
                    "{}: {} congruences with {:?} blocks",
                    a.name(),
                    congs.len(),
                    congs.iter().map(|c| c.num_blocks()).collect::<Vec<_>>()
                ),
            )
        })
        .collect();
    Ok(Outcome {
        report: Report {
            command: "congruences".into(),
            ok: true,
            details: Value::Array(rows.iter().map(|(v, _)| v.clone()).collect()),
            corpus: names(&algs),
            duration_ms: 0,
        },
        text: rows.into_iter().map(|(_, line)| line).collect(),
    })
}

fn map_json(h: &Homomorphism) -> Value {
    Value::Array(h.map().iter().map(|&v| Value::from(v)).collect())
}

/// Shared tail of `mv-closure` and `dorroh`: emit the text format and the
/// sidecar naming the unit/proj/sect maps elementwise.
fn closure_outcome(
    command: &str,
    input: &Arc<FiniteAlgebra>,
    r: &ClosureResult,
    out: Option<PathBuf>,
) -> Result<Outcome, CliError> {
    let text = r.output.to_string();
    let sidecar = json!({
        "algebra": r.output.name(),
        "base": r.point.base().name(),
        "base_kernel": r.base_kernel,
        "input": input.name(),
        "proj": map_json(r.point.proj()),
        "sect": map_json(r.point.sect()),
        "unit": map_json(&r.unit),
    });
    let mut lines = Vec::new();
    if let Some(path) = &out {
        write(path, &text)?;
        let side_path = PathBuf::from(format!("{}.json", path.display()));
        write(&side_path, &format!("{sidecar}\n"))?;
        lines.push(format!(
            "wrote {} to {} and its maps to {}",
            r.output.name(),
            path.display(),
            side_path.display()
        ));
    } else {
        lines.extend(text.lines().map(String::from));
        lines.push(sidecar.to_string());
    }
    Ok(Outcome {
        report: Report {
            command: command.into(),
            ok: true,
            details: json!({"algebra": r.output.to_json(), "maps": sidecar}),
            corpus: vec![input.name().to_string()],
            duration_ms: 0,
        },
        text: lines,
    })
}

fn cmd_mv_closure(file: &Path, out: Option<PathBuf>) -> Result<Outcome, CliError> {
    let w = load_algebra(file)?;
    match mv_closure(&w) {
        Ok(r) => closure_outcome("mv-closure", &w, &r, out),
        Err(e) => Ok(Outcome {
            report: Report {
                command: "mv-closure".into(),
                ok: false,
                details: json!({"algebra": w.name(), "error": e.to_string()}),
                corpus: vec![w.name().to_string()],
                duration_ms: 0,
            },
            text: vec![format!("{}: FAIL {e}", w.name())],
        }),
    }
}

fn cmd_dorroh(file: &Path, exponent: usize, out: Option<PathBuf>) -> Result<Outcome, CliError> {
    let r = load_algebra(file)?;
    match dorroh(&r, exponent) {
        Ok(c) => closure_outcome("dorroh", &r, &c, out),
        Err(e) => Ok(Outcome {
            report: Report {
                command: "dorroh".into(),
                ok: false,
                details: json!({"algebra": r.name(), "error": e.to_string(), "exponent": exponent}),
                corpus: vec![r.name().to_string()],
                duration_ms: 0,
            },
            text: vec![format!("{}: FAIL {e}", r.name())],
        }),
    }
}

fn cmd_roundtrip(corpus: CorpusArgs, all: bool) -> Result<Outcome, CliError> {
    if all {
        if !corpus.is_empty() {
            return Err(CliError::Usage(
                "--all replaces the corpus arguments; pass one or the other".into(),
            ));
        }
        let part = suite::run_named("roundtrips", suite::DEFAULT_SEED).expect("part exists");
        let text: Vec<String> = part.details.clone();
        return Ok(Outcome {
            report: Report {
                command: "roundtrip".into(),
                ok: part.ok,
                details: json!({
                    "details": part.details,
                    "part": part.name,
                }),
                corpus: part.corpus,
                duration_ms: 0,
            },
            text,
        });
    }
    let algs = load_corpus(&corpus)?;
    let rows: Vec<(Value, String, bool)> = algs
        .par_iter()
        .map(|w| match roundtrip_hoop(w) {
            Ok(iso) => (
                json!({"algebra": w.name(), "iso": map_json(&iso), "ok": true}),
                format!(
                    "{}: isomorphic to the kernel of its closure via {:?}",
                    w.name(),
                    iso.map()
                ),
                true,
            ),
            Err(e) => (
                json!({"algebra": w.name(), "error": e.to_string(), "ok": false}),
                format!("{}: FAIL {e}", w.name()),
                false,
            ),
        })
        .collect();
    let ok = rows.iter().all(|(_, _, ok)| *ok);
    Ok(Outcome {
        report: Report {
            command: "roundtrip".into(),
            ok,
            details: Value::Array(rows.iter().map(|(v, _, _)| v.clone()).collect()),
            corpus: names(&algs),
            duration_ms: 0,
        },
        text: rows.into_iter().map(|(_, line, _)| line).collect(),
    })
}

fn corpus_verdict_json(v: &CorpusVerdict) -> Value {
    match &v.failure {
        None => json!({"certified_on": v.certified_on, "ok": true}),
        Some(f) => json!({
            "certified_on": v.certified_on,
            "failure": {"algebra": f.algebra, "assignment": f.assignment, "equation": f.equation},
            "ok": false,
        }),
    }
}

fn corpus_verdict_text(label: &str, v: &CorpusVerdict) -> String {
    match &v.failure {
        None => format!("{label}: ok on {} algebras", v.certified_on.len()),
        Some(f) => format!(
            "{label}: FAIL `{}` on {} at {:?}",
            f.equation, f.algebra, f.assignment
        ),
    }
}

/// Corpus for witness checks when none is given on the command line.
fn default_witness_corpus(mv: bool) -> Vec<Arc<FiniteAlgebra>> {
    let th = builtins()
        .get(if mv { "mv" } else { "hoop" })
        .expect("builtin theory");
    let mut out: Vec<Arc<FiniteAlgebra>> = (1..=4)
        .flat_map(|n| find_models(th, n, None))
        .map(Arc::new)
        .collect();
    if mv {
        out.push(Arc::new(lukasiewicz_chain(5)));
        out.push(Arc::new(boolean_cube(3)));
    } else {
        for n in 2..=5 {
            out.push(Arc::new(
                hoop_reduct(&lukasiewicz_chain(n)).expect("chain reduct"),
            ));
        }
    }
    out
}

fn cmd_bj(
    corpus: CorpusArgs,
    theory: &str,
    witness: &str,
    with_schemas: bool,
) -> Result<Outcome, CliError> {
    if witness != "builtin" {
        return Err(CliError::Usage(format!(
            "unknown witness source `{witness}`; only `builtin` exists"
        )));
    }
    let (w, mv): (BJWitness, bool) = match theory {
        "hoops" | "hoop" | "whoops" | "whoop" => (builtin_hoop_witness(), false),
        "mv" | "mvalg" => (builtin_mv_witness(), true),
        other => {
            return Err(CliError::Usage(format!(
                "no builtin witness for theory `{other}`; use hoops or mv"
            )))
        }
    };
    let algs = if corpus.is_empty() {
        default_witness_corpus(mv)
    } else {
        load_corpus(&corpus)?
    };
    let command = if with_schemas { "bj-check" } else { "maltsev" };
    let mut details = serde_json::Map::new();
    let mut text = Vec::new();
    details.insert(
        "witness".into(),
        json!({
            "alphas": w.alphas.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "constants": w.constants.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "theory": w.theory.name,
            "theta": w.theta.to_string(),
        }),
    );
    let mut ok = true;
    if with_schemas {
        match check_bj_witness(&w, &algs) {
            Ok(v) => {
                ok &= v.failure.is_none();
                text.push(corpus_verdict_text("witness schemas", &v));
                details.insert("schemas".into(), corpus_verdict_json(&v));
            }
            Err(e) => {
                ok = false;
                text.push(format!("witness schemas: FAIL {e}"));
                details.insert("schemas".into(), json!({"error": e.to_string(), "ok": false}));
            }
        }
    }
    match check_maltsev(&w, &algs) {
        Ok(v) => {
            ok &= v.failure.is_none();
            text.push(corpus_verdict_text("maltsev identities", &v));
            details.insert("maltsev".into(), corpus_verdict_json(&v));
        }
        Err(e) => {
            ok = false;
            text.push(format!("maltsev identities: FAIL {e}"));
            details.insert("maltsev".into(), json!({"error": e.to_string(), "ok": false}));
        }
    }
    Ok(Outcome {
        report: Report {
            command: command.into(),
            ok,
            details: Value::Object(details),
            corpus: {
                let mut n = names(&algs);
                n.sort();
                n
            },
            duration_ms: 0,
        },
        text,
    })
}

/// Point file: JSON `{"total": ALGFILE, "base": ALGFILE, "proj": [..],
/// "sect": [..]}` with paths relative to the point file.
fn load_point(path: &Path) -> Result<Point, CliError> {
    let bad = |message: String| CliError::BadFile {
        path: path.to_path_buf(),
        message,
    };
    let text = read(path)?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| bad(format!("not valid JSON: {e}")))?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let field = |name: &str| {
        v.get(name)
            .ok_or_else(|| bad(format!("missing field `{name}`")))
    };
    let alg_of = |name: &str| -> Result<Arc<FiniteAlgebra>, CliError> {
        let rel = field(name)?
            .as_str()
            .ok_or_else(|| bad(format!("field `{name}` must be a file path")))?;
        load_algebra(&dir.join(rel))
    };
    let map_of = |name: &str| -> Result<Vec<usize>, CliError> {
        field(name)?
            .as_array()
            .ok_or_else(|| bad(format!("field `{name}` must be an array")))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| bad(format!("field `{name}` must hold non-negative integers")))
            })
            .collect()
    };
    let total = alg_of("total")?;
    let base = alg_of("base")?;
    let proj = Homomorphism::new(Arc::clone(&total), Arc::clone(&base), map_of("proj")?)
        .map_err(|e| bad(format!("proj: {e}")))?;
    let sect = Homomorphism::new(base, total, map_of("sect")?)
        .map_err(|e| bad(format!("sect: {e}")))?;
    Point::new(proj, sect).map_err(|e| bad(e.to_string()))
}

fn cmd_ssfl(file: &Path) -> Result<Outcome, CliError> {
    let pt = load_point(file)?;
    let total = pt.total().name().to_string();
    let (detail, line, ok) = match roundtrip_point(&pt) {
        Ok(iso) => (
            json!({"ok": true, "witness_iso": map_json(&iso)}),
            format!(
                "{total}: split short five lemma holds; comparison isomorphism {:?}",
                iso.map()
            ),
            true,
        ),
        Err(e) => (
            json!({"counterexample": e.to_string(), "ok": false}),
            format!("{total}: FAIL {e}"),
            false,
        ),
    };
    Ok(Outcome {
        report: Report {
            command: "ssfl".into(),
            ok,
            details: detail,
            corpus: vec![total],
            duration_ms: 0,
        },
        text: vec![line],
    })
}

fn cmd_find_models(theory: &str, size: usize, limit: Option<usize>) -> Result<Outcome, CliError> {
    if size == 0 {
        return Err(CliError::Usage("--size must be at least 1".into()));
    }
    let th = resolve_theory(theory)?;
    let models = find_models(&th, size, limit);
    let mut text = Vec::new();
    for (i, m) in models.iter().enumerate() {
        if i > 0 {
            text.push(String::new());
        }
        text.extend(m.to_string().lines().map(String::from));
    }
    if models.is_empty() {
        text.push(format!("no models of `{}` with {size} elements", th.name));
    }
    Ok(Outcome {
        report: Report {
            command: "find-models".into(),
            ok: true,
            details: json!({
                "count": models.len(),
                "models": models.iter().map(FiniteAlgebra::to_json).collect::<Vec<_>>(),
                "size": size,
                "theory": th.name,
            }),
            corpus: models.iter().map(|m| m.name().to_string()).collect(),
            duration_ms: 0,
        },
        text,
    })
}

fn cmd_suite(part: Option<&str>, seed: u64) -> Result<Outcome, CliError> {
    let reports = match part {
        Some(name) => vec![suite::run_named(name, seed).ok_or_else(|| {
            CliError::Usage(format!(
                "no suite part `{name}`; parts: {}",
                suite::PART_NAMES.join(", ")
            ))
        })?],
        None => {
            let mut parts: Vec<(usize, suite::CriterionReport)> = suite::PART_NAMES
                .par_iter()
                .enumerate()
                .map(|(i, n)| (i, suite::run_named(n, seed).expect("listed part exists")))
                .collect();
            parts.sort_by_key(|(i, _)| *i);
            parts.into_iter().map(|(_, r)| r).collect()
        }
    };
    let ok = reports.iter().all(|r| r.ok);
    let mut text = Vec::new();
    let mut corpus = BTreeSet::new();
    for r in &reports {
        text.push(format!(
            "{} {}: {} corpus members in {} ms",
            if r.ok { "pass" } else { "FAIL" },
            r.name,
            r.corpus.len(),
            r.duration.as_millis()
        ));
        for line in &r.details {
            if line.starts_with("FAIL") {
                text.push(format!("  {line}"));
            }
        }
        corpus.extend(r.corpus.iter().cloned());
    }
    text.push(format!(
        "{}: {} of {} parts ok",
        if ok { "pass" } else { "FAIL" },
        reports.iter().filter(|r| r.ok).count(),
        reports.len()
    ));
    Ok(Outcome {
        report: Report {
            command: "suite".into(),
            ok,
            details: Value::Array(
                reports
                    .iter()
                    .map(|r| {
                        json!({
                            "corpus": r.corpus,
                            "details": r.details,
                            "duration_ms": r.duration.as_millis() as u64,
                            "name": r.name,
                            "ok": r.ok,
                        })
                    })
                    .collect(),
            ),
            corpus: corpus.into_iter().collect(),
            duration_ms: 0,
        },
        text,
    })
}
