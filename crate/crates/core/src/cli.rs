//! Command-line front end. [`run`] turns parsed arguments into the text the
//! binary prints and its exit code.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::capture::{find_captured_tuples, sq_bracket, SearchMode, SearchOptions, DEFAULT_CAP};
use crate::finset::FinSet;
use crate::gaps::{hausdorff_gap, levelwise_diff, todorcevic_restrict, Pregap};
use crate::posets::{
    dense_meet_targets, exhaustive_antichain, extract_separating, greedy_filter, is_condition, AntichainOptions,
    Condition, FilterOutcome, PosetKind, PosetView,
};
use crate::scheme::{build_scheme, Scheme, SchemeExport};
use crate::typeseq::{make_type_prefix, Triple, TypeSequence};
use crate::verify::{run_suite, Fixture, GridConfig, SUITES};

#[derive(Debug, Parser)]
#[command(name = "schemelab", version, about = "Finite construction schemes and their combinatorics")]
pub struct Cli {
    /// Type prefix as JSON triples, e.g. [[1,2,0],[2,2,1]]
    #[arg(long = "type", global = true, conflicts_with = "type_file")]
    pub type_inline: Option<String>,
    /// File holding the type prefix JSON
    #[arg(long, global = true)]
    pub type_file: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Exhaustive-search bound on the number of candidate tuples
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = one per core)
    #[arg(long, global = true, env = "SCHEMELAB_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Write the output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the scheme and print a summary
    Build {
        /// Also write the full scheme JSON here
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Evaluate one canonical function
    Query {
        #[arg(value_enum)]
        function: Function,
        a: usize,
        b: usize,
    },
    /// Search for captured tuples
    Capture {
        /// Ordinals to search, space or comma separated (default: the domain)
        #[arg(long)]
        set: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Restrict to these levels
        #[arg(long)]
        levels: Option<String>,
    },
    /// Emit a gap table as CSV
    Gap {
        #[arg(value_enum)]
        variant: GapVariant,
        /// Levels of P0 for the Todorčević restriction
        #[arg(long, default_value = "")]
        p0: String,
        /// Emit successor differences instead
        #[arg(long)]
        diff: bool,
    },
    /// Run a finite-condition poset
    Poset(PosetArgs),
    /// Run verification suites
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Rho,
    Delta,
    Xi,
    Norm,
    Closure,
    Bracket,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GapVariant {
    Hausdorff,
    Todorcevic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PosetAction {
    Check,
    Filter,
    Antichain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backing {
    /// Successor differences of the Hausdorff gap
    Diff,
    Hausdorff,
}

#[derive(Debug, Args)]
pub struct PosetArgs {
    /// sep, chi0, chi1, dn or biorth
    pub kind: PosetKind,
    #[arg(value_enum)]
    pub action: PosetAction,
    /// Condition JSON: {"index": value} for SEP, [indices] otherwise
    #[arg(long)]
    pub condition: Option<String>,
    #[arg(long, value_enum, default_value_t = Backing::Diff)]
    pub pregap: Backing,
    /// DN tuple size
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// DN level set A
    #[arg(long, default_value = "")]
    pub levels: String,
    #[arg(long, default_value_t = 2)]
    pub max_size: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 4)]
    pub sep_values: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites to run (default: all)
    pub suites: Vec<String>,
    /// Feed the designated suites corrupted fixtures
    #[arg(long)]
    pub corrupt: bool,
    #[arg(long, default_value_t = 4)]
    pub max_height: usize,
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
    #[arg(long, default_value_t = 200)]
    pub max_domain: usize,
    #[arg(long, default_value_t = 50)]
    pub random: usize,
    #[arg(long, default_value_t = 512)]
    pub random_max_domain: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("io error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// What the binary prints, and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

/// Parses a type prefix from JSON triples.
pub fn parse_type(text: &str) -> Result<TypeSequence, CliError> {
    let raw: Vec<[usize; 3]> = serde_json::from_str(text.trim()).map_err(|e| usage(format!("bad type prefix: {e}")))?;
    let triples: Vec<Triple> = raw.iter().map(|&[m, n, r]| Triple { m, n, r }).collect();
    make_type_prefix(&triples).map_err(usage)
}

/// Space- or comma-separated naturals.
pub fn parse_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("not a natural number: {t:?}"))))
        .collect()
}

fn parse_condition(kind: PosetKind, text: &str) -> Result<Condition, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| usage(format!("bad condition: {e}")))?;
    match (kind, v) {
        (PosetKind::Sep, Value::Object(m)) => {
            let mut out = BTreeMap::new();
            for (k, val) in m {
                let key = k.parse().map_err(|_| usage(format!("bad index {k:?}")))?;
                let val = val.as_u64().ok_or_else(|| usage(format!("bad value at {k}")))?;
                out.insert(key, val as usize);
            }
            Ok(Condition::Map(out))
        }
        (PosetKind::Sep, _) => Err(usage("SEP conditions are JSON objects")),
        (_, Value::Array(items)) => items
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| usage("bad index")))
            .collect::<Result<Vec<_>, _>>()
            .map(|v| Condition::Set(FinSet::from_unsorted(v))),
        _ => Err(usage("set conditions are JSON arrays")),
    }
}

fn read_type(cli: &Cli) -> Result<TypeSequence, CliError> {
    if let Some(text) = &cli.type_inline {
        return parse_type(text);
    }
    if let Some(path) = &cli.type_file {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        return parse_type(&text);
    }
    Err(usage("this command needs --type or --type-file"))
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Runs the command on a pool of `cli.threads` workers.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(usage)?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Verify(args) => Ok(cmd_verify(cli, args)?),
        command => {
            let s = build_scheme(&read_type(cli)?);
            match command {
                Command::Build { dump } => cmd_build(cli, &s, dump.as_ref()),
                Command::Query { function, a, b } => cmd_query(cli, &s, *function, *a, *b),
                Command::Capture { set, n, levels } => cmd_capture(cli, &s, set.as_deref(), *n, levels.as_deref()),
                Command::Gap { variant, p0, diff } => cmd_gap(cli, &s, *variant, p0, *diff),
                Command::Poset(args) => cmd_poset(&s, args),
                Command::Verify(_) => unreachable!("handled above"),
            }
        }
    }
}

fn cmd_build(cli: &Cli, s: &Scheme, dump: Option<&PathBuf>) -> Result<Output, CliError> {
    let export = SchemeExport::from(s);
    if let Some(path) = dump {
        std::fs::write(path, serde_json::to_string(&export).expect("serializable")).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    let counts: Vec<String> = (0..=s.height()).rev().map(|k| s.level(k).len().to_string()).collect();
    let text = match cli.format {
        Format::Json => to_json(&export),
        Format::Csv => {
            let mut out = String::from("alpha,k,value\n");
            for (a, k, x) in s.xi_table() {
                let _ = writeln!(out, "{a},{k},{x}");
            }
            out
        }
        Format::Text => format!(
            "type: {}\nheight: {}\ndomain: {}\nlevels: {} members\n",
            serde_json::to_string(s.type_seq()).expect("serializable"),
            s.height(),
            s.domain_size(),
            counts.join("/")
        ),
    };
    Ok(Output::ok(text))
}

fn cmd_query(cli: &Cli, s: &Scheme, f: Function, a: usize, b: usize) -> Result<Output, CliError> {
    let value: Value = match f {
        Function::Rho => json!(s.rho(a, b).map_err(usage)?),
        Function::Delta => json!(s.delta(a, b).map_err(usage)?),
        Function::Xi => json!(s.xi(a, b).map_err(usage)?),
        Function::Norm => json!(s.norm(a, b).map_err(usage)?),
        Function::Closure => json!(s.closure(a, b).map_err(usage)?),
        Function::Bracket => json!(sq_bracket(s, a, b).map_err(usage)?),
    };
    let name = format!("{f:?}").to_lowercase();
    let text = match cli.format {
        Format::Json => to_json(&json!({ "function": name, "args": [a, b], "value": value })),
        _ => match &value {
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(Value::to_string).collect();
                parts.join(" ") + "\n"
            }
            Value::String(text) => format!("{text}\n"),
            other => format!("{other}\n"),
        },
    };
    Ok(Output::ok(text))
}

fn cmd_capture(cli: &Cli, s: &Scheme, set: Option<&str>, n: usize, levels: Option<&str>) -> Result<Output, CliError> {
    let set = match set {
        Some(text) => FinSet::from_unsorted(parse_list(text)?),
        None => s.domain(),
    };
    let levels: Option<BTreeSet<usize>> = levels.map(parse_list).transpose()?.map(|v| v.into_iter().collect());
    let found = find_captured_tuples(
        s,
        &set,
        n,
        levels.as_ref(),
        SearchOptions {
            cap: cli.cap,
            seed: cli.seed,
        },
    )
    .map_err(usage)?;
    let text = match cli.format {
        Format::Json => to_json(&found),
        Format::Text | Format::Csv => {
            let mut out = String::new();
            if let SearchMode::Sampled { seed, samples } = found.mode {
                let _ = writeln!(out, "SAMPLED(seed={seed}, samples={samples})");
            }
            out.push_str("level,tuple,bracket\n");
            for c in &found.certificates {
                let pts = c.points();
                let brackets: BTreeSet<usize> = pts
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &a)| pts[i + 1..].iter().map(move |&b| (a, b)))
                    .filter_map(|(a, b)| sq_bracket(s, a, b).ok())
                    .collect();
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    c.level,
                    FinSet::from_unsorted(pts).to_spaced(),
                    FinSet::from_unsorted(brackets).to_spaced()
                );
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn gap_of(s: &Scheme) -> Result<Pregap, CliError> {
    hausdorff_gap(s).map_err(usage)
}

fn cmd_gap(cli: &Cli, s: &Scheme, variant: GapVariant, p0: &str, diff: bool) -> Result<Output, CliError> {
    let mut g = gap_of(s)?;
    if variant == GapVariant::Todorcevic {
        let p0: BTreeSet<usize> = parse_list(p0)?.into_iter().collect();
        if let Some(bad) = p0.iter().find(|&&k| k == 0 || k > s.height()) {
            return Err(usage(format!("P0 level {bad} is outside 1..={}", s.height())));
        }
        g = todorcevic_restrict(&g, &p0);
    }
    if diff {
        g = levelwise_diff(&g, &s.domain()).map_err(usage)?;
    }
    let text = match cli.format {
        Format::Json => {
            let rows: Vec<Value> = g.rows().map(|(a, l, r)| json!({ "alpha": a, "L": l, "R": r })).collect();
            to_json(&rows)
        }
        _ => g.to_csv(),
    };
    Ok(Output::ok(text))
}

fn cmd_poset(s: &Scheme, args: &PosetArgs) -> Result<Output, CliError> {
    let g = if args.kind == PosetKind::Dn {
        None
    } else {
        let h = gap_of(s)?;
        Some(match args.pregap {
            Backing::Hausdorff => h,
            Backing::Diff => levelwise_diff(&h, &s.domain()).map_err(usage)?,
        })
    };
    let v = match &g {
        Some(g) => PosetView::over_pregap(args.kind, g).map_err(usage)?,
        None => PosetView::dn(s, args.n, parse_list(&args.levels)?.into_iter().collect()),
    };
    let result: Value = match args.action {
        PosetAction::Check => {
            let c = match &args.condition {
                Some(text) => parse_condition(args.kind, text)?,
                None => v.empty_condition(),
            };
            json!({ "kind": args.kind, "condition": c, "valid": is_condition(&v, &c).map_err(usage)? })
        }
        PosetAction::Filter => {
            let seed = match &args.condition {
                Some(text) => parse_condition(args.kind, text)?,
                None => v.empty_condition(),
            };
            let targets = dense_meet_targets(&v, v.universe());
            let outcome = greedy_filter(&v, &targets, &seed).map_err(usage)?;
            let mut out = json!({ "kind": args.kind, "filter": outcome });
            if let (PosetKind::Sep, FilterOutcome::Filter { conditions }) = (args.kind, &outcome) {
                let sep = extract_separating(&v, conditions).map_err(usage)?;
                out["separating"] = json!(sep.left);
            }
            out
        }
        PosetAction::Antichain => {
            let opts = AntichainOptions {
                max_size: args.max_size,
                budget: args.budget,
                sep_values: args.sep_values,
            };
            let a = exhaustive_antichain(&v, v.universe(), opts).map_err(usage)?;
            json!({ "kind": args.kind, "antichain": a })
        }
    };
    Ok(Output::ok(to_json(&result)))
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<Output, CliError> {
    let suites: Vec<String> = if args.suites.is_empty() {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        args.suites.clone()
    };
    if let Some(bad) = suites.iter().find(|s| !SUITES.contains(&s.as_str())) {
        return Err(usage(format!("unknown suite {bad:?}; known: {}", SUITES.join(", "))));
    }
    let cfg = GridConfig {
        max_height: args.max_height,
        max_n: args.max_n,
        max_domain: args.max_domain,
        random: args.random,
        random_max_domain: args.random_max_domain,
        seed: cli.seed,
        ..GridConfig::default()
    };
    let fixture = if args.corrupt { Fixture::Corrupted } else { Fixture::Clean };
    let mut reports = Vec::new();
    for name in &suites {
        reports.push(run_suite(name, &cfg, fixture).map_err(usage)?);
    }
    let all = reports.iter().all(|r| r.passed());
    let text = match cli.format {
        Format::Json => to_json(&json!({ "passed": all, "suites": reports })),
        _ => {
            let mut out = String::new();
            for r in &reports {
                let _ = writeln!(out, "{r}");
            }
            let _ = writeln!(out, "overall: {}", if all { "PASS" } else { "FAIL" });
            out
        }
    };
    Ok(Output {
        text,
        code: if all { 0 } else { 1 },
    })
}
