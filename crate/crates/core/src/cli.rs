//! The `dcoc` command line.
//!
//! Every command writes one JSON document (schema `dcoc-report/v1`) except
//! `gen`, which writes an edge list, and `bench`, which writes CSV. Exit codes:
//! 0 for a YES answer or success, 1 for a NO answer, 2 for any error. Errors
//! are also reported on stdout as `{"error": {"code", "message"}}`; human
//! diagnostics go to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bitset::VertexSet;
use crate::digraph::{verify_solution, Digraph, Instance};
use crate::error::{Error, Result};
use crate::generators::GenSpec;
use crate::guess;
use crate::io::{parse_edge_list, write_edge_list};
use crate::oracle;
use crate::rng::DEFAULT_SEED;
use crate::semicomplete::{self, triple_bound, ArcCheck, DegreeRule, SolverOptions};

pub const SCHEMA: &str = "dcoc-report/v1";
/// Per-doubling wall-time ratio above which `bench` flags a row.
pub const SCALING_WARN_RATIO: f64 = 6.0;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "dcoc", version, about = "Directed component order connectivity solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide an instance and print a witness on YES.
    Solve(SolveArgs),
    /// Check a proposed deletion set.
    Verify(VerifyArgs),
    /// Exact optimum by exhaustive search (small inputs only).
    Oracle(OracleArgs),
    /// Write a generated digraph as an edge list.
    Gen(GenArgs),
    /// Time the semicomplete solver over generated instances; CSV output.
    Bench(BenchArgs),
    /// Monte-Carlo check of the component guessing probability.
    GuessExperiment(GuessArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Semicomplete,
    Oracle,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Relaxed,
    Strict,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArcCheckArg {
    Dense,
    Sparse,
}

#[derive(Args, Debug, Clone)]
pub struct SolverFlags {
    /// Placement rule for cover vertices above both degree thresholds.
    #[arg(long, value_enum, default_value = "relaxed")]
    pub rule: RuleArg,
    /// Implementation of the state-graph arc test.
    #[arg(long, value_enum, default_value = "dense")]
    pub arc_check: ArcCheckArg,
}

impl SolverFlags {
    fn options(&self) -> SolverOptions {
        SolverOptions {
            rule: match self.rule {
                RuleArg::Relaxed => DegreeRule::Relaxed,
                RuleArg::Strict => DegreeRule::Strict,
            },
            arc_check: match self.arc_check {
                ArcCheckArg::Dense => ArcCheck::Dense,
                ArcCheckArg::Sparse => ArcCheck::Sparse,
            },
            ..Default::default()
        }
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Edge-list file, or `-` for stdin.
    pub file: PathBuf,
    #[arg(long)]
    pub ell: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "semicomplete")]
    pub engine: Engine,
    #[command(flatten)]
    pub solver: SolverFlags,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub ell: usize,
    #[arg(long)]
    pub k: usize,
    /// Comma-separated vertex ids; empty for the empty set.
    #[arg(long, allow_hyphen_values = true)]
    pub witness: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub ell: usize,
    /// Largest deletion set to try; defaults to `n`.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Generator description, e.g. `layered:sizes=3+3+5`.
    pub spec: String,
    /// Replaces the spec's own `seed` parameter.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Generator description; repeat for a sweep.
    #[arg(long = "spec", required = true)]
    pub specs: Vec<String>,
    #[arg(long)]
    pub ell: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Replaces every spec's own `seed` parameter.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub solver: SolverFlags,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GuessArgs {
    pub file: PathBuf,
    /// Reference solution, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Compression set, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: String,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_YES;
            }
            let _ = write!(stderr, "{e}");
            let doc = json!({
                "schema": SCHEMA,
                "error": { "code": "usage", "message": e.kind().to_string() },
            });
            let _ = writeln!(stdout, "{doc}");
            return EXIT_ERROR;
        }
    };
    let name = command_name(&cli.command);
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "dcoc {name}: {e}");
            let _ = writeln!(stdout, "{}", error_document(name, &e));
            EXIT_ERROR
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Solve(_) => "solve",
        Command::Verify(_) => "verify",
        Command::Oracle(_) => "oracle",
        Command::Gen(_) => "gen",
        Command::Bench(_) => "bench",
        Command::GuessExperiment(_) => "guess-experiment",
    }
}

pub fn error_document(command: &str, e: &Error) -> Value {
    let mut err = json!({ "code": e.code(), "message": e.to_string() });
    if let Error::NotSemicomplete(u, v) = e {
        err["pair"] = json!([u, v]);
    }
    json!({ "schema": SCHEMA, "command": { "name": command }, "error": err })
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Solve(a) => {
            let (doc, code) = cmd_solve(&a)?;
            emit_json(&doc, a.out.as_deref(), stdout)?;
            Ok(code)
        }
        Command::Verify(a) => {
            let (doc, code) = cmd_verify(&a)?;
            emit_json(&doc, a.out.as_deref(), stdout)?;
            Ok(code)
        }
        Command::Oracle(a) => {
            let (doc, code) = cmd_oracle(&a)?;
            emit_json(&doc, a.out.as_deref(), stdout)?;
            Ok(code)
        }
        Command::Gen(a) => {
            let spec = GenSpec::parse(&a.spec)?;
            let d = spec.generate(a.seed)?;
            emit_text(&write_edge_list(&d), a.out.as_deref(), stdout)?;
            Ok(EXIT_YES)
        }
        Command::Bench(a) => {
            let csv = cmd_bench(&a)?;
            emit_text(&csv, a.out.as_deref(), stdout)?;
            Ok(EXIT_YES)
        }
        Command::GuessExperiment(a) => {
            let (doc, code) = cmd_guess(&a)?;
            emit_json(&doc, a.out.as_deref(), stdout)?;
            Ok(code)
        }
    }
}

fn emit_json(doc: &Value, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let text = serde_json::to_string_pretty(doc).expect("report serializes") + "\n";
    emit_text(&text, out, stdout)
}

fn emit_text(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_error(path, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| io_error(Path::new("<stdout>"), e)),
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn read_digraph(path: &Path) -> Result<Digraph> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| io_error(path, e))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| io_error(path, e))?
    };
    parse_edge_list(&text)
}

/// Parses `"1,4, 7"`; an empty or blank string is the empty list.
pub fn parse_vertex_list(text: &str, n: usize) -> Result<VertexSet> {
    let mut set = VertexSet::new(n);
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("`{tok}` is not a vertex id")))?;
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        set.insert(v);
    }
    Ok(set)
}

#[derive(Serialize, Debug, Clone)]
pub struct InstanceDigest {
    pub n: usize,
    pub m: usize,
    pub semicomplete: bool,
    /// SHA-256 of the canonical edge list.
    pub sha256: String,
}

pub fn digest(d: &Digraph) -> InstanceDigest {
    InstanceDigest {
        n: d.n(),
        m: d.m(),
        semicomplete: d.is_semicomplete(),
        sha256: format!("{:x}", Sha256::digest(write_edge_list(d).as_bytes())),
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn decision(yes: bool) -> (&'static str, i32) {
    if yes {
        ("yes", EXIT_YES)
    } else {
        ("no", EXIT_NO)
    }
}

pub fn cmd_solve(a: &SolveArgs) -> Result<(Value, i32)> {
    let clock = Instant::now();
    let d = read_digraph(&a.file)?;
    let parse_ms = ms(clock.elapsed());
    let info = digest(&d);
    let command = json!({
        "name": "solve",
        "file": a.file.display().to_string(),
        "ell": a.ell,
        "k": a.k,
        "engine": match a.engine { Engine::Semicomplete => "semicomplete", Engine::Oracle => "oracle" },
    });
    let inst = Instance::new(d, a.ell, a.k)?;

    match a.engine {
        Engine::Semicomplete => {
            let report = semicomplete::solve_with(&inst, &a.solver.options())?;
            let (word, code) = decision(report.solution.is_some());
            let t = &report.timings;
            let counters = match &report.stats {
                Some(s) => json!({
                    "triples_per_level": s.triples_per_level,
                    "free_per_level": s.free_per_level,
                    "triples_total": s.triples_per_level.iter().sum::<usize>(),
                    "level_bound": triple_bound(a.k),
                    "arcs_generated": s.arcs_generated,
                    "arcs_pruned": s.arcs_pruned,
                    "arcs_rejected": s.arcs_rejected,
                }),
                None => json!({ "triples_total": 0, "arcs_generated": 0, "arcs_pruned": 0, "arcs_rejected": 0 }),
            };
            let sol = report.solution.as_ref();
            let doc = json!({
                "schema": SCHEMA,
                "command": command,
                "instance": info,
                "decision": word,
                "cost": sol.map(|s| s.cost),
                "witness": sol.map(|s| s.x.to_vec()),
                "path_cost": report.best_cost,
                "shortcut": sol.is_some_and(|s| s.via_shortcut),
                "path": sol.map(|s| s.path.iter().map(|p| json!({
                    "t": p.t, "y": p.y, "s": p.s, "extra": p.extra,
                })).collect::<Vec<_>>()),
                "timing_ms": {
                    "parse": parse_ms,
                    "enumerate": ms(t.enumerate),
                    "arcs": ms(t.arcs),
                    "dp": ms(t.dp),
                    "reconstruct": ms(t.reconstruct),
                },
                "counters": counters,
            });
            Ok((doc, code))
        }
        Engine::Oracle => {
            let clock = Instant::now();
            let found = oracle::optimal_coc(&inst.digraph, inst.ell, inst.k)?;
            let search = ms(clock.elapsed());
            let (word, code) = decision(found.is_some());
            let doc = json!({
                "schema": SCHEMA,
                "command": command,
                "instance": info,
                "decision": word,
                "cost": found.as_ref().map(|r| r.optimum),
                "witness": found.as_ref().map(|r| r.witness.to_vec()),
                "timing_ms": { "parse": parse_ms, "search": search },
            });
            Ok((doc, code))
        }
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<(Value, i32)> {
    let d = read_digraph(&a.file)?;
    let x = parse_vertex_list(&a.witness, d.n())?;
    let info = digest(&d);
    let inst = Instance::new(d, a.ell, a.k)?;
    let yes = verify_solution(&inst, &x);
    let (word, code) = decision(yes);
    let doc = json!({
        "schema": SCHEMA,
        "command": { "name": "verify", "file": a.file.display().to_string(), "ell": a.ell, "k": a.k },
        "instance": info,
        "decision": word,
        "witness": x.to_vec(),
        "size": x.len(),
        "mco_after": inst.digraph.mco(&x),
    });
    Ok((doc, code))
}

pub fn cmd_oracle(a: &OracleArgs) -> Result<(Value, i32)> {
    let d = read_digraph(&a.file)?;
    if a.ell == 0 {
        return Err(Error::ZeroEll);
    }
    let cap = a.k.unwrap_or(d.n());
    let clock = Instant::now();
    let found = oracle::optimal_coc(&d, a.ell, cap)?;
    let search = ms(clock.elapsed());
    let (word, code) = decision(found.is_some());
    let doc = json!({
        "schema": SCHEMA,
        "command": { "name": "oracle", "file": a.file.display().to_string(), "ell": a.ell, "cap": cap },
        "instance": digest(&d),
        "decision": word,
        "optimum": found.as_ref().map(|r| r.optimum),
        "witness": found.as_ref().map(|r| r.witness.to_vec()),
        "timing_ms": { "search": search },
    });
    Ok((doc, code))
}

pub const BENCH_HEADER: [&str; 19] = [
    "spec",
    "rep",
    "n",
    "m",
    "ell",
    "k",
    "sha256",
    "decision",
    "cost",
    "enumerate_ms",
    "arcs_ms",
    "dp_ms",
    "reconstruct_ms",
    "total_ms",
    "triples",
    "max_level_triples",
    "arcs_generated",
    "arcs_pruned",
    "scaling_ratio",
];

/// One CSV row per (spec, repetition). `scaling_ratio` is this row's total
/// time over the same repetition's time for the previous spec; when `n`
/// exactly doubled and the ratio exceeds [`SCALING_WARN_RATIO`] a warning is
/// appended (`ratio!`).
pub fn cmd_bench(a: &BenchArgs) -> Result<String> {
    let opts = a.solver.options();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BENCH_HEADER).map_err(csv_error)?;
    let mut prev: Option<(usize, Vec<f64>)> = None;
    for raw in &a.specs {
        let spec = GenSpec::parse(raw)?;
        let d = spec.generate(a.seed)?;
        d.ensure_semicomplete()?;
        let info = digest(&d);
        let inst = Instance::new(d, a.ell, a.k)?;
        let mut totals = Vec::with_capacity(a.reps);
        for rep in 0..a.reps {
            let clock = Instant::now();
            let report = semicomplete::solve_with(&inst, &opts)?;
            let total = ms(clock.elapsed());
            totals.push(total);
            let t = &report.timings;
            let (triples, max_level, generated, pruned) = match &report.stats {
                Some(s) => (
                    s.triples_per_level.iter().sum::<usize>(),
                    s.triples_per_level.iter().copied().max().unwrap_or(0),
                    s.arcs_generated,
                    s.arcs_pruned,
                ),
                None => (0, 0, 0, 0),
            };
            let ratio = match &prev {
                Some((pn, pt)) if rep < pt.len() && pt[rep] > 0.0 => {
                    let r = total / pt[rep];
                    let flag = if info.n == 2 * pn && r > SCALING_WARN_RATIO {
                        "!"
                    } else {
                        ""
                    };
                    format!("{r:.3}{flag}")
                }
                _ => String::new(),
            };
            w.write_record([
                raw.clone(),
                rep.to_string(),
                info.n.to_string(),
                info.m.to_string(),
                a.ell.to_string(),
                a.k.to_string(),
                info.sha256.clone(),
                if report.solution.is_some() { "yes" } else { "no" }.to_string(),
                report.solution.as_ref().map_or(String::new(), |s| s.cost.to_string()),
                format!("{:.3}", ms(t.enumerate)),
                format!("{:.3}", ms(t.arcs)),
                format!("{:.3}", ms(t.dp)),
                format!("{:.3}", ms(t.reconstruct)),
                format!("{total:.3}"),
                triples.to_string(),
                max_level.to_string(),
                generated.to_string(),
                pruned.to_string(),
                ratio,
            ])
            .map_err(csv_error)?;
        }
        prev = Some((info.n, totals));
    }
    let bytes = w.into_inner().map_err(|e| Error::Io {
        path: "<csv>".into(),
        message: e.to_string(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io {
        path: "<csv>".into(),
        message: e.to_string(),
    }
}

pub fn cmd_guess(a: &GuessArgs) -> Result<(Value, i32)> {
    let d = read_digraph(&a.file)?;
    let x = parse_vertex_list(&a.x, d.n())?;
    let x0 = parse_vertex_list(&a.x0, d.n())?;
    if a.ell == 0 {
        return Err(Error::ZeroEll);
    }
    let mc = guess::monte_carlo(&d, &x, &x0, a.ell, a.trials, a.seed)?;
    let verdict = mc.within_three_sigma();
    let code = if verdict == Some(false) { EXIT_NO } else { EXIT_YES };
    let doc = json!({
        "schema": SCHEMA,
        "command": {
            "name": "guess-experiment", "file": a.file.display().to_string(),
            "ell": a.ell, "trials": a.trials, "seed": a.seed,
        },
        "instance": digest(&d),
        "x": x.to_vec(),
        "x0": x0.to_vec(),
        "exact": { "rational": mc.exact.to_string(), "decimal": mc.exact_f64() },
        "trials": mc.trials,
        "successes": mc.successes,
        "frequency": mc.frequency(),
        "sigma": mc.sigma(),
        "verdict": verdict.map(|ok| if ok { "pass" } else { "fail" }),
        "fix_failures": mc.fix_failures,
    });
    Ok((doc, code))
}
