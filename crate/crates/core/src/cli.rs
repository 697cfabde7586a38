//! Command-line front end. [`run`] takes argv and returns the captured
//! output and exit code, so the `mqt` binary is a thin wrapper.
//!
//! Exit codes: 0 on a completed run, 1 on usage, parse or internal errors,
//! 2 when the input violates the at-most-one-solution promise.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algorithm::{run_unique_sat, run_unique_sat_sampled, RunOptions, RunResult};
use crate::error::Error;
use crate::field::FieldSpec;
use crate::ops::{enumerate_1q_maps, named_gate, Gate2, GateName};
use crate::oracle::BoolFn;
use crate::parser::{parse_dimacs_with, ParseError, ParseOptions};
use crate::state::{Backend, State, Vector};
use crate::verify::{sweep, SweepConfig, MAX_SIMULATED_INPUTS};

/// Environment variable that overrides the default backend.
pub const BACKEND_ENV: &str = "MQT_BACKEND";

#[derive(Debug, Parser)]
#[command(
    name = "mqt",
    version,
    about = "Modal quantum theory simulator: UNIQUE-SAT over GF(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a formula with the circuit
    Solve(SolveArgs),
    /// Print the eight intermediate states of a run
    Trace(TraceArgs),
    /// Check the circuit against brute force over many functions
    Verify(VerifyArgs),
    /// List the 16 one-qubit linear maps over GF(2)
    Gates(FormatArg),
    /// Time full runs on both backends
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Support,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Dense,
    Sparse,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Dense => Backend::Dense,
            BackendArg::Sparse => Backend::Sparse,
        }
    }
}

#[derive(Debug, Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// DIMACS CNF file
    file: Option<PathBuf>,
    /// Inline truth table `n:bits`, bits in increasing x with x₁ most significant
    #[arg(long, conflicts_with = "file")]
    table: Option<String>,
    /// Accept a missing final 0, extra clauses and `%` markers
    #[arg(long)]
    lenient: bool,
    #[arg(long, value_enum, env = BACKEND_ENV, default_value = "dense", ignore_case = true)]
    backend: BackendArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "support")]
    mode: Mode,
    /// Measurement seed; required by, and only allowed with, `--mode sample`
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    skip_promise_check: bool,
}

#[derive(Debug, Args)]
struct TraceArgs {
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    /// Random point functions per arity above the exhaustive range
    #[arg(long = "random", default_value_t = 100)]
    random_per_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, env = BACKEND_ENV, default_value = "dense", ignore_case = true)]
    backend: BackendArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Comma-separated arities
    #[arg(long = "n", value_delimiter = ',', default_value = "8,12,16")]
    n_list: Vec<usize>,
    /// Restrict to one backend (default: both)
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    #[arg(long, default_value_t = 3)]
    repeat: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Parse(ParseError),
    Sim(Error),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Sim(e)
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Sim(Error::PromiseViolated { .. }) => 2,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("usage error: {m}"),
            CliError::Parse(e) => format!("parse error: {e}"),
            CliError::Sim(e) => format!("error: {e}"),
            CliError::Failed(m) => format!("error: {m}"),
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutput {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => CliOutput {
                    code: 1,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let mut out = String::new();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args, &mut out),
        Command::Trace(args) => cmd_trace(&args, &mut out),
        Command::Verify(args) => cmd_verify(&args, &mut out),
        Command::Gates(args) => cmd_gates(args.format, &mut out),
        Command::Bench(args) => cmd_bench(&args, &mut out),
    };
    match result {
        Ok(()) => CliOutput {
            code: 0,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => CliOutput {
            code: e.code(),
            stdout: out,
            stderr: format!("{}\n", e.message()),
        },
    }
}

fn parse_table(spec: &str) -> Result<BoolFn, CliError> {
    let usage = || CliError::Usage(format!("--table expects `n:bits` with 2^n bits, got `{spec}`"));
    let (n, bits) = spec.split_once(':').ok_or_else(usage)?;
    let n: usize = n.trim().parse().map_err(|_| usage())?;
    if n == 0 || n > crate::oracle::MAX_INPUTS || bits.len() != 1usize << n {
        return Err(usage());
    }
    BoolFn::from_bitstring(n, bits).map_err(|_| usage())
}

fn load_input(input: &InputArgs) -> Result<BoolFn, CliError> {
    match (&input.file, &input.table) {
        (Some(path), None) => {
            let bytes =
                std::fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let cnf = parse_dimacs_with(&bytes, &ParseOptions { lenient: input.lenient }).map_err(CliError::Parse)?;
            Ok(BoolFn::from_cnf(&cnf)?)
        }
        (None, Some(spec)) => parse_table(spec),
        _ => Err(CliError::Usage("give a DIMACS file or --table n:bits".into())),
    }
}

fn check_simulable(f: &BoolFn) -> Result<(), CliError> {
    if f.arity() > MAX_SIMULATED_INPUTS {
        return Err(CliError::Usage(format!(
            "{} inputs need {} qubits; the simulator handles at most {} inputs",
            f.arity(),
            f.arity() + 1,
            MAX_SIMULATED_INPUTS
        )));
    }
    Ok(())
}

fn verdict_text(result: &RunResult) -> String {
    match result.verdict {
        Some(v) => v.to_string(),
        None => "none (promise not satisfied; support reported only)".into(),
    }
}

fn write_json(out: &mut String, value: &Value) {
    out.push_str(&serde_json::to_string_pretty(value).expect("serializable"));
    out.push('\n');
}

fn cmd_solve(args: &SolveArgs, out: &mut String) -> Result<(), CliError> {
    let seed = match (args.mode, args.seed) {
        (Mode::Support, Some(_)) => return Err(CliError::Usage("--seed is only meaningful with --mode sample".into())),
        (Mode::Sample, None) => return Err(CliError::Usage("--mode sample requires --seed".into())),
        (_, seed) => seed,
    };
    let f = load_input(&args.input)?;
    check_simulable(&f)?;
    let options = RunOptions {
        skip_promise_check: args.skip_promise_check,
        capture_trace: false,
        backend: args.input.backend.into(),
    };
    let result = match seed {
        Some(seed) => run_unique_sat_sampled(&f, seed, &options)?,
        None => run_unique_sat(&f, &options)?,
    };
    match args.input.format {
        Format::Json => write_json(out, &result.to_json()),
        Format::Text => {
            let _ = writeln!(out, "verdict: {}", verdict_text(&result));
            let _ = writeln!(out, "sat_count: {}", result.sat_count);
            let _ = writeln!(out, "support: {:?}", result.final_support);
            if let Some(o) = result.outcome {
                let _ = writeln!(out, "outcome: {}", o.index);
            }
        }
    }
    Ok(())
}

fn cmd_trace(args: &TraceArgs, out: &mut String) -> Result<(), CliError> {
    let f = load_input(&args.input)?;
    check_simulable(&f)?;
    let options = RunOptions {
        skip_promise_check: false,
        capture_trace: true,
        backend: args.input.backend.into(),
    };
    let result = run_unique_sat(&f, &options)?;
    match args.input.format {
        Format::Json => write_json(out, &result.to_json()),
        Format::Text => {
            let trace = result.trace.as_ref().expect("trace requested");
            let _ = writeln!(out, "n = {}, sat_count = {}", f.arity(), result.sat_count);
            for (i, step) in trace.steps.iter().enumerate() {
                let _ = writeln!(out, "{} {:<9} {}", i + 1, step.label.name(), step.state);
            }
            let _ = writeln!(out, "verdict: {}", verdict_text(&result));
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, out: &mut String) -> Result<(), CliError> {
    if args.n_max == 0 || args.n_max > MAX_SIMULATED_INPUTS {
        return Err(CliError::Usage(format!(
            "--n-max must be between 1 and {MAX_SIMULATED_INPUTS} (register limit)"
        )));
    }
    let report = sweep(&SweepConfig {
        n_max: args.n_max,
        random_per_n: args.random_per_n,
        seed: args.seed,
        backend: args.backend.into(),
    })?;
    match args.format {
        Format::Json => write_json(out, &serde_json::to_value(&report).expect("serializable")),
        Format::Text => {
            let _ = writeln!(out, "{:>3}  {:>9}  {:>8}  sweep", "n", "instances", "failures");
            for row in &report.rows {
                let kind = if row.exhaustive { "exhaustive" } else { "random" };
                let _ = writeln!(out, "{:>3}  {:>9}  {:>8}  {kind}", row.n, row.instances, row.failures);
            }
            let _ = writeln!(
                out,
                "total: {} instances, {} failures",
                report.instances, report.failures
            );
        }
    }
    if report.failures > 0 {
        return Err(CliError::Failed(format!(
            "{} mismatches against brute force",
            report.failures
        )));
    }
    Ok(())
}

fn ket_name(v: &Vector) -> &'static str {
    match v.support().as_slice() {
        [] => "0",
        [0] => "|0⟩",
        [1] => "|1⟩",
        _ => "|+⟩",
    }
}

fn gate_name(g: &Gate2) -> Option<&'static str> {
    GateName::ALL
        .into_iter()
        .find(|&n| named_gate(n, FieldSpec::GF2).ok().as_ref() == Some(g))
        .map(GateName::label)
}

fn cmd_gates(format: Format, out: &mut String) -> Result<(), CliError> {
    let census = enumerate_1q_maps(FieldSpec::GF2)?;
    let states = [
        State::zero_ket(Backend::Dense),
        State::one_ket(Backend::Dense),
        State::plus_ket(Backend::Dense),
    ];
    let describe = |g: &Gate2| -> Result<Vec<(&'static str, &'static str)>, CliError> {
        states.iter().map(|s| Ok((ket_name(s), ket_name(&g.act(s)?)))).collect()
    };
    match format {
        Format::Json => {
            let entries = |gates: &[Gate2]| -> Result<Vec<Value>, CliError> {
                gates
                    .iter()
                    .map(|g| {
                        let [a, b, c, d] = g.entries().map(|s| s.value());
                        let action: serde_json::Map<String, Value> = describe(g)?
                            .into_iter()
                            .map(|(from, to)| (from.to_string(), Value::from(to)))
                            .collect();
                        Ok(json!({
                            "matrix": [[a, b], [c, d]],
                            "name": gate_name(g),
                            "action": action,
                        }))
                    })
                    .collect()
            };
            let value = json!({
                "total": census.invertible.len() + census.non_invertible.len(),
                "invertible_count": census.invertible.len(),
                "non_invertible_count": census.non_invertible.len(),
                "invertible": entries(&census.invertible)?,
                "non_invertible": entries(&census.non_invertible)?,
            });
            write_json(out, &value);
        }
        Format::Text => {
            for (title, gates) in [
                ("invertible", &census.invertible),
                ("non-invertible", &census.non_invertible),
            ] {
                let _ = writeln!(out, "{title} maps: {}", gates.len());
                for g in gates.iter() {
                    let action: Vec<String> = describe(g)?
                        .into_iter()
                        .map(|(from, to)| format!("{from} ↦ {to}"))
                        .collect();
                    let _ = writeln!(out, "  {}  {:<5}  {}", g, gate_name(g).unwrap_or(""), action.join(", "));
                }
            }
        }
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs, out: &mut String) -> Result<(), CliError> {
    if args.n_list.is_empty() || args.repeat == 0 {
        return Err(CliError::Usage(
            "--n needs at least one arity and --repeat must be positive".into(),
        ));
    }
    if let Some(&bad) = args.n_list.iter().find(|&&n| n == 0 || n > MAX_SIMULATED_INPUTS) {
        return Err(CliError::Usage(format!(
            "arity {bad} outside 1..={MAX_SIMULATED_INPUTS} (register limit)"
        )));
    }
    let backends: Vec<Backend> = match args.backend {
        Some(b) => vec![b.into()],
        None => Backend::ALL.to_vec(),
    };
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for &n in &args.n_list {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        rng.set_stream(n as u64);
        let f = BoolFn::point(n, rng.random_range(0..1usize << n))?;
        let mut verdicts = Vec::new();
        for &backend in &backends {
            let options = RunOptions {
                backend,
                ..RunOptions::default()
            };
            let mut best = f64::INFINITY;
            let mut last = None;
            for _ in 0..args.repeat {
                let start = Instant::now();
                let result = run_unique_sat(&f, &options)?;
                best = best.min(start.elapsed().as_secs_f64());
                last = Some(result);
            }
            let result = last.expect("repeat > 0");
            verdicts.push(result.verdict);
            rows.push((n, backend, best, result));
        }
        if verdicts.windows(2).any(|w| w[0] != w[1]) {
            disagreements.push(n);
        }
    }
    match args.format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(n, backend, secs, r)| {
                    json!({
                        "n": n,
                        "backend": backend,
                        "seconds": secs,
                        "verdict": r.verdict,
                        "support_size": r.final_support.len(),
                    })
                })
                .collect();
            write_json(
                out,
                &json!({ "rows": rows, "backends_agree": disagreements.is_empty() }),
            );
        }
        Format::Text => {
            let _ = writeln!(out, "{:>3}  {:<7}  {:>12}  verdict", "n", "backend", "seconds");
            for (n, backend, secs, r) in &rows {
                let verdict = r.verdict.map_or("none".to_string(), |v| v.to_string());
                let _ = writeln!(out, "{n:>3}  {:<7}  {secs:>12.6}  {verdict}", backend.name());
            }
        }
    }
    if !disagreements.is_empty() {
        return Err(CliError::Failed(format!(
            "backends disagree for n in {disagreements:?}"
        )));
    }
    Ok(())
}
