//! `unitroots`: run unit-root congruence checks and emit JSON or CSV reports.
//!
//! Exit codes: 0 when at least one check verified and none was falsified,
//! 1 when any check was falsified, 2 when nothing verified (skipped or
//! exploratory only), 3 on usage or input errors.

mod job;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, ColorChoice, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use job::{run_job, CommandKind, JobReport, JobSpec};
use output::SummaryRow;

const EXIT_INPUT: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "unitroots",
    version,
    about = "Check p-adic unit-root congruences of exponential sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Unit root of the Legendre family against the Hasse polynomial, for every λ.
    Legendre(JobArgs),
    /// One-variable L-polynomials of f/g: 1-unit and irreducible-factor congruences.
    Onevar(JobArgs),
    /// Toric L-function against det(1 - ψ∘g^{p-1} T | R_d).
    Toric(JobArgs),
    /// Affine L-function against det(1 - ψ∘g^{p-1} T | W_d), with the Chevalley–Warning bound when n > deg g.
    Affine(JobArgs),
    /// Zeta functions of g = 0 against the Fredholm determinants on R_d and W_d.
    Cartier(JobArgs),
    /// Affine sums as the sum of toric sums over coordinate strata.
    Decomp(JobArgs),
    /// Run a JSON array of jobs.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct JobArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    m_max: Option<u32>,
    #[arg(long)]
    trunc: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// JSON file holding an array of jobs.
    job_file: PathBuf,
    /// Also write the CSV summary here.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Worker threads (default: one per core).
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct CommonArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run checks whose hypotheses fail; verdicts become exploratory.
    #[arg(long)]
    force: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl JobArgs {
    fn spec(&self, command: CommandKind) -> JobSpec {
        JobSpec {
            command,
            p: self.p,
            k: self.k,
            n: self.n,
            f: self.f.clone(),
            g: self.g.clone(),
            d: self.d,
            m_max: self.m_max,
            trunc: self.trunc,
            seed: None,
            force: None,
        }
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn main() -> ExitCode {
    let color = if std::env::var_os("NO_COLOR").is_some() {
        ColorChoice::Never
    } else {
        ColorChoice::Auto
    };
    let matches = match Cli::command().color(color).try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let (args, kind) = match cli.command {
        Cmd::Sweep(s) => return sweep(&s),
        Cmd::Legendre(a) => (a, CommandKind::Legendre),
        Cmd::Onevar(a) => (a, CommandKind::Onevar),
        Cmd::Toric(a) => (a, CommandKind::Toric),
        Cmd::Affine(a) => (a, CommandKind::Affine),
        Cmd::Cartier(a) => (a, CommandKind::Cartier),
        Cmd::Decomp(a) => (a, CommandKind::Decomp),
    };
    let report = match run_job(&args.spec(kind), args.common.seed, args.common.force) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let written = match args.common.format {
        Format::Json => emit_json(args.common.out.as_deref(), &report),
        Format::Csv => emit_csv(args.common.out.as_deref(), &output::rows(&report)),
    };
    if let Err(e) = written {
        return fail(e);
    }
    ExitCode::from(report.verdict.exit_code as u8)
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> std::io::Result<()> {
    output::write_json(&mut *output::open(out)?, value)
}

fn emit_csv(out: Option<&Path>, rows: &[SummaryRow]) -> std::io::Result<()> {
    output::write_csv(&mut *output::open(out)?, rows)
}

#[derive(Serialize)]
struct SweepEntry {
    index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<JobReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn sweep(args: &SweepArgs) -> ExitCode {
    let text = match std::fs::read_to_string(&args.job_file) {
        Ok(t) => t,
        Err(e) => return fail(format!("{}: {e}", args.job_file.display())),
    };
    let specs: Vec<JobSpec> = match serde_json::from_str(&text) {
        Ok(s) => s,
        Err(e) => return fail(format!("malformed job file: {e}")),
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let (seed, force) = (args.common.seed, args.common.force);
    let outcomes: Vec<_> = pool.install(|| specs.par_iter().map(|s| run_job(s, seed, force)).collect());

    let mut entries = Vec::with_capacity(specs.len());
    let mut rows = Vec::new();
    let mut tally = job::Tally::default();
    let mut errors = 0;
    for (index, (spec, outcome)) in specs.iter().zip(outcomes).enumerate() {
        match outcome {
            Ok(r) => {
                rows.extend(output::rows(&r));
                let t = &r.verdict.tally;
                tally.verified += t.verified;
                tally.falsified += t.falsified;
                tally.skipped += t.skipped;
                tally.exploratory += t.exploratory;
                entries.push(SweepEntry {
                    index,
                    report: Some(r),
                    error: None,
                });
            }
            Err(e) => {
                errors += 1;
                let params = serde_json::to_string(spec).expect("job serializes");
                rows.push(output::error_row(
                    &spec.command.to_string(),
                    params,
                    &e.to_string(),
                ));
                entries.push(SweepEntry {
                    index,
                    report: None,
                    error: Some(e.to_string()),
                });
            }
        }
    }
    let exit = if tally.falsified > 0 {
        1
    } else if errors > 0 {
        EXIT_INPUT as i32
    } else {
        tally.exit_code()
    };
    let mut params = Map::new();
    params.insert("job_file".into(), json!(args.job_file.display().to_string()));
    params.insert("jobs".into(), json!(specs.len()));
    let report: Value = json!({
        "command": "sweep",
        "params": params,
        "hypotheses": [],
        "results": entries,
        "verdict": {"status": tally.status(), "exit_code": exit, "tally": tally, "errors": errors},
        "meta": {"seed": seed, "truncation": Value::Null, "version": unitroots_core::VERSION},
    });
    let written = match args.common.format {
        Format::Json => emit_json(args.common.out.as_deref(), &report),
        Format::Csv => emit_csv(args.common.out.as_deref(), &rows),
    }
    .and_then(|_| match &args.summary {
        Some(path) => emit_csv(Some(path), &rows),
        None => Ok(()),
    });
    if let Err(e) = written {
        return fail(e);
    }
    ExitCode::from(exit as u8)
}
