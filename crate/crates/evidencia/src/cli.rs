//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use evidencia_core::criteria::Criterion;
use evidencia_core::linmodel::BasisSpec;
use evidencia_core::selfcheck::run_selfcheck;
use evidencia_core::simlab::{
    cosine_design, generate_draw, SimConfig, DEFAULT_CRITERIA, DEFAULT_N, DEFAULT_REPLICATES,
    DEFAULT_SEED,
};
use serde_json::{json, Map};

use crate::commands;
use crate::error::{CliError, CliResult};
use crate::input;
use crate::manifest::RunManifest;
use crate::output::{Format, Sink};
use crate::parallel::{run_parallel, threads_from_env};

#[derive(Debug, Parser)]
#[command(
    name = "evidencia",
    version,
    about = "Bayesian model selection for linear regression"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Criterion table for a dataset over K = 1..max-k.
    Select(SelectArgs),
    /// Monte Carlo success rates on the cosine design.
    Simulate(SimulateArgs),
    /// Criteria evaluated on expected residual and signal sums.
    Curves(CurvesArgs),
    /// Run the numerical identity checks.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

impl OutputArgs {
    fn sink(&self) -> Sink {
        Sink {
            path: self.output.clone(),
            format: self.format,
        }
    }
}

#[derive(Debug, Args)]
struct SelectArgs {
    /// CSV file with columns x, y, sigma.
    #[arg(long)]
    input: PathBuf,
    /// `cosine`, or a CSV table of basis values (one column per function).
    #[arg(long, default_value = "cosine")]
    basis: String,
    /// Largest model size; defaults to every available basis function.
    #[arg(long)]
    max_k: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed '{s}': {e}"))
}

fn parse_criterion(s: &str) -> Result<Criterion, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Criterion::ALL.iter().map(|c| c.name()).collect();
        format!(
            "unknown criterion '{s}' (expected one of {})",
            names.join(", ")
        )
    })
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Mean signal amplitude.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Spread of the signal amplitude.
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long, default_value_t = DEFAULT_N)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_REPLICATES)]
    replicates: u64,
    /// Decimal or 0x-prefixed hexadecimal.
    #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Comma-separated criterion names.
    #[arg(long, value_delimiter = ',', value_parser = parse_criterion)]
    criteria: Vec<Criterion>,
    /// Also write one simulated dataset as x,y,sigma CSV.
    #[arg(long)]
    emit_data: Option<PathBuf>,
    /// Generating size of the emitted dataset (defaults to N).
    #[arg(long, requires = "emit_data")]
    emit_ksim: Option<usize>,
    /// Replicate index of the emitted dataset.
    #[arg(long, default_value_t = 0, requires = "emit_data")]
    emit_replicate: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct CurvesArgs {
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 0.0)]
    b: f64,
    #[arg(long, default_value_t = DEFAULT_N)]
    n: usize,
    /// Generating size.
    #[arg(long, default_value_t = 8)]
    s: usize,
    #[arg(long, default_value_t = 1)]
    k_min: usize,
    /// Defaults to N.
    #[arg(long)]
    k_max: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct SelfcheckArgs {
    /// Multiplies every tolerance; used to exercise the failure path.
    #[arg(long, default_value_t = 1.0, hide = true)]
    tolerance_scale: f64,
}

/// Parses `args` and runs the chosen subcommand.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let result = match cli.command {
        Command::Select(a) => select(a),
        Command::Simulate(a) => simulate(a),
        Command::Curves(a) => curves(a),
        Command::Selfcheck(a) => return selfcheck(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn select(args: SelectArgs) -> CliResult<()> {
    let data = input::read_dataset(input::open(&args.input)?)?;
    let mut manifest = RunManifest::new(
        "select",
        json!({ "input": args.input, "basis": args.basis, "max_k": args.max_k, "format": format_name(args.out.format) }),
        None,
    )?;
    manifest.add_input(&args.input)?;
    let basis = if args.basis == "cosine" {
        BasisSpec::Cosine
    } else {
        let path = PathBuf::from(&args.basis);
        let table = input::read_basis_table(input::open(&path)?)?;
        manifest.add_input(&path)?;
        BasisSpec::Table(table)
    };
    let max_k = args
        .max_k
        .unwrap_or_else(|| basis.available(data.len()).min(data.len()));
    let profile = commands::select_profile(&data, &basis, max_k)?;
    args.out.sink().emit(
        &commands::select_table(&profile),
        &manifest,
        commands::selected_json(&profile),
    )
}

fn simulate(args: SimulateArgs) -> CliResult<()> {
    let criteria = if args.criteria.is_empty() {
        DEFAULT_CRITERIA.to_vec()
    } else {
        args.criteria.clone()
    };
    let config = SimConfig::new(args.n, args.a, args.b, args.replicates, args.seed)?
        .with_criteria(&criteria)?;
    let names: Vec<&str> = criteria.iter().map(|c| c.name()).collect();
    let manifest = RunManifest::new(
        "simulate",
        json!({
            "a": args.a, "b": args.b, "n": args.n, "replicates": args.replicates,
            "criteria": names, "format": format_name(args.out.format),
        }),
        Some(args.seed),
    )?;

    if let Some(path) = &args.emit_data {
        let s = args.emit_ksim.unwrap_or(args.n);
        if s == 0 || s > args.n {
            return Err(CliError::input(format!(
                "--emit-ksim must be between 1 and {}, got {s}",
                args.n
            )));
        }
        let draw = generate_draw(&config, &cosine_design(args.n), args.emit_replicate);
        let mut data_manifest = manifest.clone();
        data_manifest.config["emit_ksim"] = json!(s);
        data_manifest.config["emit_replicate"] = json!(args.emit_replicate);
        let sink = Sink {
            path: Some(path.clone()),
            format: Format::Csv,
        };
        sink.emit(
            &commands::draw_dataset(&draw, s),
            &data_manifest,
            Map::new(),
        )?;
    }

    let table = run_parallel(&config, threads_from_env()?)?;
    args.out
        .sink()
        .emit(&commands::success_rows(&table), &manifest, Map::new())
}

fn curves(args: CurvesArgs) -> CliResult<()> {
    let k_max = args.k_max.unwrap_or(args.n);
    let manifest = RunManifest::new(
        "curves",
        json!({
            "a": args.a, "b": args.b, "n": args.n, "s": args.s,
            "k_min": args.k_min, "k_max": k_max, "format": format_name(args.out.format),
        }),
        None,
    )?;
    let table = commands::curves_table(args.a, args.b, args.n, args.s, args.k_min, k_max)?;
    args.out.sink().emit(&table, &manifest, Map::new())
}

fn selfcheck(args: SelfcheckArgs) -> ExitCode {
    let outcomes = run_selfcheck(args.tolerance_scale);
    print!("{}", commands::selfcheck_report(&outcomes));
    if outcomes.iter().all(|o| o.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}
