//! Command-line front end: `compute`, `sweep`, `verify`, `fit`.
//!
//! Exit codes: 0 success / all checks passed, 1 usage error,
//! 2 numerical or validation failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use entarea::harness::{
    self, fit_area_law, records_from_path, run_sweep, write_csv, write_csv_to_path, write_json,
    write_json_to_path, Measure, OutputFormat, RunRecord, SweepConfig,
};
use entarea::lattice::Model;

#[derive(Parser)]
#[command(
    name = "entarea",
    version,
    about = "Entanglement measures and area-law bounds for harmonic lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one (d, n, m, c, model) point.
    Compute(ComputeArgs),
    /// Run a sweep described by a JSON config file.
    Sweep(SweepArgs),
    /// Certify decay envelopes, the bound chain, purity and translation
    /// invariance on one configuration.
    Verify(VerifyArgs),
    /// Fit the area-law exponent and band constants over saved records.
    Fit(FitArgs),
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    c: f64,
    #[arg(long, value_parser = parse_model)]
    model: Model,
    /// Which measures to evaluate.
    #[arg(long, default_value = "all", value_parser = ["s", "en", "all"])]
    measure: String,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: OutputFormat,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON sweep configuration (fields d, c, model, n_values, m_values,
    /// optional measures).
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    c: f64,
    #[arg(long, value_parser = parse_model)]
    model: Model,
}

#[derive(Args)]
struct FitArgs {
    /// Records file (CSV or JSON) from `compute` or `sweep`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = ["s", "en"])]
    measure: String,
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: entarea::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: entarea::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version requests are not usage errors
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) if broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// A closed stdout (e.g. piping into `head`) is normal termination.
fn broken_pipe(err: &entarea::Error) -> bool {
    matches!(err, entarea::Error::Io { source, .. }
        if source.kind() == std::io::ErrorKind::BrokenPipe)
}

fn run(cli: Cli) -> entarea::Result<ExitCode> {
    match cli.command {
        Command::Compute(args) => {
            let measures = match args.measure.as_str() {
                "s" => vec![Measure::S, Measure::Spectrum],
                "en" => vec![Measure::En],
                _ => vec![Measure::S, Measure::En, Measure::Bounds, Measure::Spectrum],
            };
            let config = SweepConfig {
                d: args.d,
                c: args.c,
                model: args.model,
                n_values: vec![args.n],
                m_values: vec![args.m],
                measures,
            };
            config.validate()?;
            let record = harness::evaluate_point(&config, args.n, args.m);
            if let Some(err) = &record.error {
                return Err(entarea::Error::Numerical(err.clone()));
            }
            emit(&[record], args.out.as_deref(), args.format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(args) => {
            let text = std::fs::read_to_string(&args.config)
                .map_err(|e| entarea::Error::io(&args.config, e))?;
            let config: SweepConfig = serde_json::from_str(&text)
                .map_err(|e| entarea::Error::Parse(format!("{}: {e}", args.config.display())))?;
            let records = run_sweep(&config)?;
            emit(&records, args.out.as_deref(), args.format)?;
            let failed = records.iter().filter(|r| r.error.is_some()).count();
            if failed > 0 {
                eprintln!("{failed} point(s) failed; see record errors");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let report = harness::verify_configuration(args.d, args.n, args.c, args.model)?;
            for check in &report.checks {
                let status = if check.passed { "pass" } else { "FAIL" };
                println!("[{status}] {}: {}", check.name, check.detail);
            }
            if report.all_passed() {
                println!("all checks passed");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("verification failed");
                Ok(ExitCode::from(2))
            }
        }
        Command::Fit(args) => {
            let records = records_from_path(&args.input)?;
            let measure = if args.measure == "s" {
                Measure::S
            } else {
                Measure::En
            };
            let fit = fit_area_law(&records, measure)?;
            let json = serde_json::to_string_pretty(&fit)
                .map_err(|e| entarea::Error::Parse(e.to_string()))?;
            println!("{json}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit(
    records: &[RunRecord],
    out: Option<&std::path::Path>,
    format: OutputFormat,
) -> entarea::Result<()> {
    match (out, format) {
        (Some(path), OutputFormat::Csv) => write_csv_to_path(records, path),
        (Some(path), OutputFormat::Json) => write_json_to_path(records, path),
        (None, OutputFormat::Csv) => {
            let stdout = std::io::stdout();
            write_csv(records, stdout.lock()).map_err(|e| entarea::Error::io("<stdout>", e))
        }
        (None, OutputFormat::Json) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_json(records, &mut lock)?;
            use std::io::Write;
            writeln!(lock).map_err(|e| entarea::Error::io("<stdout>", e))
        }
    }
}
