use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use galois_core::analysis::load_source;
use galois_core::{analyze_complex, emit_report, AnalysisOptions, ReportFormat, Route, DEFAULT_MAX_COSETS};

/// Fundamental group and signature of the Galois cover of a surface
/// degenerating to a union of planes.
#[derive(Debug, Parser)]
#[command(name = "galois", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full pipeline on a complex.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, clap::Args)]
struct AnalyzeArgs {
    /// JSON file or builtin name (t4, dt4).
    #[arg(required_unless_present = "dataset", conflicts_with = "dataset")]
    source: Option<String>,
    /// Use a bundled complex.
    #[arg(long, value_enum)]
    dataset: Option<Dataset>,
    #[arg(long, value_enum, default_value_t = RouteArg::Enumerate)]
    route: RouteArg,
    /// Coset bound for every enumeration.
    #[arg(long, default_value_t = DEFAULT_MAX_COSETS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_cosets: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Include the generated relators in the report.
    #[arg(long)]
    emit_presentation: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Dataset {
    T4,
    Dt4,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RouteArg {
    Enumerate,
    Coxeter,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn run(args: AnalyzeArgs) -> ExitCode {
    let source = match (args.dataset, args.source) {
        (Some(Dataset::T4), _) => "t4".to_string(),
        (Some(Dataset::Dt4), _) => "dt4".to_string(),
        (None, Some(s)) => s,
        (None, None) => unreachable!("clap requires a source"),
    };
    let options = AnalysisOptions {
        route: match args.route {
            RouteArg::Enumerate => Route::Enumerate,
            RouteArg::Coxeter => Route::Coxeter,
            RouteArg::Both => Route::Both,
        },
        max_cosets: args.max_cosets as usize,
        emit_presentation: args.emit_presentation,
    };
    let format = match args.format {
        FormatArg::Text => ReportFormat::Text,
        FormatArg::Json => ReportFormat::Json,
    };

    let result = load_source(&source).and_then(|c| analyze_complex(&c, &options));
    match result {
        Ok(report) => {
            let bytes = emit_report(&report, format);
            if std::io::stdout().write_all(&bytes).is_err() {
                return ExitCode::from(1);
            }
            if report.is_definite() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze(args) => run(args),
    }
}
