use std::path::PathBuf;
use std::process::ExitCode;

use baskafuzz::{run_file, Command};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "baskafuzz", version, about = "Max-product Baskakov approximation of functions and fuzzy numbers")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct JobArgs {
    /// JSON job document.
    #[arg(long)]
    spec: PathBuf,
    /// Directory for the report and CSV output.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample the approximant on a grid (CSV x,u,approx,abs_error).
    Approximate(JobArgs),
    /// Expected interval, value, width and ambiguity of a fuzzy number.
    Metrics(JobArgs),
    /// Check error bounds and shape preservation.
    Verify(JobArgs),
    /// Error table over a list of degrees, with the log-log slope.
    Converge(JobArgs),
    /// Dump the basis weights and weight ratios.
    Sample(JobArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (command, args) = match cli.command {
        Cmd::Approximate(a) => (Command::Approximate, a),
        Cmd::Metrics(a) => (Command::Metrics, a),
        Cmd::Verify(a) => (Command::Verify, a),
        Cmd::Converge(a) => (Command::Converge, a),
        Cmd::Sample(a) => (Command::Sample, a),
    };
    let outcome = run_file(command, &args.spec, &args.out);
    match &outcome.report.error {
        Some(e) => eprintln!("baskafuzz {command}: {}", e.message),
        None => {
            let failed = outcome.report.checks.iter().filter(|c| c.asserted && !c.pass).count();
            let asserted = outcome.report.checks.iter().filter(|c| c.asserted).count();
            eprintln!("baskafuzz {command}: {}/{asserted} asserted checks passed", asserted - failed);
        }
    }
    ExitCode::from(outcome.exit_code as u8)
}
