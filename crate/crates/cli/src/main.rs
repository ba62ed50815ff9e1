use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use extrainv::DEFAULT_TOL;
use extrainv_cli::{cmd_analyze, cmd_construct, cmd_invariance_set, cmd_verify, Outcome, ProblemFile, EXIT_INPUT};

/// Extra translation invariance of shift-invariant spaces on finite abelian groups.
#[derive(Parser)]
#[command(name = "extrainv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide M-invariance with both fiber criteria and report the support bound.
    Analyze(Opts),
    /// Compute the largest subgroup leaving the space invariant.
    InvarianceSet(Opts),
    /// Emit a problem file whose generator is invariant under exactly M.
    Construct(Opts),
    /// Cross-check the fiber criteria against the dense oracle.
    Verify(Opts),
}

#[derive(Args)]
struct Opts {
    /// Problem file (JSON); stdin when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Relative tolerance for rank and residual tests.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Compact single-line JSON (default).
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON.
    #[arg(long)]
    pretty: bool,
}

fn read_problem(opts: &Opts) -> Result<ProblemFile> {
    let text = match &opts.input {
        Some(path) if path.as_os_str() != "-" => {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
            buf
        }
    };
    ProblemFile::parse(&text)
}

fn run(cli: &Cli) -> Result<(Outcome, bool)> {
    let (opts, outcome) = match &cli.command {
        Command::Analyze(o) => (o, cmd_analyze(&read_problem(o)?, o.tol)?),
        Command::InvarianceSet(o) => (o, cmd_invariance_set(&read_problem(o)?, o.tol)?),
        Command::Construct(o) => (o, cmd_construct(&read_problem(o)?)?),
        Command::Verify(o) => (o, cmd_verify(&read_problem(o)?, o.tol)?),
    };
    Ok((outcome, opts.pretty))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((outcome, pretty)) => {
            let text = if pretty {
                serde_json::to_string_pretty(&outcome.report)
            } else {
                serde_json::to_string(&outcome.report)
            }
            .expect("reports serialize");
            // a closed pipe downstream is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
