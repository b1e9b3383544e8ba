use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fracdyson::Execution;
use fracdyson_cli::{audit, presets_listing, run, CliError, Scenario};

#[derive(Parser)]
#[command(
    name = "fracdyson",
    version,
    about = "Fractional-time two-level dynamics made unitary by a Dyson map"
)]
struct Cli {
    /// Evaluate grid points on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one CSV file per requested output and alpha.
    Run {
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the invariant report as JSON; exits 1 if any check fails.
    Audit { scenario: PathBuf },
    /// Built-in models.
    Presets {
        #[command(subcommand)]
        action: PresetsAction,
    },
}

#[derive(Subcommand)]
enum PresetsAction {
    List,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match dispatch(cli.command, exec) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command, exec: Execution) -> Result<(), CliError> {
    match command {
        Command::Run { scenario, out } => {
            let s = Scenario::load(&scenario)?;
            for path in run(&s, &out, exec)? {
                println!("{}", path.display());
            }
        }
        Command::Audit { scenario } => {
            let s = Scenario::load(&scenario)?;
            let report = audit(&s, exec)?;
            let json = serde_json::to_string_pretty(&report).expect("report serialises");
            println!("{json}");
            if !report.pass {
                return Err(CliError::AuditFailed {
                    failed: report.failed(),
                });
            }
        }
        Command::Presets {
            action: PresetsAction::List,
        } => print!("{}", presets_listing()),
    }
    Ok(())
}
