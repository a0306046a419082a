use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tsvf::ZERO_TOLERANCE;
use tsvf_cli::{cmd_check, cmd_list, cmd_run, CommandOutput, Format, ScenarioSource};

#[derive(Parser)]
#[command(
    name = "tsvf",
    version,
    about = "Pre/postselected two-box systems: ABL amplitudes, weak values, projector checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Zero threshold for vanishing verdicts and predicates.
    #[arg(long, default_value_t = ZERO_TOLERANCE, global = true, allow_negative_numbers = true)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List builtin scenarios.
    List,
    /// Run a builtin scenario or a scenario JSON file.
    Run {
        /// Builtin scenario name or path to a scenario file.
        target: Option<String>,
        #[arg(long, conflicts_with_all = ["target", "file"])]
        scenario: Option<String>,
        #[arg(long, conflicts_with = "target")]
        file: Option<String>,
    },
    /// Check operator expressions (one per line) for projector-hood,
    /// orthogonality and completeness.
    Check {
        file: String,
        #[arg(long, default_value_t = 3)]
        particles: usize,
    },
}

fn emit(out: CommandOutput) -> ExitCode {
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Exit code 2 is reserved for scenarios with failed queries.
            return ExitCode::from(if e.use_stderr() {
                tsvf_cli::EXIT_INVALID as u8
            } else {
                tsvf_cli::EXIT_OK as u8
            });
        }
    };
    let out = match cli.command {
        Command::List => cmd_list(),
        Command::Run { target, scenario, file } => {
            let source = match (target, scenario, file) {
                (_, Some(name), _) => ScenarioSource::Builtin(name),
                (_, _, Some(path)) => ScenarioSource::File(path),
                (Some(t), _, _) => ScenarioSource::Auto(t),
                (None, None, None) => {
                    eprintln!("error: run needs a scenario name, --scenario or --file");
                    return ExitCode::from(1);
                }
            };
            cmd_run(&source, cli.format, cli.tolerance)
        }
        Command::Check { file, particles } => cmd_check(&file, particles, cli.format, cli.tolerance),
    };
    emit(out)
}
