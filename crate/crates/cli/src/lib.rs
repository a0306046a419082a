//! Command implementations behind the `tsvf` binary. Each command returns
//! its standard output, standard error and exit code so it can be tested
//! without spawning a process.

pub mod check;
pub mod format;
pub mod table;

use std::path::Path;

use serde::{Deserialize, Serialize};
use tsvf::{builtin_scenarios, lookup, run_scenario, Scenario, ZERO_TOLERANCE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_QUERY_ERRORS: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        CommandOutput {
            stdout: String::new(),
            stderr,
            code: EXIT_INVALID,
        }
    }
}

/// Where a scenario comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScenarioSource {
    Builtin(String),
    File(String),
    /// A builtin name if one matches, else a file path.
    Auto(String),
}

pub fn cmd_list() -> CommandOutput {
    let scenarios = builtin_scenarios();
    let width = scenarios.iter().map(|s| s.name.len()).max().unwrap_or(0);
    let stdout = scenarios
        .iter()
        .map(|s| format!("{:<width$}  {}\n", s.name, s.description.as_deref().unwrap_or("")))
        .collect();
    CommandOutput::ok(stdout)
}

fn check_tolerance(tol: f64) -> Result<(), CommandOutput> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(CommandOutput::invalid(format!(
            "error: tolerance must be a finite non-negative number, got {tol}"
        )))
    }
}

fn load_file(path: &str) -> Result<Scenario, CommandOutput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CommandOutput::invalid(format!("error: cannot read scenario file {path}: {e}")))?;
    Scenario::from_json(&text).map_err(|e| CommandOutput::invalid(format!("error: {path}: {e}")))
}

fn resolve(source: &ScenarioSource) -> Result<Scenario, CommandOutput> {
    match source {
        ScenarioSource::Builtin(name) => lookup(name).map_err(|e| CommandOutput::invalid(format!("error: {e}"))),
        ScenarioSource::File(path) => load_file(path),
        ScenarioSource::Auto(name) => match lookup(name) {
            Ok(s) => Ok(s),
            Err(_) if Path::new(name).exists() => load_file(name),
            Err(_) => Err(CommandOutput::invalid(format!(
                "error: {name:?} is neither a builtin scenario nor a readable file"
            ))),
        },
    }
}

pub fn cmd_run(source: &ScenarioSource, format: Format, tol: f64) -> CommandOutput {
    if let Err(out) = check_tolerance(tol) {
        return out;
    }
    let scenario = match resolve(source) {
        Ok(s) => s,
        Err(out) => return out,
    };
    let report = match run_scenario(&scenario, tol) {
        Ok(r) => r,
        Err(e) => return CommandOutput::invalid(format!("error: {e}")),
    };
    let stdout = match format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Table => table::render_report(&report),
    };
    let failures: Vec<String> = report
        .records
        .iter()
        .filter_map(|r| match &r.outcome {
            tsvf::Outcome::Error { message } => Some(format!("query {} ({}): {message}\n", r.index, r.label)),
            _ => None,
        })
        .collect();
    let code = if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_QUERY_ERRORS
    };
    CommandOutput {
        stdout,
        stderr: failures.concat(),
        code,
    }
}

pub fn cmd_check(path: &str, particles: usize, format: Format, tol: f64) -> CommandOutput {
    if let Err(out) = check_tolerance(tol) {
        return out;
    }
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return CommandOutput::invalid(format!("error: cannot read {path}: {e}")),
    };
    let exprs = match check::parse_file(&text) {
        Ok(x) => x,
        Err(e) => return CommandOutput::invalid(format!("error: {path}: parse error at {e}")),
    };
    let report = match check::check_expressions(&exprs, particles, tol) {
        Ok(r) => r,
        Err((k, e)) => return CommandOutput::invalid(format!("error: {path}: expression {:?}: {e}", exprs[k].0)),
    };
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("check report serializes") + "\n",
        Format::Table => check::render_check(&report),
    };
    CommandOutput::ok(stdout)
}

pub fn default_tolerance() -> f64 {
    ZERO_TOLERANCE
}
