//! `spectral-walls`: directional ergodicity and mixing from symbolic
//! spectral measures.
//!
//! Exit codes: 0 success, 2 invalid input, 3 a numerical check failed,
//! 4 unsupported operation.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Map, Value};

use spectral_walls::Error;

use commands::Command;
use config::{Config, Overrides, CONFIG_ENV};

const TOOL: &str = "spectral-walls";
const EXIT_INVALID: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;
const EXIT_UNSUPPORTED: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "spectral-walls", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the JSON report (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit a human-readable report instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// JSON file of default settings; same keys as the override flags.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NumericalCheck(_) => EXIT_CHECK_FAILED,
        Error::Unsupported(_) | Error::ClosureBound { .. } => EXIT_UNSUPPORTED,
        _ => EXIT_INVALID,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::FieldMismatch => "field_mismatch",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::DivisionByZero => "division_by_zero",
        Error::SpaceMismatch(_) => "space_mismatch",
        Error::Unsupported(_) => "unsupported",
        Error::ClosureBound { .. } => "closure_bound",
        Error::NotReduced(_) => "not_reduced",
        Error::InvalidDirectionSet(_) => "invalid_direction_set",
        Error::NotInSubspace(_) => "not_in_subspace",
        Error::InvalidInput(_) => "invalid_input",
        Error::Parse(_) => "parse",
        Error::NumericalCheck(_) => "numerical_check",
    }
}

fn header(command: &str) -> Map<String, Value> {
    let mut doc = Map::new();
    doc.insert("tool".into(), json!(TOOL));
    doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    doc.insert("command".into(), json!(command));
    doc
}

/// Builds the report and its exit code. Output assembly is sequential so the
/// bytes depend only on inputs and configuration.
fn report(cli: &Cli) -> (Value, String, u8) {
    let name = cli.command.name();
    let mut doc = header(name);
    let failure = |mut doc: Map<String, Value>, e: Error| {
        let code = exit_code(&e);
        doc.insert(
            "error".into(),
            json!({"kind": error_kind(&e), "exit_code": code, "message": e.to_string()}),
        );
        let text = format!("{name}: error ({}): {e}\n", error_kind(&e));
        (Value::Object(doc), text, code)
    };
    let cfg = match Config::load(cli.config.as_deref(), cli.overrides.clone()) {
        Ok(c) => c,
        Err(e) => return failure(doc, e),
    };
    doc.insert("config".into(), cfg.to_json());
    let outcome = match commands::run(&cli.command, &cfg) {
        Ok(o) => o,
        Err(e) => return failure(doc, e),
    };
    doc.insert("inputs".into(), Value::Object(outcome.inputs));
    doc.insert("result".into(), outcome.result);
    let code = match &outcome.failed_check {
        Some(why) => {
            doc.insert(
                "error".into(),
                json!({"kind": "numerical_check", "exit_code": EXIT_CHECK_FAILED, "message": why}),
            );
            EXIT_CHECK_FAILED
        }
        None => 0,
    };
    let mut text = format!("{name} ({TOOL} {})\n", env!("CARGO_PKG_VERSION"));
    for line in &outcome.text {
        text.push_str(line);
        text.push('\n');
    }
    if let Some(why) = &outcome.failed_check {
        text.push_str(&format!("check failed: {why}\n"));
    }
    (Value::Object(doc), text, code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (doc, text, code) = report(&cli);
    let body = if cli.text {
        text
    } else {
        let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
        s.push('\n');
        s
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("spectral-walls: cannot write report: {e}");
        return ExitCode::from(EXIT_INVALID);
    }
    if code != 0 {
        if let Some(err) = doc.get("error") {
            eprintln!("spectral-walls: {}", err["message"].as_str().unwrap_or("error"));
        }
    }
    ExitCode::from(code)
}
