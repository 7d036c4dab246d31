//! `pulsemass` command-line front end.
//!
//! ```text
//! pulsemass <command> [--config file.json|-] [--set key=value]... [--units si|cgs] [--oracle] [--out path]
//! ```
//!
//! Scalar results go to standard output as one JSON object; grids and
//! sweeps are CSV. Warnings go to standard error only. Exit status is 0 on
//! success, 2 for configuration or validation errors, 3 for numerical
//! non-convergence and 4 for I/O failures.

// `!(x > 0)` style guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod units;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::Parser;

pub use commands::Command;
pub use error::CliError;
pub use units::{convert_units, Quantity, UnitSystem};

#[derive(Debug, Parser)]
#[command(
    name = "pulsemass",
    version,
    about = "Invariant mass and speed of light pulses"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// JSON configuration file, or `-` for standard input.
    #[arg(long, value_name = "FILE")]
    pub config: Option<String>,
    /// Override one configuration key; the value is parsed as JSON when possible.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Unit system of every numeric input and output [default: cgs].
    #[arg(long, value_enum)]
    pub units: Option<UnitSystem>,
    /// Cross-check the closed forms against spectral quadrature (mass-pulse).
    #[arg(long)]
    pub oracle: bool,
    /// Write the data output here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn execute(
    cli: Cli,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let mut map = match cli.config.as_deref() {
        None => serde_json::Map::new(),
        Some("-") => {
            let mut text = String::new();
            stdin.read_to_string(&mut text)?;
            config::parse_document(&text)?
        }
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            config::parse_document(&text)?
        }
    };
    for spec in &cli.set {
        config::apply_override(&mut map, spec)?;
    }
    let units = match (cli.units, map.get("units")) {
        (Some(u), _) => u,
        (None, None) => UnitSystem::Cgs,
        (None, Some(serde_json::Value::String(s))) => s.parse()?,
        (None, Some(v)) => {
            return Err(CliError::Config(format!("units must be a string, got {v}")))
        }
    };
    let stdin_free = cli.config.as_deref() != Some("-");
    let mut ctx = commands::Context {
        params: config::Params::new(map, units),
        oracle: cli.oracle,
        stdin: if stdin_free { Some(stdin) } else { None },
        warnings: Vec::new(),
    };
    let result = commands::execute(cli.command, &mut ctx);
    for w in &ctx.warnings {
        writeln!(stderr, "warning: {w}")?;
    }
    let data = result?;
    match &cli.out {
        Some(path) => std::fs::write(path, data)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => stdout.write_all(data.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command; returns the exit status.
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli, stdin, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
