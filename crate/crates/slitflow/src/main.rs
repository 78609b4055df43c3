use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser};
use slitflow::config::KEYS;
use slitflow::{commands, parse_config, AppError, Mode};

/// Slit-exterior vortex flow: maps, fields, transport and verification checks.
#[derive(Debug, Parser)]
#[command(name = "slitflow", version)]
struct Cli {
    /// probe-map | field | advect | sweep-eps | check
    #[arg(value_parser = parse_mode)]
    mode: Mode,
    /// Configuration file (`key = value` lines, `#` comments).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run a single named check (check mode only).
    #[arg(long)]
    check: Option<String>,
    /// Overrides `seed`.
    #[arg(long)]
    seed: Option<u64>,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn key_help() -> String {
    let mut s = String::from("Config keys and defaults:\n");
    for (k, d) in KEYS {
        s.push_str(&format!("  {k:<18} {d}\n"));
    }
    s
}

fn run(cli: Cli) -> Result<i32, AppError> {
    let text = fs::read_to_string(&cli.config).map_err(|e| AppError::io(&cli.config, e))?;
    let mut cfg = parse_config(&text)?;
    if cfg.mode != cli.mode {
        return Err(AppError::Usage(format!(
            "config mode `{}` does not match command `{}`",
            cfg.mode.as_str(),
            cli.mode.as_str()
        )));
    }
    if let Some(out) = cli.out {
        cfg.output_dir = out;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    commands::execute(&cfg, cli.check.as_deref())
}

fn main() -> ExitCode {
    let matches = Cli::command().after_long_help(key_help()).get_matches();
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
