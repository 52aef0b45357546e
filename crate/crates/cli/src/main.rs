use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use sivp_cli::commands;
use sivp_cli::config::{parse_config, CliError, ScenarioConfig};

/// Analysis toolkit for a predator-prey model with infected and
/// vaccinated prey: equilibria, stability, reproduction number,
/// simulation and parameter sweeps.
#[derive(Parser)]
#[command(name = "sivp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a JSON report with equilibria, stability and R0.
    Analyze {
        /// Scenario config file (key = value format).
        #[arg(long)]
        config: PathBuf,
        /// Output JSON path.
        #[arg(long)]
        out: PathBuf,
        /// Stamp the report with the wall-clock time (Unix seconds).
        /// Off by default so repeated runs are byte-identical.
        #[arg(long)]
        timestamp: bool,
    },
    /// Integrate the scenario and write a CSV time series.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-run the analysis over a grid of one model parameter.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Model parameter name to vary.
        #[arg(long)]
        param: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        /// Number of grid points (at least 2).
        #[arg(long)]
        steps: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the basic reproduction number as JSON.
    R0 {
        #[arg(long)]
        config: PathBuf,
    },
}

fn load_config(path: &PathBuf) -> Result<ScenarioConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
    let cfg = parse_config(&text)?;
    for warning in cfg.params.validate(false).unwrap_or_default() {
        eprintln!("warning: {warning}");
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            config,
            out,
            timestamp,
        } => {
            let cfg = load_config(&config)?;
            let stamp = timestamp.then(|| {
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs().to_string())
                    .unwrap_or_default()
            });
            commands::write_analyze(&cfg, &out, stamp)?;
            eprintln!("wrote {}", out.display());
            Ok(())
        }
        Command::Simulate { config, out } => {
            let cfg = load_config(&config)?;
            commands::write_simulate(&cfg, &out)?;
            eprintln!("wrote {}", out.display());
            Ok(())
        }
        Command::Sweep {
            config,
            param,
            from,
            to,
            steps,
            out,
        } => {
            let cfg = load_config(&config)?;
            commands::write_sweep(&cfg, &param, from, to, steps, &out)?;
            eprintln!("wrote {}", out.display());
            Ok(())
        }
        Command::R0 { config } => {
            let cfg = load_config(&config)?;
            let r = commands::cmd_r0(&cfg)?;
            let payload = serde_json::json!({ "label": cfg.label, "r0": r });
            println!(
                "{}",
                serde_json::to_string_pretty(&payload).expect("serializable")
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
