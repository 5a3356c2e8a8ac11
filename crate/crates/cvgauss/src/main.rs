use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cvgauss::commands::{self, Figure};
use cvgauss::config::MAX_DIM_ENV;
use cvgauss::descriptor::load_state;
use cvgauss::{CliError, Config, Tolerances};

/// Gaussian states of the radiation field: fidelities, nonclassicality,
/// entanglement and teleportation, with a truncated Fock-space oracle.
///
/// States are JSON descriptors given as a file path or inline, e.g.
/// '{"kind":"dsts","nbar":0.5,"r":0.3,"phi":0,"alpha":[0.1,0]}'.
#[derive(Parser)]
#[command(name = "cvgauss", version)]
struct Cli {
    /// JSON config overriding sweep grids, tolerances and truncation.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// CF coefficients, covariance matrix and thresholds of a state.
    Info {
        #[arg(long, value_name = "FILE")]
        state: String,
    },
    /// Fidelity of two states of the same kind.
    Fidelity {
        /// Given twice.
        #[arg(long, value_name = "FILE", num_args = 1, required = true)]
        state: Vec<String>,
        /// Also evaluate the truncated Fock-space fidelity.
        #[arg(long)]
        oracle: bool,
        /// Fixed oracle dimension (per mode).
        #[arg(long, value_name = "N")]
        dim: Option<usize>,
        /// Tolerance the oracle delta is reported against.
        #[arg(long, value_name = "F")]
        tol: Option<f64>,
    },
    /// Separability threshold, verdict and degree of entanglement of an STS.
    Entangle {
        #[arg(long, value_name = "FILE")]
        state: String,
    },
    /// Teleport a DSTS through a symmetric STS resource.
    Teleport {
        #[arg(long, value_name = "FILE")]
        state: String,
        /// Thermal photons per resource mode.
        #[arg(long, value_name = "F")]
        nbar: f64,
        /// Resource squeeze factor.
        #[arg(long, value_name = "F")]
        r: f64,
    },
    /// Write the figure curves as CSV files.
    Sweep {
        #[arg(value_enum)]
        figure: FigureArg,
        #[arg(long, value_name = "DIR", default_value = ".")]
        out: PathBuf,
    },
    /// Compare closed forms with the oracle and check the invariants.
    Validate {
        #[arg(long, value_name = "NAME", default_value = "fast")]
        suite: String,
        /// Fixed oracle dimension (per mode).
        #[arg(long, value_name = "N")]
        dim: Option<usize>,
        /// Replace every tolerance.
        #[arg(long, value_name = "F")]
        tol: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    Fig1,
    Fig2,
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    cfg.apply_env_cap(std::env::var(MAX_DIM_ENV).ok().as_deref())?;
    let ok = |s: String| Ok((s, true));
    match cli.command {
        Command::Info { state } => ok(commands::info(&load_state(&state)?)?),
        Command::Fidelity {
            state,
            oracle,
            dim,
            tol,
        } => {
            if state.len() != 2 {
                return Err(CliError::Input("fidelity takes exactly two --state".into()));
            }
            if let Some(d) = dim {
                cfg.truncation.dim = Some(d);
            }
            if tol.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
                return Err(CliError::Input("--tol must be positive".into()));
            }
            cfg.validate()?;
            let (a, b) = (load_state(&state[0])?, load_state(&state[1])?);
            ok(commands::fidelity(
                &a,
                &b,
                oracle,
                &cfg.truncation,
                tol,
                &cfg,
            )?)
        }
        Command::Entangle { state } => ok(commands::entangle(&load_state(&state)?)?),
        Command::Teleport { state, nbar, r } => {
            ok(commands::teleport(&load_state(&state)?, nbar, r)?)
        }
        Command::Sweep { figure, out } => {
            let figure = match figure {
                FigureArg::Fig1 => Figure::Fig1,
                FigureArg::Fig2 => Figure::Fig2,
            };
            ok(commands::sweep(figure, &cfg, &out)?)
        }
        Command::Validate { suite, dim, tol } => {
            if let Some(d) = dim {
                cfg.truncation.dim = Some(d);
            }
            if let Some(t) = tol {
                cfg.tolerances = Tolerances::uniform(t);
            }
            commands::validate(&suite, &cfg)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, all_passed)) => {
            print!("{text}");
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(CliError::Breach(String::new()).exit_code())
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
