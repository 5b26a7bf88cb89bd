//! Batch front end: simulate a field, analyse its spectral data, verify the
//! invariants and reconstruct the potential.

pub mod checks;
pub mod commands;
pub mod config;
pub mod error;

pub use commands::*;
pub use config::{Preset, RunConfig};
pub use error::CliError;

use clap::{Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "fokas", version, about = "Unified-transform lab for CLL-NLS on the half-line")]
pub struct Cli {
    /// JSON run configuration (reference defaults if omitted).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides `out_dir`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the parallel sweeps.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized checks; overrides `seed`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the direct problem and write a field directory.
    Simulate,
    /// Spectral functions on the contour grid, plus zeros.
    Spectral,
    /// Run the invariant suites and write verify.json.
    Verify,
    /// Reconstruct r and the boundary values from eigenfunction asymptotics.
    Reconstruct,
    /// Zeros of u, β and U with residues.
    Zeros,
    /// Two-sided jump check on the four rays.
    Jump,
}

pub fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(o) = &cli.out {
        cfg.out_dir = o.clone();
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<String, CliError> {
    Ok(match cmd {
        Command::Simulate => format!("field written to {}", cmd_simulate(cfg)?.display()),
        Command::Spectral => {
            let s = cmd_spectral(cfg)?;
            format!(
                "{} points, parity deviation {:e} ({}), {} zeros",
                s.points,
                s.parity,
                if s.parity_pass { "ok" } else { "above tolerance" },
                s.zeros
            )
        }
        Command::Verify => format!("{} checks passed", cmd_verify(cfg)?.checks.len()),
        Command::Reconstruct => {
            let r = cmd_reconstruct(cfg)?;
            format!(
                "sup {:e}, L2 {:e}, interior relative {:e}, s0 {:e}, s1 {:e}",
                r.sup_abs, r.l2, r.interior_sup_rel, r.s0_sup, r.s1_sup
            )
        }
        Command::Zeros => format!("{} zeros", cmd_zeros(cfg)?),
        Command::Jump => format!("worst jump mismatch {:e}", cmd_jump(cfg)?),
    })
}

/// Parses arguments, runs the subcommand and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = resolve_config(&cli).and_then(|cfg| {
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cli.threads {
            if n == 0 {
                return Err(CliError::Config("--threads must be positive".into()));
            }
            pool = pool.num_threads(n);
        }
        let pool = pool.build().map_err(CliError::io)?;
        pool.install(|| dispatch(&cli.command, &cfg))
    });
    match result {
        Ok(msg) => {
            println!("{msg}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
