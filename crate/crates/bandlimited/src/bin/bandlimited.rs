//! Thin command-line front end. All behavior lives in the library's
//! [`bandlimited::commands`] and [`bandlimited::demos`] modules; this file
//! only parses arguments and maps errors to a nonzero exit code.

use bandlimited::commands;
use bandlimited::demos;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "bandlimited",
    version,
    about = "Reconstruct band-limited signals from nonuniformly spaced, noisy samples"
)]
struct Cli {
    /// JSON run configuration; the flags below override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for signal, sampling-set, and noise generation.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Reconstruction method: frame-tsvd, frame-cg, act, or multilevel.
    #[arg(long, global = true)]
    method: Option<String>,

    /// Relative noise level delta.
    #[arg(long, global = true)]
    delta: Option<f64>,

    /// Polynomial degree M.
    #[arg(long, global = true)]
    degree: Option<usize>,

    /// Directory the pipeline reads from and writes into.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a pseudo-random truth signal, a sampling set, and clean samples.
    Generate,
    /// Re-sample a stored signal on the configured sampling set.
    Sample,
    /// Add relative noise of level --delta to the stored samples.
    Noise,
    /// Reconstruct from the stored samples with --method.
    Reconstruct,
    /// Eigenvalue diagnostics for prolate, gap-set, or on-disk sampling systems.
    Spectrum,
    /// Run a packaged end-to-end demonstration.
    Demo {
        /// One of: spectroscopy, gap1d, geo2d.
        name: String,
    },
}

fn run() -> bandlimited::error::Result<()> {
    let cli = Cli::parse();
    let mut cfg = commands::load_config(cli.config.as_deref())?;
    commands::apply_overrides(&mut cfg, cli.seed, cli.method.as_deref(), cli.delta, cli.degree);
    match cli.command {
        Command::Generate => commands::cmd_generate(&cfg, &cli.out).map(|_| ()),
        Command::Sample => commands::cmd_sample(&cfg, &cli.out).map(|_| ()),
        Command::Noise => commands::cmd_noise(&cfg, &cli.out).map(|_| ()),
        Command::Reconstruct => commands::cmd_reconstruct(&cfg, &cli.out).map(|_| ()),
        Command::Spectrum => commands::cmd_spectrum(&cfg, &cli.out).map(|_| ()),
        Command::Demo { name } => demos::cmd_demo(&name, cfg.seed, &cli.out),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
