//! `gfphase`: field tables, curve and bundle checks, Wigner grids and figure data.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gfphase::figures::Figure;
use gfphase::{DisplayMode, Preset};

/// Seed used by randomized checks unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(
    name = "gfphase",
    version,
    about = "Discrete phase space for qubits over GF(2^n)"
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Number of qubits.
    #[arg(long, global = true, default_value_t = 3)]
    pub n: usize,
    /// Irreducible polynomial as a bitmask: 0b1011, 0xb or 11.
    #[arg(long, global = true, value_parser = parse_poly)]
    pub poly: Option<u32>,
    /// Field spec file; takes precedence over --n and --poly.
    #[arg(long, global = true)]
    pub field: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, env = "WIGNER_DATA_DIR")]
    pub out: Option<PathBuf>,
    /// Tolerance for unbiasedness, marginals, traces and covariance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Tolerance for Hermiticity and unitarity.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub herm_tol: f64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Element table, traces, primitive element and self-dual basis.
    Field {
        #[arg(long, value_enum, default_value_t = Display::Integer)]
        display: Display,
    },
    /// Validate, classify and factorize a curve file.
    Curve {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Build a bundle and verify unbiasedness, eigenstates and geometry.
    Mubs {
        #[arg(long, conflicts_with = "bundle")]
        preset: Option<Preset>,
        /// Bundle file of origin curves.
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Wigner function of a state.
    Wigner {
        /// ghz, mixed, basis:K or a state file.
        #[arg(long, default_value = "ghz")]
        state: String,
        #[arg(long, conflicts_with = "bundle")]
        preset: Option<Preset>,
        /// Bundle file of origin curves.
        #[arg(long)]
        bundle: Option<PathBuf>,
        /// Report the tomographic defect of every curve.
        #[arg(long)]
        check_marginals: bool,
        /// Check displacement covariance of the kernel.
        #[arg(long)]
        check_covariance: bool,
        /// Stem of the output files.
        #[arg(long, default_value = "wigner")]
        name: String,
    },
    /// Write the grids behind a figure.
    Reproduce { figure: Figure },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Display {
    Integer,
    Power,
}

impl From<Display> for DisplayMode {
    fn from(d: Display) -> Self {
        match d {
            Display::Integer => DisplayMode::Integer,
            Display::Power => DisplayMode::Power,
        }
    }
}

fn parse_poly(s: &str) -> Result<u32, String> {
    let parsed = if let Some(b) = s.strip_prefix("0b") {
        u32::from_str_radix(b, 2)
    } else if let Some(h) = s.strip_prefix("0x") {
        u32::from_str_radix(h, 16)
    } else {
        s.parse()
    };
    parsed.map_err(|e| format!("invalid polynomial {s:?}: {e}"))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let cfg = &cli.config;
    let result = match cli.command {
        Command::Field { display } => commands::field(cfg, display.into()),
        Command::Curve { curve } => commands::curve(cfg, &curve),
        Command::Mubs { preset, bundle } => commands::mubs(cfg, preset, bundle.as_deref()),
        Command::Wigner {
            state,
            preset,
            bundle,
            check_marginals,
            check_covariance,
            name,
        } => commands::wigner(
            cfg,
            &commands::WignerArgs {
                state,
                preset,
                bundle,
                check_marginals,
                check_covariance,
                name,
            },
        ),
        Command::Reproduce { figure } => commands::reproduce(cfg, figure),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
