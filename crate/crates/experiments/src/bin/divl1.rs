use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use divl1_experiments::{
    parse_x_grid, run_identities, run_lemma1, run_lemma2, run_lemma3, run_tables, run_theorem, ExperimentReport,
    IdentityConfig, QSweep, TheoremConfig, LEMMA_GRID, THEOREM_GRID, VARIANCE_GRID,
};
use divl1_symbolic::constants::numeric_constants;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Experiments on the L1 norm of the divisor exponential sum.
#[derive(Debug, Parser)]
#[command(name = "divl1", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Comma-separated x values; accepts 10000, 1e4, 2^10 and ranges like 2^10..2^18.
    #[arg(long, global = true)]
    x_grid: Option<String>,

    /// Dissection exponent: gamma = floor(x^(1/delta)).
    #[arg(long, global = true, default_value_t = 2.0)]
    delta: f64,

    /// FFT grid size as a multiple of x.
    #[arg(long, global = true, default_value_t = 16)]
    multiplier: usize,

    /// Largest modulus (lemma3 cap, identities DFT range).
    #[arg(long, global = true)]
    q_max: Option<u64>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Significant digits for the numeric constants.
    #[arg(long, global = true, default_value_t = 15)]
    precision: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sum of d(n)^2 against its residue polynomial.
    Lemma1,
    /// Totient-weighted sum of the integrals of g_q^2.
    Lemma2 {
        /// Seed for the moduli checked by quadrature.
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
    },
    /// Variance of the divisor function in progressions.
    Lemma3,
    /// L1 growth and the mean square of S - S*.
    Theorem {
        /// Skip the 2M refinement pass.
        #[arg(long)]
        no_refine: bool,
    },
    /// Symbolic coefficient tables and the Delta = 2 comparison.
    Tables,
    /// DFT identity, main-term agreement and the Farey partition.
    Identities {
        /// Audit Farey dissections of every order up to this (0 skips).
        #[arg(long, default_value_t = 500)]
        farey_max: u64,
    },
}

fn grid(cli: &Cli, default: &[u64]) -> Result<Vec<u64>> {
    match &cli.x_grid {
        Some(s) => Ok(parse_x_grid(s)?),
        None => Ok(default.to_vec()),
    }
}

fn run(cli: &Cli) -> Result<ExperimentReport> {
    let constants = numeric_constants(cli.precision)?;
    let report = match &cli.command {
        Command::Lemma1 => run_lemma1(&grid(cli, &LEMMA_GRID)?, &constants)?,
        Command::Lemma2 { seed } => run_lemma2(&grid(cli, &LEMMA_GRID)?, cli.delta, &constants, *seed)?,
        Command::Lemma3 => {
            let sweep = QSweep {
                q_max: cli.q_max,
                ..QSweep::default()
            };
            run_lemma3(&grid(cli, &VARIANCE_GRID)?, &sweep)?
        }
        Command::Theorem { no_refine } => {
            let cfg = TheoremConfig {
                multiplier: cli.multiplier,
                delta: cli.delta,
                refine: !no_refine,
            };
            run_theorem(&grid(cli, &THEOREM_GRID)?, &cfg)?
        }
        Command::Tables => run_tables(&constants)?,
        Command::Identities { farey_max } => {
            let defaults = IdentityConfig::default();
            let cfg = IdentityConfig {
                dft_q_max: cli.q_max.unwrap_or(defaults.dft_q_max),
                dft_grid: grid(cli, &defaults.dft_grid)?,
                farey_gamma_max: (*farey_max > 0).then_some(*farey_max),
                ..defaults
            };
            run_identities(&cfg)?
        }
    };
    Ok(report)
}

fn emit(cli: &Cli, report: &ExperimentReport) -> Result<()> {
    let sink: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(sink);
    match cli.format {
        Format::Json => {
            report.write_json(&mut w)?;
            writeln!(w)?;
        }
        Format::Csv => report.write_csv(&mut w)?,
    }
    w.flush()?;
    eprint!("{}", report.summary());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|r| emit(&cli, &r).map(|_| r.pass)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
