use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use frh_cli::identities::{default_matrix, run_identity_suite};
use frh_cli::matrix::render_matrix;
use frh_cli::output::{resolve_dir, write_run};
use frh_cli::{
    build_sinogram, run_experiment, write_sinogram, CliError, ExperimentConfig, EXIT_PASS,
    EXIT_TOLERANCE,
};

#[derive(Parser)]
#[command(
    name = "frh",
    version,
    about = "Mean-value inversion experiments on ℝⁿ, ℍⁿ and Sⁿ"
)]
struct Cli {
    /// Print per-row results.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and write its error table.
    Run {
        config: PathBuf,
        /// Output directory (overrides the config and FRH_OUTPUT_DIR).
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Seed for randomized evaluation points.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check the fractional-integral composition identities.
    Identities {
        /// Pass threshold on the relative discrepancy.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// List the supported (space, n, k, method) combinations.
    ListMatrix,
    /// Compute the forward sinogram of a config's phantom (lines in ℝ²).
    Sinogram {
        config: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("{e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            out_dir,
            seed,
        } => {
            let mut cfg = match ExperimentConfig::load(&config) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            if let Some(s) = seed {
                cfg.experiment.seed = s;
            }
            let out = match run_experiment(&cfg) {
                Ok(o) => o,
                Err(e) => return fail(e),
            };
            let dir = out_dir.unwrap_or_else(|| resolve_dir(&cfg.output.dir));
            if let Err(e) = write_run(&out, &dir) {
                return fail(e);
            }
            if cli.verbose {
                for r in &out.table.rows {
                    println!(
                        "{:?} {:<22} f={:.10} rec={:.10} rel={:.2e} est={:.2e}",
                        r.x,
                        r.variant,
                        r.f_true,
                        r.f_reconstructed,
                        r.rel_err,
                        r.limit_error_estimate
                    );
                }
            }
            println!("{}", out.summary());
            ExitCode::from(out.status.exit_code() as u8)
        }
        Command::Identities { tolerance } => {
            let report = run_identity_suite(&default_matrix());
            print!("{report}");
            let ok = report.failures() == 0 && report.max_discrepancy() <= tolerance;
            println!("identities: {}", if ok { "pass" } else { "fail" });
            ExitCode::from(if ok { EXIT_PASS } else { EXIT_TOLERANCE } as u8)
        }
        Command::ListMatrix => {
            print!("{}", render_matrix());
            ExitCode::SUCCESS
        }
        Command::Sinogram { config, out_dir } => {
            let cfg = match ExperimentConfig::load(&config) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            let sino = match build_sinogram(&cfg) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let dir = out_dir.unwrap_or_else(|| resolve_dir(&cfg.output.dir));
            match write_sinogram(&cfg.experiment.name, &sino, &dir) {
                Ok(paths) => {
                    for p in paths {
                        println!("wrote {}", p.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
    }
}
