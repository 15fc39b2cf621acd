//! `rwall`: run wall simulations, benchmarks and diagnostic tables from a TOML
//! config and a weather CSV.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use riccati_wall_cli::commands::{self, Frequency};
use riccati_wall_cli::output::Format;
use riccati_wall_cli::Failure;

#[derive(Parser)]
#[command(name = "rwall", version, about = "Frequency-domain wall heat transfer")]
struct Cli {
    /// Worker threads for the per-harmonic evaluation.
    #[arg(long, global = true, env = "RWALL_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Interior response time series.
    Simulate {
        config: PathBuf,
        weather: PathBuf,
        /// Add the first-order gradient correction.
        #[arg(long)]
        perturbed: bool,
        /// Add the longwave sky correction (needs T_sky_C and [radiative]).
        #[arg(long)]
        radiative: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Riccati vs sliced error and cost against a finely sliced reference.
    Benchmark {
        config: PathBuf,
        #[arg(long)]
        weather: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "2,5,10,59,200,1000,10000")]
        ms_list: Vec<usize>,
        #[arg(long, default_value_t = 10_000)]
        reference_ms: usize,
        #[arg(long, value_enum, default_value = "diurnal")]
        frequency: Frequency,
        /// Drop the timing column (reproducible output).
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Transfer-matrix overflow thickness over diffusivity and period.
    PhaseSpace {
        #[arg(long, default_value_t = 1.0e-7)]
        alpha_min: f64,
        #[arg(long, default_value_t = 1.5e-5)]
        alpha_max: f64,
        #[arg(long, default_value_t = 2)]
        alpha_steps: usize,
        /// Periods in seconds, comma separated; empty gives a header only.
        #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "10,60,600,3600,86400")]
        periods: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// First-day wrap-around error against a long-padded reference.
    Aliasing {
        config: PathBuf,
        weather: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4,5,6,7,8")]
        padding_days: Vec<f64>,
        #[arg(long, default_value_t = 20.0)]
        reference_days: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Schema and physics checks with warm-up advice.
    Validate { config: PathBuf },
}

fn parse_periods(raw: &[String]) -> Result<Vec<f64>, Failure> {
    raw.iter()
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| Failure::invalid(format!("bad period {s:?}"))))
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::invalid(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Simulate { config, weather, perturbed, radiative, out, format } => {
            commands::simulate_cmd(&commands::SimulateArgs { config, weather, perturbed, radiative, out, format })
        }
        Command::Benchmark { config, weather, ms_list, reference_ms, frequency, no_timing, out, format } => {
            commands::benchmark_cmd(&commands::BenchmarkArgs {
                config,
                weather,
                ms_list,
                reference_ms,
                frequency,
                no_timing,
                out,
                format,
            })
        }
        Command::PhaseSpace { alpha_min, alpha_max, alpha_steps, periods, out, format } => {
            commands::phase_space_cmd(&commands::PhaseSpaceArgs {
                alpha_min,
                alpha_max,
                alpha_steps,
                periods: parse_periods(&periods)?,
                out,
                format,
            })
        }
        Command::Aliasing { config, weather, padding_days, reference_days, out, format } => {
            commands::aliasing_cmd(&commands::AliasingArgs { config, weather, padding_days, reference_days, out, format })
        }
        Command::Validate { config } => commands::validate_cmd(&config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rwall: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
