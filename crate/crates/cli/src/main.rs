use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mmwave_cli::error::{CliError, Result};
use mmwave_cli::experiment;
use mmwave_cli::invert::invert_density;
use mmwave_cli::presets::{preset, PRESETS};
use mmwave_cli::quantity::parse_list;
use mmwave_cli::report::write_outputs;
use mmwave_cli::{thread_count, ExperimentConfig, Overrides, Quantity, SweepSpec};

/// Connectivity of mmWave users in random-lattice cities: closed-form
/// bounds and Monte Carlo estimates over parameter sweeps.
#[derive(Parser)]
#[command(name = "mmwave", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a JSON config (or a run manifest) and write CSV plus manifest.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Run a named preset, or print its config.
    Preset {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(PRESETS))]
        name: String,
        /// Print the preset config as JSON instead of running it.
        #[arg(long)]
        print_config: bool,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Solve for the BS density at which a closed-form bound hits a target.
    Invert {
        #[arg(long)]
        config: PathBuf,
        /// Target connectivity probability in [0, 1).
        #[arg(long)]
        target: f64,
        /// Bound id, e.g. thm2 or hetnet_independent.
        #[arg(long)]
        bound: String,
    },
}

#[derive(Args)]
struct OverrideArgs {
    /// name=start:stop:steps[:log]
    #[arg(long)]
    sweep: Option<String>,
    /// Monte Carlo trials per sweep point.
    #[arg(long, visible_alias = "trials-per-point")]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated quantity ids.
    #[arg(long)]
    quantities: Option<String>,
}

impl OverrideArgs {
    fn parse(&self) -> Result<Overrides> {
        Ok(Overrides {
            sweep: self.sweep.as_deref().map(str::parse::<SweepSpec>).transpose()?,
            trials: self.trials,
            seed: self.seed,
            out: self.out.clone(),
            quantities: self.quantities.as_deref().map(parse_list).transpose()?,
        })
    }
}

fn run_config(config: &ExperimentConfig) -> Result<()> {
    let out = config
        .out
        .clone()
        .ok_or_else(|| CliError::Config("no output path: pass --out or set \"out\" in the config".into()))?;
    let output = experiment::run(config)?;
    for w in &output.warnings {
        eprintln!("warning: {w}");
    }
    let manifest = write_outputs(config, &output, &out)?;
    eprintln!("wrote {} rows to {} ({})", output.rows.len(), out.display(), manifest.display());
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    let threads = thread_count(std::env::var("MMWAVE_THREADS").ok().as_deref())?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    match cli.command {
        Command::Run { config, overrides } => {
            let config = overrides.parse()?.apply(ExperimentConfig::load(&config)?)?;
            run_config(&config)
        }
        Command::Preset { name, print_config, overrides } => {
            let config = overrides.parse()?.apply(preset(&name)?)?;
            if print_config {
                println!("{}", config.to_json());
                return Ok(());
            }
            run_config(&config)
        }
        Command::Invert { config, target, bound } => {
            let config = ExperimentConfig::load(&config)?;
            let bound: Quantity = bound.parse()?;
            let density = invert_density(target, &config.scenario, bound)?;
            println!("{density}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap would exit 2; bad arguments are configuration errors here
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
