//! Experiment orchestration for `mmwave-core`: JSON configs, parameter
//! sweeps, named presets, density inversion and CSV output.

pub mod config;
pub mod error;
pub mod experiment;
pub mod invert;
pub mod presets;
pub mod quantity;
pub mod report;
pub mod sweep;

use std::path::PathBuf;

pub use config::ExperimentConfig;
pub use error::{CliError, Result};
pub use quantity::Quantity;
pub use sweep::{SweepParam, SweepSpec};

/// Command-line values that replace config fields.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub sweep: Option<SweepSpec>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub quantities: Option<Vec<Quantity>>,
}

impl Overrides {
    pub fn apply(&self, mut config: ExperimentConfig) -> Result<ExperimentConfig> {
        if let Some(sweep) = &self.sweep {
            config.sweep = Some(sweep.clone());
        }
        if let Some(trials) = self.trials {
            config.trials = trials;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(out) = &self.out {
            config.out = Some(out.clone());
        }
        if let Some(q) = &self.quantities {
            config.quantities = q.clone();
        }
        config.validate()?;
        Ok(config)
    }
}

/// Worker count from `MMWAVE_THREADS`: unset, empty or `0` means one
/// worker per core.
pub fn thread_count(var: Option<&str>) -> Result<usize> {
    match var.map(str::trim) {
        None | Some("") => Ok(0),
        Some(text) => text
            .parse()
            .map_err(|_| CliError::Config(format!("MMWAVE_THREADS = {text:?} is not a worker count"))),
    }
}
