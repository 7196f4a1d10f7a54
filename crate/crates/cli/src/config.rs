//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "scenario": {
//!     "kind": "single_tier",
//!     "lattice": { "site_area": 30.0, "occupancy": 0.3 },
//!     "bs_density": 6e-5,
//!     "range": 150.0
//!   },
//!   "quantities": ["thm1", "thm3", "sim_exact", "sim_mbfc"],
//!   "sweep": { "param": "lambda_c", "start": 1e-5, "stop": 2e-4, "steps": 20, "log": false },
//!   "trials": 100000,
//!   "seed": 42,
//!   "out": "fig5.csv"
//! }
//! ```
//!
//! A HetNet scenario uses `"kind": "hetnet"` with
//! `"lattice": { "site_area": .., "height_probs": [p0, p1, ..] }` and
//! `"tiers": [{ "density": .., "range": .. }, ..]`. `sweep` and `out` are
//! optional; `trials` defaults to 100000 and `seed` to 42.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use mmwave_core::montecarlo::Scenario;
use serde::{Deserialize, Serialize};

use crate::error::{config_err, CliError, Result};
use crate::quantity::Quantity;
use crate::sweep::SweepSpec;

pub const DEFAULT_TRIALS: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 42;

fn default_trials() -> u64 {
    DEFAULT_TRIALS
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub quantities: Vec<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    /// Monte Carlo trials per sweep point.
    #[serde(default = "default_trials")]
    pub trials: u64,
    /// Master seed; sweep point `i` simulates with `seed + i`.
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Reads a config file, or the config embedded in a run manifest.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Json { source, .. } => CliError::Json { path: path.into(), source },
            other => other,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json = |source| CliError::Json { path: PathBuf::new(), source };
        let mut value: serde_json::Value = serde_json::from_str(text).map_err(json)?;
        if value.get("toolkit").is_some() {
            if let Some(config) = value.get_mut("config") {
                value = config.take();
            }
        }
        let config: Self = serde_json::from_value(value).map_err(json)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if self.quantities.is_empty() {
            return Err(config_err("no quantities requested"));
        }
        let mut seen = HashSet::new();
        for q in &self.quantities {
            if !seen.insert(q) {
                return Err(config_err(format!("quantity {q} requested twice")));
            }
        }
        if self.trials == 0 && self.quantities.iter().any(Quantity::is_simulated) {
            return Err(config_err("simulated quantities need at least one trial"));
        }
        if let Some(sweep) = &self.sweep {
            sweep.validate()?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SINGLE: &str = r#"{
        "scenario": {"kind": "single_tier", "lattice": {"site_area": 30.0, "occupancy": 0.3},
                     "bs_density": 6e-5, "range": 150.0},
        "quantities": ["thm1", "sim_exact"]
    }"#;

    #[test]
    fn fills_defaults() {
        let c = ExperimentConfig::from_json(SINGLE).unwrap();
        assert_eq!((c.trials, c.seed), (DEFAULT_TRIALS, DEFAULT_SEED));
        assert!(c.sweep.is_none() && c.out.is_none());
        assert_eq!(ExperimentConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn rejects_unknown_fields_everywhere() {
        let top = SINGLE.replacen("\"quantities\"", "\"trails\": 5, \"quantities\"", 1);
        assert!(ExperimentConfig::from_json(&top).is_err());
        let nested = SINGLE.replace("\"range\"", "\"rnage\"");
        assert!(ExperimentConfig::from_json(&nested).is_err());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(ExperimentConfig::from_json(&SINGLE.replace("0.3", "1.3")).is_err());
        assert!(ExperimentConfig::from_json(&SINGLE.replace("\"sim_exact\"", "\"thm1\"")).is_err());
        assert!(ExperimentConfig::from_json(&SINGLE.replace("\"sim_exact\"", "\"sim_bogus\"")).is_err());
    }

    #[test]
    fn reads_config_out_of_a_manifest() {
        let c = ExperimentConfig::from_json(SINGLE).unwrap();
        let manifest = format!(r#"{{"toolkit": "mmwave", "version": "0", "config": {}}}"#, c.to_json());
        assert_eq!(ExperimentConfig::from_json(&manifest).unwrap(), c);
    }
}
