//! One-parameter sweeps: `name=start:stop:steps[:log]`.

use std::fmt;
use std::str::FromStr;

use mmwave_core::montecarlo::Scenario;
use serde::{Deserialize, Serialize};

use crate::error::{config_err, CliError, Result};

/// Scenario field a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    /// Single-tier BS density.
    LambdaC,
    /// Single-tier coverage range.
    RB,
    /// Site area, either scenario.
    S,
    /// Single-tier occupancy.
    PB,
    /// Single-tier coverage range in units of the site side.
    ROverSqrtS,
    /// Tier-1 density of a HetNet; the other tiers keep their ratios to it.
    #[serde(rename = "lambda_1")]
    Lambda1,
    /// Number of HetNet tiers, keeping the first `k` of the configured list.
    K,
}

const NAMES: &[(&str, SweepParam)] = &[
    ("lambda_c", SweepParam::LambdaC),
    ("r_b", SweepParam::RB),
    ("s", SweepParam::S),
    ("p_b", SweepParam::PB),
    ("r_over_sqrt_s", SweepParam::ROverSqrtS),
    ("lambda_1", SweepParam::Lambda1),
    ("k", SweepParam::K),
];

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = NAMES.iter().find(|(_, p)| p == self).map(|(n, _)| *n).unwrap_or("?");
        f.write_str(name)
    }
}

impl FromStr for SweepParam {
    type Err = CliError;

    fn from_str(name: &str) -> Result<Self> {
        NAMES.iter().find(|(n, _)| *n == name).map(|(_, p)| *p).ok_or_else(|| {
            let known: Vec<&str> = NAMES.iter().map(|(n, _)| *n).collect();
            config_err(format!("unknown sweep parameter {name:?}; expected one of {}", known.join(", ")))
        })
    }
}

impl SweepParam {
    /// `base` with this parameter set to `value`.
    pub fn apply(&self, base: &Scenario, value: f64) -> Result<Scenario> {
        let mut sc = base.clone();
        match (self, &mut sc) {
            (SweepParam::LambdaC, Scenario::SingleTier(st)) => st.bs_density = value,
            (SweepParam::RB, Scenario::SingleTier(st)) => st.range = value,
            (SweepParam::PB, Scenario::SingleTier(st)) => st.lattice.occupancy = value,
            (SweepParam::ROverSqrtS, Scenario::SingleTier(st)) => st.range = value * st.lattice.site_area.sqrt(),
            (SweepParam::S, Scenario::SingleTier(st)) => st.lattice.site_area = value,
            (SweepParam::S, Scenario::HetNet(h)) => h.lattice.site_area = value,
            (SweepParam::Lambda1, Scenario::HetNet(h)) => {
                let base_density = h.tiers[0].density;
                if base_density <= 0.0 {
                    return Err(config_err("lambda_1 sweep needs a positive tier-1 density to scale from"));
                }
                let ratio = value / base_density;
                for (i, tier) in h.tiers.iter_mut().enumerate() {
                    // keep tier 1 exact rather than round-tripping through the ratio
                    tier.density = if i == 0 { value } else { tier.density * ratio };
                }
            }
            (SweepParam::K, Scenario::HetNet(h)) => {
                let k = value as usize;
                if value.fract() != 0.0 || k == 0 || k > h.tiers.len() {
                    return Err(config_err(format!("k = {value} is not a tier count in 1..={}", h.tiers.len())));
                }
                h.tiers.truncate(k);
            }
            (param, sc) => {
                let kind = if matches!(sc, Scenario::HetNet(_)) { "hetnet" } else { "single_tier" };
                return Err(config_err(format!("sweep parameter {param} does not apply to a {kind} scenario")));
            }
        }
        sc.validate()?;
        Ok(sc)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    #[serde(default)]
    pub log: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(config_err("sweep needs at least one step"));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(config_err("sweep endpoints must be finite"));
        }
        if self.log && (self.start <= 0.0 || self.stop <= 0.0) {
            return Err(config_err("a log sweep needs positive endpoints"));
        }
        Ok(())
    }

    /// Sweep points from `start` to `stop` inclusive; both ends are exact.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        if n == 1 {
            return vec![self.start];
        }
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.stop;
                }
                let t = i as f64 / (n - 1) as f64;
                if self.log {
                    (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + t * (self.stop - self.start)
                }
            })
            .collect()
    }
}

impl FromStr for SweepSpec {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || config_err(format!("bad sweep {text:?}; expected name=start:stop:steps[:log]"));
        let (name, range) = text.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = range.split(':').collect();
        let log = match parts.len() {
            3 => false,
            4 if parts[3] == "log" => true,
            4 if parts[3] == "lin" => false,
            _ => return Err(bad()),
        };
        let number = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
        let spec = SweepSpec {
            param: name.trim().parse()?,
            start: number(parts[0])?,
            stop: number(parts[1])?,
            steps: parts[2].trim().parse().map_err(|_| bad())?,
            log,
        };
        spec.validate()?;
        Ok(spec)
    }
}
