//! Network scenarios shared by the analytic bounds and the simulator.

use serde::{Deserialize, Serialize};

use crate::error::{check_nonnegative, Error, Result};
use crate::lattice::{LatticeConfig, MultiHeightConfig};

/// One BS tier over a uniform-height lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingleTierScenario {
    pub lattice: LatticeConfig,
    /// BS density `λ_c` per m².
    pub bs_density: f64,
    /// Coverage range `r_b` in m.
    pub range: f64,
}

impl SingleTierScenario {
    pub fn new(lattice: LatticeConfig, bs_density: f64, range: f64) -> Result<Self> {
        let sc = Self { lattice, bs_density, range };
        sc.validate()?;
        Ok(sc)
    }

    pub fn validate(&self) -> Result<()> {
        self.lattice.validate()?;
        check_nonnegative("bs_density", self.bs_density)?;
        check_nonnegative("range", self.range)
    }

    pub fn site_area(&self) -> f64 {
        self.lattice.site_area
    }

    pub fn occupancy(&self) -> f64 {
        self.lattice.occupancy
    }

    /// The same network seen as a one-tier HetNet over a one-height lattice.
    pub fn as_hetnet(&self) -> Result<HetNetScenario> {
        HetNetScenario::new(
            MultiHeightConfig::from_uniform(&self.lattice)?,
            vec![Tier { density: self.bs_density, range: self.range }],
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tier {
    /// BS density per m².
    pub density: f64,
    /// Coverage range in m.
    pub range: f64,
}

/// K BS tiers over a multi-height lattice.
///
/// Tier `k` is blocked by buildings of height classes `1..=min(k, H)`,
/// where `H` is the number of height classes, so a network may have more
/// tiers than height classes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HetNetScenario {
    pub lattice: MultiHeightConfig,
    pub tiers: Vec<Tier>,
}

impl HetNetScenario {
    pub fn new(lattice: MultiHeightConfig, tiers: Vec<Tier>) -> Result<Self> {
        let sc = Self { lattice, tiers };
        sc.validate()?;
        Ok(sc)
    }

    pub fn validate(&self) -> Result<()> {
        self.lattice.validate()?;
        if self.tiers.is_empty() {
            return Err(Error::Config("a HetNet needs at least one tier".into()));
        }
        if self.lattice.heights() > u8::MAX as usize {
            return Err(Error::Config("too many height classes".into()));
        }
        for (i, tier) in self.tiers.iter().enumerate() {
            check_nonnegative(&format!("tiers[{i}].density"), tier.density)?;
            check_nonnegative(&format!("tiers[{i}].range"), tier.range)?;
        }
        Ok(())
    }

    pub fn tier_count(&self) -> usize {
        self.tiers.len()
    }

    /// Tier `k` (1-based).
    pub fn tier(&self, k: usize) -> Result<Tier> {
        if k == 0 || k > self.tiers.len() {
            return Err(Error::TierOutOfRange { k, max: self.tiers.len() });
        }
        Ok(self.tiers[k - 1])
    }

    /// Highest building class that blocks tier `k`.
    pub fn blocking_level(&self, k: usize) -> usize {
        k.min(self.lattice.heights())
    }

    pub fn max_range(&self) -> f64 {
        self.tiers.iter().map(|t| t.range).fold(0.0, f64::max)
    }

    /// Ordering conventions the tiers break: ranges should strictly
    /// decrease and densities strictly increase with `k`. The bounds stay
    /// valid either way, so these are only warnings.
    pub fn ordering_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        for (k, pair) in self.tiers.windows(2).enumerate() {
            let (hi, lo) = (pair[0], pair[1]);
            if lo.range >= hi.range {
                warnings.push(format!(
                    "tier {} range {} m is not below tier {} range {} m",
                    k + 2,
                    lo.range,
                    k + 1,
                    hi.range
                ));
            }
            if lo.density <= hi.density {
                warnings.push(format!(
                    "tier {} density {} is not above tier {} density {}",
                    k + 2,
                    lo.density,
                    k + 1,
                    hi.density
                ));
            }
        }
        warnings
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hetnet(tiers: &[(f64, f64)]) -> HetNetScenario {
        HetNetScenario::new(
            MultiHeightConfig::new(30.0, vec![0.4, 0.1, 0.2, 0.3]).unwrap(),
            tiers.iter().map(|&(density, range)| Tier { density, range }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn ordering_warnings() {
        assert!(hetnet(&[(4e-5, 150.0), (2e-4, 90.0), (4e-4, 50.0)]).ordering_warnings().is_empty());
        assert_eq!(hetnet(&[(4e-5, 150.0), (4e-5, 160.0)]).ordering_warnings().len(), 2);
    }

    #[test]
    fn blocking_levels_saturate() {
        let sc = hetnet(&[(1e-5, 150.0); 5]);
        assert_eq!(sc.blocking_level(2), 2);
        assert_eq!(sc.blocking_level(5), 3);
        assert!(matches!(sc.tier(6), Err(Error::TierOutOfRange { k: 6, max: 5 })));
    }

    #[test]
    fn rejects_empty_and_negative() {
        let lattice = MultiHeightConfig::new(30.0, vec![0.5, 0.5]).unwrap();
        assert!(HetNetScenario::new(lattice.clone(), vec![]).is_err());
        assert!(HetNetScenario::new(lattice, vec![Tier { density: -1.0, range: 1.0 }]).is_err());
        let lc = LatticeConfig::new(30.0, 0.3).unwrap();
        assert!(SingleTierScenario::new(lc, 1e-5, -2.0).is_err());
    }
}
