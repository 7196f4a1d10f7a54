//! Required BS density for a target connectivity, by bisection.

use mmwave_core::montecarlo::Scenario;

use crate::error::{config_err, CliError, Result};
use crate::quantity::Quantity;
use crate::sweep::SweepParam;

/// Absolute tolerance on the bound value at the returned density.
pub const TOLERANCE: f64 = 1e-6;

// Densities above one BS per m² are not physical; the search stops there.
const MAX_DENSITY: f64 = 1.0;

fn density_param(scenario: &Scenario) -> SweepParam {
    match scenario {
        Scenario::SingleTier(_) => SweepParam::LambdaC,
        Scenario::HetNet(_) => SweepParam::Lambda1,
    }
}

/// Bound `bound` with the density set to `density`. For a HetNet the
/// density is tier 1's and the other tiers keep their ratios to it.
pub fn bound_at(scenario: &Scenario, bound: Quantity, density: f64) -> Result<f64> {
    bound.evaluate(&density_param(scenario).apply(scenario, density)?)
}

/// Density at which `bound` reaches `target`, to within [`TOLERANCE`] on
/// the bound value. Bounds increase with density, so bisection applies.
pub fn invert_density(target: f64, scenario: &Scenario, bound: Quantity) -> Result<f64> {
    if !(0.0..1.0).contains(&target) {
        return Err(config_err(format!("target {target} must lie in [0, 1)")));
    }
    if bound.is_simulated() {
        return Err(config_err(format!("{bound} is simulated; only closed-form bounds can be inverted")));
    }
    bound.check(scenario)?;
    if target == 0.0 {
        return Ok(0.0);
    }
    let f = |density: f64| bound_at(scenario, bound, density);
    let mut hi = 1e-6;
    let mut f_hi = f(hi)?;
    while f_hi < target {
        if hi >= MAX_DENSITY {
            return Err(CliError::Unreachable { target, bound: bound.to_string(), sup: f_hi, density: hi });
        }
        hi = (hi * 2.0).min(MAX_DENSITY);
        f_hi = f(hi)?;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid < target {
            lo = mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
        if f_hi - target <= 0.25 * TOLERANCE {
            break;
        }
    }
    if (f_hi - target).abs() > TOLERANCE {
        return Err(mmwave_core::Error::Domain(format!(
            "{bound} jumps past {target} near density {hi}; no density meets it within {TOLERANCE}"
        ))
        .into());
    }
    Ok(hi)
}
