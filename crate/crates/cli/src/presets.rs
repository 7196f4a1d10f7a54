//! Named sweep configurations, each built on the bundled defaults.

use mmwave_core::montecarlo::Scenario;
use mmwave_core::{HetNetScenario, LatticeConfig, MultiHeightConfig, SingleTierScenario, Tier};

use crate::config::{ExperimentConfig, DEFAULT_SEED, DEFAULT_TRIALS};
use crate::error::{config_err, Result};
use crate::quantity::{parse_list, Quantity};
use crate::sweep::SweepSpec;

pub const PRESETS: &[&str] = &["fig3", "fig5", "fig6", "fig7", "tiers", "fig_s_hetnet"];

/// `r_b = 150 m`, `λ_c = 6e-5 /m²`, `s = 30 m²`, `p_b = 0.3`.
pub fn single_tier_defaults() -> SingleTierScenario {
    SingleTierScenario { lattice: LatticeConfig { site_area: 30.0, occupancy: 0.3 }, bs_density: 6e-5, range: 150.0 }
}

const LAMBDA_1: f64 = 4e-5;

/// Three tiers with ranges `{150, 90, 50}` m and densities
/// `{1, 5, 10} × 4e-5 /m²` over height classes `{0.4, 0.1, 0.2, 0.3}`.
pub fn hetnet_defaults() -> HetNetScenario {
    HetNetScenario {
        lattice: MultiHeightConfig { site_area: 30.0, height_probs: vec![0.4, 0.1, 0.2, 0.3] },
        tiers: [(1.0, 150.0), (5.0, 90.0), (10.0, 50.0)]
            .iter()
            .map(|&(m, range)| Tier { density: m * LAMBDA_1, range })
            .collect(),
    }
}

/// The three default tiers followed by three smaller, denser ones.
pub fn six_tier_hetnet() -> HetNetScenario {
    let mut sc = hetnet_defaults();
    sc.tiers.extend([(15.0, 35.0), (20.0, 25.0), (25.0, 20.0)].iter().map(|&(m, range)| Tier { density: m * LAMBDA_1, range }));
    sc
}

const SINGLE_TIER_CURVES: &str = "thm1,thm1_semi_exact,thm2,thm3,thm4,sim_exact,sim_mbfc,sim_multiregion";
const HETNET_CURVES: &str = "hetnet_max,hetnet_max_dense,hetnet_multiregion,hetnet_independent,\
                             hetnet_independent_tightened,sim_exact_hetnet,sim_mbfc_hetnet,sim_multiregion_hetnet";

fn config(scenario: Scenario, quantities: &str, sweep: &str, out: &str) -> ExperimentConfig {
    ExperimentConfig {
        scenario,
        quantities: parse_list(quantities).expect("preset ids are valid"),
        sweep: Some(sweep.parse::<SweepSpec>().expect("preset sweeps are valid")),
        trials: DEFAULT_TRIALS,
        seed: DEFAULT_SEED,
        out: Some(out.into()),
    }
}

/// Looks up a preset by name.
pub fn preset(name: &str) -> Result<ExperimentConfig> {
    let single = Scenario::SingleTier(single_tier_defaults());
    let c = match name {
        "fig3" => config(single, "n_lower,n_upper,n_exact,n_asymptotic", "r_over_sqrt_s=0.1:50:500", "fig3.csv"),
        "fig5" => config(single, SINGLE_TIER_CURVES, "lambda_c=1e-5:2e-4:20", "fig5.csv"),
        "fig6" => config(single, SINGLE_TIER_CURVES, "p_b=0.05:0.95:19", "fig6.csv"),
        "fig7" => config(single, SINGLE_TIER_CURVES, "s=3:300:9:log", "fig7.csv"),
        "tiers" => config(Scenario::HetNet(six_tier_hetnet()), HETNET_CURVES, "k=1:6:6", "tiers.csv"),
        "fig_s_hetnet" => config(Scenario::HetNet(hetnet_defaults()), HETNET_CURVES, "s=3:300:9:log", "fig_s_hetnet.csv"),
        _ => {
            return Err(config_err(format!("unknown preset {name:?}; expected one of {}", PRESETS.join(", "))));
        }
    };
    Ok(c)
}

/// Quantities every preset of a scenario kind shares, for callers that
/// want the same curves on a custom sweep.
pub fn default_quantities(scenario: &Scenario) -> Vec<Quantity> {
    let ids = match scenario {
        Scenario::SingleTier(_) => SINGLE_TIER_CURVES,
        Scenario::HetNet(_) => HETNET_CURVES,
    };
    parse_list(ids).expect("preset ids are valid")
}
