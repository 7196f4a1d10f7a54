//! Stable string ids for everything a run can evaluate.

use std::fmt;
use std::str::FromStr;

use mmwave_core::bounds::{self, RegionKind};
use mmwave_core::geometry::exact_covered_site_count;
use mmwave_core::montecarlo::{EstimatorKind, Event, Scenario};
use serde::{Deserialize, Serialize};

use crate::error::{config_err, CliError, Result};

/// A closed-form quantity or a simulated event probability.
///
/// Site counts use the scenario's coverage range as the disk radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Quantity {
    NLower,
    NUpper,
    NExact,
    NAsymptotic,
    NLowerRandomUser,
    NUpperRandomUser,
    Thm1,
    Thm1SemiExact,
    Thm2,
    Thm2SmallPb,
    Thm3,
    Thm4,
    QAxis,
    QQuadrant,
    /// Probability that the blockage-free radius index equals `n`.
    Pmf(u32),
    HetnetMax,
    HetnetMaxDense,
    HetnetMultiregion,
    HetnetIndependent,
    HetnetIndependentTightened,
    LinearTierSum,
    TierEta(usize),
    TierEtaDense(usize),
    Qk(usize),
    ExclusiveVoid(usize),
    TierEtaAxis(usize),
    TierEtaQuadrant(usize),
    Sim(EstimatorKind),
}

const FIXED: &[(&str, Quantity)] = &[
    ("n_lower", Quantity::NLower),
    ("n_upper", Quantity::NUpper),
    ("n_exact", Quantity::NExact),
    ("n_asymptotic", Quantity::NAsymptotic),
    ("n_lower_random_user", Quantity::NLowerRandomUser),
    ("n_upper_random_user", Quantity::NUpperRandomUser),
    ("thm1", Quantity::Thm1),
    ("thm1_semi_exact", Quantity::Thm1SemiExact),
    ("thm2", Quantity::Thm2),
    ("thm2_small_pb", Quantity::Thm2SmallPb),
    ("thm3", Quantity::Thm3),
    ("thm4", Quantity::Thm4),
    ("q_axis", Quantity::QAxis),
    ("q_quadrant", Quantity::QQuadrant),
    ("hetnet_max", Quantity::HetnetMax),
    ("hetnet_max_dense", Quantity::HetnetMaxDense),
    ("hetnet_multiregion", Quantity::HetnetMultiregion),
    ("hetnet_independent", Quantity::HetnetIndependent),
    ("hetnet_independent_tightened", Quantity::HetnetIndependentTightened),
    ("linear_tier_sum", Quantity::LinearTierSum),
    ("sim_exact", Quantity::Sim(EstimatorKind { event: Event::ExactSingle, placement: ORIGIN })),
    ("sim_exact_random_user", Quantity::Sim(EstimatorKind { event: Event::ExactSingle, placement: RANDOM })),
    ("sim_mbfc", Quantity::Sim(EstimatorKind { event: Event::MbfcSingle, placement: ORIGIN })),
    ("sim_multiregion", Quantity::Sim(EstimatorKind { event: Event::MultiregionSingle, placement: ORIGIN })),
    ("sim_exact_hetnet", Quantity::Sim(EstimatorKind { event: Event::ExactHetnet, placement: ORIGIN })),
    (
        "sim_exact_hetnet_random_user",
        Quantity::Sim(EstimatorKind { event: Event::ExactHetnet, placement: RANDOM }),
    ),
    ("sim_mbfc_hetnet", Quantity::Sim(EstimatorKind { event: Event::MbfcHetnet, placement: ORIGIN })),
    (
        "sim_multiregion_hetnet",
        Quantity::Sim(EstimatorKind { event: Event::MultiregionHetnet, placement: ORIGIN }),
    ),
];

const ORIGIN: mmwave_core::montecarlo::UserPlacement = mmwave_core::montecarlo::UserPlacement::Origin;
const RANDOM: mmwave_core::montecarlo::UserPlacement = mmwave_core::montecarlo::UserPlacement::UniformInEmptySite;

/// Id prefixes that take a trailing integer.
const INDEXED: &[&str] = &[
    "sim_pmf_",
    "sim_per_tier_",
    "pmf_",
    "tier_eta_dense_",
    "tier_eta_axis_",
    "tier_eta_quadrant_",
    "tier_eta_",
    "exclusive_void_",
    "qk_",
];

impl Quantity {
    pub fn is_simulated(&self) -> bool {
        matches!(self, Quantity::Sim(_))
    }

    pub fn estimator(&self) -> Option<EstimatorKind> {
        match self {
            Quantity::Sim(kind) => Some(*kind),
            _ => None,
        }
    }

    fn needs_hetnet(&self) -> Option<bool> {
        use Quantity::*;
        match self {
            NLower | NUpper | NExact | NAsymptotic | NLowerRandomUser | NUpperRandomUser => None,
            Thm1 | Thm1SemiExact | Thm2 | Thm2SmallPb | Thm3 | Thm4 | QAxis | QQuadrant | Pmf(_) => Some(false),
            Sim(kind) => Some(matches!(
                kind.event,
                Event::ExactHetnet | Event::PerTier(_) | Event::MbfcHetnet | Event::MultiregionHetnet
            )),
            _ => Some(true),
        }
    }

    /// Rejects quantities that cannot be evaluated on `scenario`.
    pub fn check(&self, scenario: &Scenario) -> Result<()> {
        let hetnet = matches!(scenario, Scenario::HetNet(_));
        if let Some(want) = self.needs_hetnet() {
            if want != hetnet {
                let kind = if want { "a hetnet" } else { "a single_tier" };
                return Err(config_err(format!("quantity {self} needs {kind} scenario")));
            }
        }
        let tier = match self {
            Quantity::TierEta(k)
            | Quantity::TierEtaDense(k)
            | Quantity::TierEtaAxis(k)
            | Quantity::TierEtaQuadrant(k)
            | Quantity::Qk(k)
            | Quantity::ExclusiveVoid(k) => Some(*k),
            Quantity::Sim(EstimatorKind { event: Event::PerTier(k), .. }) => Some(*k),
            _ => None,
        };
        if let (Some(k), Scenario::HetNet(sc)) = (tier, scenario) {
            let max = match self {
                Quantity::Qk(_) | Quantity::ExclusiveVoid(_) => sc.lattice.heights(),
                _ => sc.tier_count(),
            };
            if k == 0 || k > max {
                return Err(config_err(format!("quantity {self} needs an index in 1..={max}")));
            }
        }
        if let Quantity::Pmf(n) | Quantity::Sim(EstimatorKind { event: Event::RPmf(n), .. }) = self {
            if *n > mmwave_core::montecarlo::MAX_PMF_INDEX {
                return Err(config_err(format!(
                    "quantity {self}: index above {}",
                    mmwave_core::montecarlo::MAX_PMF_INDEX
                )));
            }
        }
        Ok(())
    }

    /// Value of a closed-form quantity. Simulated quantities are an error.
    pub fn evaluate(&self, scenario: &Scenario) -> Result<f64> {
        use Quantity::*;
        self.check(scenario)?;
        let (r, s) = match scenario {
            Scenario::SingleTier(sc) => (sc.range, sc.site_area()),
            Scenario::HetNet(sc) => (sc.max_range(), sc.lattice.site_area),
        };
        if let Scenario::SingleTier(sc) = scenario {
            let value = match self {
                Thm1 => bounds::pc_lb_mbfc(sc)?.value,
                Thm1SemiExact => bounds::pc_lb_mbfc_semi_exact(sc)?.value,
                Thm2 => bounds::pc_lb_mbfc_dense(sc, false)?.value,
                Thm2SmallPb => bounds::pc_lb_mbfc_dense(sc, true)?.value,
                Thm3 => bounds::pc_lb_multiregion(sc)?.value,
                Thm4 => bounds::pc_lb_multiregion_dense(sc)?.value,
                QAxis => bounds::region_q_axis(sc)?,
                QQuadrant => bounds::region_q_quadrant(sc)?,
                Pmf(n) => bounds::mbfc_pmf(*n, sc.occupancy())?,
                _ => f64::NAN,
            };
            if !value.is_nan() {
                return Ok(value);
            }
        }
        if let Scenario::HetNet(sc) = scenario {
            let value = match self {
                HetnetMax => bounds::hetnet_lb_max(sc, false)?.value,
                HetnetMaxDense => bounds::hetnet_lb_max(sc, true)?.value,
                HetnetMultiregion => bounds::hetnet_lb_multiregion(sc)?.value,
                HetnetIndependent => bounds::hetnet_lb_independent(sc, false)?.value,
                HetnetIndependentTightened => bounds::hetnet_lb_independent(sc, true)?.value,
                LinearTierSum => bounds::linear_tier_sum(sc)?,
                TierEta(k) => bounds::tier_eta(sc, *k)?.value,
                TierEtaDense(k) => bounds::tier_eta_dense(sc, *k)?.value,
                TierEtaAxis(k) => bounds::hetnet_eta_region(sc, *k, RegionKind::Axis)?,
                TierEtaQuadrant(k) => bounds::hetnet_eta_region(sc, *k, RegionKind::Quadrant)?,
                Qk(k) => bounds::qk(&sc.lattice, *k)?,
                ExclusiveVoid(k) => bounds::exclusive_void(&sc.lattice, *k)?,
                _ => f64::NAN,
            };
            if !value.is_nan() {
                return Ok(value);
            }
        }
        Ok(match self {
            NLower => bounds::n_bounds(r, s).0 as f64,
            NUpper => bounds::n_bounds(r, s).1 as f64,
            NExact => exact_covered_site_count(r, s) as f64,
            NAsymptotic => bounds::n_asymptotic(r, s),
            NLowerRandomUser => bounds::n_bounds_random_user(r, s).0 as f64,
            NUpperRandomUser => bounds::n_bounds_random_user(r, s).1 as f64,
            other => return Err(config_err(format!("quantity {other} has no closed form"))),
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((id, _)) = FIXED.iter().find(|(_, q)| q == self) {
            return f.write_str(id);
        }
        match self {
            Quantity::Pmf(n) => write!(f, "pmf_{n}"),
            Quantity::TierEta(k) => write!(f, "tier_eta_{k}"),
            Quantity::TierEtaDense(k) => write!(f, "tier_eta_dense_{k}"),
            Quantity::TierEtaAxis(k) => write!(f, "tier_eta_axis_{k}"),
            Quantity::TierEtaQuadrant(k) => write!(f, "tier_eta_quadrant_{k}"),
            Quantity::Qk(k) => write!(f, "qk_{k}"),
            Quantity::ExclusiveVoid(k) => write!(f, "exclusive_void_{k}"),
            Quantity::Sim(EstimatorKind { event: Event::RPmf(n), placement: ORIGIN }) => write!(f, "sim_pmf_{n}"),
            Quantity::Sim(EstimatorKind { event: Event::PerTier(k), placement: ORIGIN }) => {
                write!(f, "sim_per_tier_{k}")
            }
            Quantity::Sim(kind) => write!(f, "sim_{kind}"),
            _ => unreachable!("every fixed quantity has an id"),
        }
    }
}

impl FromStr for Quantity {
    type Err = CliError;

    fn from_str(id: &str) -> Result<Self> {
        if let Some((_, q)) = FIXED.iter().find(|(name, _)| *name == id) {
            return Ok(*q);
        }
        let unknown = || config_err(format!("unknown quantity id {id:?}"));
        let prefix = INDEXED.iter().find(|p| id.starts_with(*p)).ok_or_else(unknown)?;
        let digits = &id[prefix.len()..];
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(unknown());
        }
        let n: u32 = digits.parse().map_err(|_| unknown())?;
        let k = n as usize;
        let sim = |event| Quantity::Sim(EstimatorKind::new(event));
        Ok(match *prefix {
            "sim_pmf_" => sim(Event::RPmf(n)),
            "sim_per_tier_" => sim(Event::PerTier(k)),
            "pmf_" => Quantity::Pmf(n),
            "tier_eta_dense_" => Quantity::TierEtaDense(k),
            "tier_eta_axis_" => Quantity::TierEtaAxis(k),
            "tier_eta_quadrant_" => Quantity::TierEtaQuadrant(k),
            "tier_eta_" => Quantity::TierEta(k),
            "exclusive_void_" => Quantity::ExclusiveVoid(k),
            "qk_" => Quantity::Qk(k),
            _ => return Err(unknown()),
        })
    }
}

impl TryFrom<String> for Quantity {
    type Error = CliError;

    fn try_from(id: String) -> Result<Self> {
        id.parse()
    }
}

impl From<Quantity> for String {
    fn from(q: Quantity) -> String {
        q.to_string()
    }
}

/// Parses a comma-separated id list.
pub fn parse_list(list: &str) -> Result<Vec<Quantity>> {
    let ids: Vec<Quantity> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::parse).collect::<Result<_>>()?;
    if ids.is_empty() {
        return Err(config_err("empty quantity list"));
    }
    Ok(ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        let ids = [
            "thm1", "thm1_semi_exact", "thm4", "pmf_0", "pmf_12", "sim_pmf_3", "sim_per_tier_2", "tier_eta_1",
            "tier_eta_dense_3", "tier_eta_axis_2", "tier_eta_quadrant_1", "qk_2", "exclusive_void_3",
            "sim_exact_random_user", "sim_multiregion_hetnet", "n_exact", "linear_tier_sum",
        ];
        for id in ids {
            let q: Quantity = id.parse().unwrap();
            assert_eq!(q.to_string(), id);
        }
        for (id, q) in FIXED {
            assert_eq!(q.to_string(), *id);
        }
    }

    #[test]
    fn rejects_unknown_ids() {
        for id in ["thm9", "pmf_", "pmf_x", "sim_per_tier_-1", "tier_eta", ""] {
            assert!(id.parse::<Quantity>().is_err(), "{id}");
        }
    }

    #[test]
    fn serde_uses_the_ids() {
        let qs: Vec<Quantity> = serde_json::from_str(r#"["thm3","sim_per_tier_2"]"#).unwrap();
        assert_eq!(serde_json::to_string(&qs).unwrap(), r#"["thm3","sim_per_tier_2"]"#);
    }
}
