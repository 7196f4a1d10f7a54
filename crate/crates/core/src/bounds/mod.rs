//! Closed-form connectivity bounds.
//!
//! Every power of a void probability `v^e` is evaluated as `exp(e ln v)`
//! with the convention `0^0 = 1`, and `1 - v^e`, `1 - e^{-x}` go through
//! `expm1` so that small probabilities keep their relative accuracy.

mod counting;
mod hetnet;
mod single;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use counting::{mbfc_pmf, mbfc_tail, mbfc_tail_exact, n_asymptotic, n_bounds, n_bounds_random_user};
pub use hetnet::{
    exclusive_void, hetnet_eta_region, hetnet_lb_independent, hetnet_lb_max, hetnet_lb_multiregion,
    linear_tier_sum, qk, tier_eta, tier_eta_dense, RegionKind,
};
pub use single::{
    pc_lb_mbfc, pc_lb_mbfc_dense, pc_lb_mbfc_semi_exact, pc_lb_multiregion, pc_lb_multiregion_dense,
    region_q_axis, region_q_quadrant,
};

/// Which closed form produced a [`BoundResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Largest blockage-free disk bound with the block-count approximation.
    Mbfc,
    /// Largest blockage-free disk probability with exact site counts.
    MbfcSemiExact,
    /// Continuum (dense-site) version of the disk bound.
    MbfcDense,
    /// Dense-site bound with `ln(1/(1 - p_b)) ≈ p_b`.
    MbfcDenseSmallPb,
    /// Eight-region bound.
    MultiRegion,
    /// Dense-site eight-region bound.
    MultiRegionDense,
    /// Disk bound for one HetNet tier.
    TierMbfc,
    /// Dense-site disk bound for one HetNet tier.
    TierMbfcDense,
    /// Best single tier.
    HetnetMax,
    /// Best single tier, dense-site forms.
    HetnetMaxDense,
    /// Best single tier, eight-region forms.
    HetnetMultiRegion,
    /// Tiers treated as independent.
    HetnetIndependent,
    /// Tiers treated as independent, eight-region forms per tier.
    HetnetIndependentTightened,
}

/// A bound value with the addends or per-tier values it was built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: f64,
    pub kind: BoundKind,
    pub terms: Vec<f64>,
    /// Tier that attains a max-type bound, or the tier a per-tier bound is for.
    pub tier: Option<usize>,
}

// Rounding slack tolerated outside [0, 1] before a value is an error.
const CLAMP_SLACK: f64 = 1e-12;

pub(crate) fn checked_probability(what: &'static str, value: f64) -> Result<f64> {
    if !(-CLAMP_SLACK..=1.0 + CLAMP_SLACK).contains(&value) {
        return Err(Error::NumericViolation { what, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

pub(crate) fn finish(kind: BoundKind, value: f64, terms: Vec<f64>, tier: Option<usize>) -> Result<BoundResult> {
    let what = match kind {
        BoundKind::Mbfc => "mbfc bound",
        BoundKind::MbfcSemiExact => "semi-exact mbfc",
        BoundKind::MbfcDense | BoundKind::MbfcDenseSmallPb => "dense mbfc bound",
        BoundKind::MultiRegion => "multi-region bound",
        BoundKind::MultiRegionDense => "dense multi-region bound",
        BoundKind::TierMbfc | BoundKind::TierMbfcDense => "tier bound",
        _ => "hetnet bound",
    };
    let value = checked_probability(what, value)?;
    Ok(BoundResult { value, kind, terms, tier })
}

/// `v^e` with `0^0 = 1`.
pub(crate) fn void_pow(v: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if v == 0.0 {
        0.0
    } else {
        (e * v.ln()).exp()
    }
}

/// `1 - v^e` with `0^0 = 1`.
pub(crate) fn one_minus_void_pow(v: f64, e: f64) -> f64 {
    if e == 0.0 {
        0.0
    } else if v == 0.0 {
        1.0
    } else {
        -(e * v.ln()).exp_m1()
    }
}

/// `1 - e^{-x}`.
pub(crate) fn one_minus_exp_neg(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// `1 - (1 - x)^k`, accurate for small `x`.
pub(crate) fn union_of_independent(x: f64, k: f64) -> f64 {
    if x >= 1.0 {
        1.0
    } else {
        -(k * (-x).ln_1p()).exp_m1()
    }
}

/// `max(⌈x⌉, 0)`.
pub(crate) fn ceil_plus(x: f64) -> u64 {
    x.ceil().max(0.0) as u64
}

/// `max(⌊x⌋, 0)`.
pub(crate) fn floor_plus(x: f64) -> u64 {
    x.floor().max(0.0) as u64
}

/// Number of grid radii `r_n = √s (n + 1/2)` strictly below `r`.
pub(crate) fn grid_radii_below(r: f64, site_area: f64) -> u64 {
    ceil_plus(r / site_area.sqrt() - 0.5)
}
