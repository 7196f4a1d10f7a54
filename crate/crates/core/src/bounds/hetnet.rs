//! K-tier HetNet bounds.
//!
//! Tier `k` sees the lattice as a uniform lattice whose void probability is
//! `q_k`, the product of the void probabilities of the building classes
//! tall enough to block it.

use serde::{Deserialize, Serialize};

use super::single::{blockage_rate, dense_terms, eight_region, mbfc_terms, q_axis, q_quadrant};
use super::{checked_probability, finish, BoundResult, BoundKind};
use crate::error::{Error, Result};
use crate::lattice::MultiHeightConfig;
use crate::scenario::HetNetScenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    Axis,
    Quadrant,
}

fn check_level(heights: &MultiHeightConfig, k: usize) -> Result<()> {
    heights.validate()?;
    if k == 0 || k > heights.heights() {
        return Err(Error::TierOutOfRange { k, max: heights.heights() });
    }
    Ok(())
}

/// `q_k = Π_{ℓ ≤ k} (1 - p^(ℓ))`.
pub fn qk(heights: &MultiHeightConfig, k: usize) -> Result<f64> {
    check_level(heights, k)?;
    Ok(heights.height_probs[1..=k].iter().map(|p| 1.0 - p).product())
}

/// `1 - Σ_{ℓ ≤ k} p^(ℓ)`: the exact probability that a site holds no
/// building of classes `1..=k` under exclusive marks. Never exceeds `q_k`.
pub fn exclusive_void(heights: &MultiHeightConfig, k: usize) -> Result<f64> {
    check_level(heights, k)?;
    Ok((1.0 - heights.height_probs[1..=k].iter().sum::<f64>()).max(0.0))
}

struct TierView {
    void: f64,
    density: f64,
    range: f64,
    site_area: f64,
}

fn tier_view(sc: &HetNetScenario, k: usize) -> Result<TierView> {
    sc.validate()?;
    let tier = sc.tier(k)?;
    Ok(TierView {
        void: qk(&sc.lattice, sc.blocking_level(k))?,
        density: tier.density,
        range: tier.range,
        site_area: sc.lattice.site_area,
    })
}

/// Disk bound for tier `k` alone.
pub fn tier_eta(sc: &HetNetScenario, k: usize) -> Result<BoundResult> {
    let t = tier_view(sc, k)?;
    let terms = mbfc_terms(t.void, t.density, t.range, t.site_area);
    finish(BoundKind::TierMbfc, terms.iter().sum(), terms, Some(k))
}

/// Dense-site disk bound for tier `k` alone.
pub fn tier_eta_dense(sc: &HetNetScenario, k: usize) -> Result<BoundResult> {
    let t = tier_view(sc, k)?;
    let l = blockage_rate(t.void, t.site_area, false)?;
    let terms = dense_terms(l, t.density, t.range, t.site_area);
    finish(BoundKind::TierMbfcDense, terms[0] + terms[1], terms.to_vec(), Some(k))
}

/// Lower bound for one strip or quadrant region of tier `k`.
pub fn hetnet_eta_region(sc: &HetNetScenario, k: usize, kind: RegionKind) -> Result<f64> {
    let t = tier_view(sc, k)?;
    let value = match kind {
        RegionKind::Axis => q_axis(t.void, t.density, t.range, t.site_area),
        RegionKind::Quadrant => q_quadrant(t.void, t.density, t.range, t.site_area),
    };
    checked_probability("tier region bound", value)
}

fn tier_multiregion(sc: &HetNetScenario, k: usize) -> Result<f64> {
    let qa = hetnet_eta_region(sc, k, RegionKind::Axis)?;
    let qq = hetnet_eta_region(sc, k, RegionKind::Quadrant)?;
    Ok(eight_region(qa, qq))
}

fn per_tier(sc: &HetNetScenario, f: impl Fn(usize) -> Result<f64>) -> Result<Vec<f64>> {
    (1..=sc.tier_count()).map(f).collect()
}

/// Largest value and its 1-based position (first one on ties).
fn argmax(values: &[f64]) -> (f64, usize) {
    values
        .iter()
        .enumerate()
        .fold((f64::NEG_INFINITY, 0), |(best, at), (i, &x)| if x > best { (x, i + 1) } else { (best, at) })
}

/// Best single-tier bound; `terms` holds every tier's value and `tier` the
/// tier attaining the maximum.
pub fn hetnet_lb_max(sc: &HetNetScenario, dense: bool) -> Result<BoundResult> {
    let etas = per_tier(sc, |k| {
        let eta = if dense { tier_eta_dense(sc, k) } else { tier_eta(sc, k) };
        eta.map(|b| b.value)
    })?;
    let (value, tier) = argmax(&etas);
    let id = if dense { BoundKind::HetnetMaxDense } else { BoundKind::HetnetMax };
    finish(id, value, etas, Some(tier))
}

/// Best single-tier eight-region bound.
pub fn hetnet_lb_multiregion(sc: &HetNetScenario) -> Result<BoundResult> {
    let etas = per_tier(sc, |k| tier_multiregion(sc, k))?;
    let (value, tier) = argmax(&etas);
    finish(BoundKind::HetnetMultiRegion, value, etas, Some(tier))
}

/// Bound that treats the tiers' connectivity events as independent:
/// `1 - Π_k (1 - η_k)`, with eight-region per-tier values when `tightened`.
pub fn hetnet_lb_independent(sc: &HetNetScenario, tightened: bool) -> Result<BoundResult> {
    let etas = per_tier(sc, |k| {
        if tightened {
            tier_multiregion(sc, k)
        } else {
            tier_eta(sc, k).map(|b| b.value)
        }
    })?;
    let log_miss: f64 = etas.iter().map(|&x| (-x).ln_1p()).sum();
    let id = if tightened { BoundKind::HetnetIndependentTightened } else { BoundKind::HetnetIndependent };
    finish(id, -log_miss.exp_m1(), etas, None)
}

/// Sum of the per-tier disk bounds, the small-probability approximation of
/// the independent-tier bound. Not itself a probability bound.
pub fn linear_tier_sum(sc: &HetNetScenario) -> Result<f64> {
    Ok(per_tier(sc, |k| tier_eta(sc, k).map(|b| b.value))?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{pc_lb_mbfc, pc_lb_mbfc_dense, pc_lb_multiregion};
    use crate::lattice::LatticeConfig;
    use crate::scenario::{SingleTierScenario, Tier};

    fn defaults() -> HetNetScenario {
        let l1 = 4e-5;
        HetNetScenario::new(
            MultiHeightConfig::new(30.0, vec![0.4, 0.1, 0.2, 0.3]).unwrap(),
            vec![
                Tier { density: l1, range: 150.0 },
                Tier { density: 5.0 * l1, range: 90.0 },
                Tier { density: 10.0 * l1, range: 50.0 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn qk_examples() {
        let h = defaults().lattice;
        assert!((qk(&h, 2).unwrap() - 0.72).abs() < 1e-15);
        assert!((exclusive_void(&h, 2).unwrap() - 0.7).abs() < 1e-15);
        assert!(qk(&h, 4).is_err());
        let clear = MultiHeightConfig::new(30.0, vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(qk(&clear, 2).unwrap(), 1.0);
        let small = MultiHeightConfig::new(30.0, vec![0.985, 0.01, 0.005]).unwrap();
        assert!((qk(&small, 2).unwrap() - exclusive_void(&small, 2).unwrap()).abs() < 1e-4);
    }

    #[test]
    fn single_tier_reduction() {
        let single = SingleTierScenario::new(LatticeConfig::new(30.0, 0.3).unwrap(), 6e-5, 150.0).unwrap();
        let het = single.as_hetnet().unwrap();
        assert_eq!(hetnet_lb_max(&het, false).unwrap().value, pc_lb_mbfc(&single).unwrap().value);
        assert_eq!(hetnet_lb_max(&het, true).unwrap().value, pc_lb_mbfc_dense(&single, false).unwrap().value);
        assert_eq!(hetnet_lb_multiregion(&het).unwrap().value, pc_lb_multiregion(&single).unwrap().value);
        assert!((hetnet_lb_independent(&het, false).unwrap().value - pc_lb_mbfc(&single).unwrap().value).abs() < 1e-15);
    }

    #[test]
    fn max_reports_its_tier() {
        let sc = defaults();
        let max = hetnet_lb_max(&sc, false).unwrap();
        let tier = max.tier.unwrap();
        assert_eq!(max.value, tier_eta(&sc, tier).unwrap().value);
        assert!(max.terms.iter().all(|&x| x <= max.value));
        let indep = hetnet_lb_independent(&sc, false).unwrap();
        assert!(indep.value >= max.value);
        assert!(hetnet_lb_independent(&sc, true).unwrap().value >= hetnet_lb_multiregion(&sc).unwrap().value);
    }

    #[test]
    fn tier_limits() {
        let mut sc = defaults();
        sc.tiers[1].density = 0.0;
        assert_eq!(tier_eta(&sc, 2).unwrap().value, 0.0);
        assert_eq!(tier_eta_dense(&sc, 2).unwrap().value, 0.0);
        sc.tiers[2].range = 0.0;
        assert_eq!(tier_eta(&sc, 3).unwrap().value, 0.0);
        assert_eq!(hetnet_eta_region(&sc, 3, RegionKind::Quadrant).unwrap(), 0.0);
        assert!(tier_eta(&sc, 4).is_err());
    }

    #[test]
    fn more_tiers_than_heights_reuse_the_lowest_class() {
        let mut sc = defaults();
        sc.tiers.push(Tier { density: 6e-4, range: 40.0 });
        let t4 = tier_eta(&sc, 4).unwrap();
        let mut as_t3 = sc.clone();
        as_t3.tiers[2] = sc.tiers[3];
        assert_eq!(t4.value, tier_eta(&as_t3, 3).unwrap().value);
    }
}
