//! Single-tier connectivity bounds.

use std::f64::consts::PI;

use super::{
    finish, floor_plus, grid_radii_below, n_bounds, one_minus_exp_neg, one_minus_void_pow,
    union_of_independent, void_pow, BoundResult, BoundKind,
};
use crate::error::{Error, Result};
use crate::geometry::covered_sites_at_grid_radius;
use crate::scenario::SingleTierScenario;

/// Disk bound for void probability `v`, density `lambda` and range `r`.
/// Returns the addends: the `R ≥ r` term followed by one term per grid
/// radius `r_n < r`.
pub(super) fn mbfc_terms(v: f64, lambda: f64, r: f64, s: f64) -> Vec<f64> {
    let (_, n_plus) = n_bounds(r, s);
    let mut terms = vec![one_minus_exp_neg(PI * lambda * r * r) * void_pow(v, (n_plus - 1) as f64)];
    for n in 0..grid_radii_below(r, s) {
        let rn2 = s * (n as f64 + 0.5).powi(2);
        let nf = n as f64;
        terms.push(
            one_minus_exp_neg(PI * lambda * rn2)
                * void_pow(v, 4.0 * nf * (nf + 1.0))
                * one_minus_void_pow(v, 8.0 * (nf + 1.0)),
        );
    }
    terms
}

/// Dense-site disk bound with blockage rate `l = λ_s ln(1/v)` per m².
pub(super) fn dense_terms(l: f64, lambda: f64, r: f64, s: f64) -> [f64; 2] {
    let total = lambda + l;
    if total == 0.0 {
        return [0.0, 0.0];
    }
    [
        lambda / total * one_minus_exp_neg(PI * r * r * total),
        l / total * one_minus_exp_neg(PI * lambda * s),
    ]
}

/// Lower bound for one axis strip with void probability `v`.
pub(super) fn q_axis(v: f64, lambda: f64, r: f64, s: f64) -> f64 {
    let u = r / s.sqrt();
    let whole = floor_plus(u - 0.5) as f64;
    let first = one_minus_exp_neg(s * lambda * whole) * void_pow(v, (u - 0.5).ceil().max(0.0));
    let sum: f64 = (0..grid_radii_below(r, s))
        .map(|l| {
            let l = l as f64;
            (1.0 - v) * one_minus_exp_neg(s * lambda * l) * void_pow(v, l)
        })
        .sum();
    first + sum
}

/// Lower bound for one quadrant with void probability `v`.
pub(super) fn q_quadrant(v: f64, lambda: f64, r: f64, s: f64) -> f64 {
    let u = r / s.sqrt();
    let whole = floor_plus(u - 0.5) as f64;
    let top = (u - 0.5).ceil().max(0.0);
    let first = one_minus_exp_neg(0.25 * PI * s * lambda * whole * whole) * void_pow(v, top * top);
    let sum: f64 = (0..grid_radii_below(r, s))
        .map(|l| {
            let l = l as f64;
            one_minus_exp_neg(0.25 * PI * s * lambda * l * l)
                * void_pow(v, l * l)
                * one_minus_void_pow(v, 2.0 * l + 1.0)
        })
        .sum();
    first + sum
}

/// Dense-site per-quadrant probability for blockage rate `l`.
pub(super) fn dense_quadrant(l: f64, lambda: f64, r: f64, s: f64) -> f64 {
    let total = 4.0 * lambda + l;
    if total == 0.0 {
        return 0.0;
    }
    4.0 * lambda / total * one_minus_exp_neg(0.25 * PI * r * r * (l + lambda))
        + l / total * one_minus_exp_neg(0.25 * PI * lambda * s)
}

pub(super) fn eight_region(qa: f64, qq: f64) -> f64 {
    1.0 - ((1.0 - qa) * (1.0 - qq)).powi(4)
}

/// Blockage rate `λ_s ln(1/v)`, or `λ_s (1 - v)` under the small-`p_b`
/// approximation.
pub(super) fn blockage_rate(v: f64, s: f64, small_pb: bool) -> Result<f64> {
    if v <= 0.0 {
        return Err(Error::Domain("every site is blocked, ln(1/(1 - p_b)) diverges".into()));
    }
    let per_site = if small_pb { 1.0 - v } else { -v.ln() };
    Ok(per_site / s)
}

fn validated(sc: &SingleTierScenario) -> Result<(f64, f64, f64, f64)> {
    sc.validate()?;
    Ok((1.0 - sc.occupancy(), sc.bs_density, sc.range, sc.site_area()))
}

/// Lower bound from the largest blockage-free grid disk around the user.
pub fn pc_lb_mbfc(sc: &SingleTierScenario) -> Result<BoundResult> {
    let (v, lambda, r, s) = validated(sc)?;
    let terms = mbfc_terms(v, lambda, r, s);
    finish(BoundKind::Mbfc, terms.iter().sum(), terms, None)
}

/// Probability that a BS lies in `B(min(R, r_b))`, evaluated with the
/// exact number of sites met by each grid disk. This is the exact
/// probability of the simulated disk event, and the disk bound sits below it.
pub fn pc_lb_mbfc_semi_exact(sc: &SingleTierScenario) -> Result<BoundResult> {
    let (v, lambda, r, s) = validated(sc)?;
    let below = grid_radii_below(r, s);
    let void_cover = |x2: f64| one_minus_exp_neg(PI * lambda * x2);
    let tail = |covered: u64| void_pow(v, (covered - 1) as f64);
    let mut terms = Vec::with_capacity(below as usize + 1);
    let mut covered = covered_sites_at_grid_radius(0);
    for n in 0..below {
        let next = covered_sites_at_grid_radius(n as u32 + 1);
        let stop = tail(covered) * one_minus_void_pow(v, (next - covered) as f64);
        terms.push(void_cover(s * (n as f64 + 0.5).powi(2)) * stop);
        covered = next;
    }
    terms.push(void_cover(r * r) * tail(covered));
    finish(BoundKind::MbfcSemiExact, terms.iter().sum(), terms, None)
}

/// Dense-site continuum bound; with `small_pb` the blockage rate uses
/// `ln(1/(1 - p_b)) ≈ p_b`.
pub fn pc_lb_mbfc_dense(sc: &SingleTierScenario, small_pb: bool) -> Result<BoundResult> {
    let (v, lambda, r, s) = validated(sc)?;
    let l = blockage_rate(v, s, small_pb)?;
    let terms = dense_terms(l, lambda, r, s);
    let id = if small_pb { BoundKind::MbfcDenseSmallPb } else { BoundKind::MbfcDense };
    finish(id, terms[0] + terms[1], terms.to_vec(), None)
}

/// Lower bound on the connectivity through one axis strip.
pub fn region_q_axis(sc: &SingleTierScenario) -> Result<f64> {
    let (v, lambda, r, s) = validated(sc)?;
    super::checked_probability("axis strip bound", q_axis(v, lambda, r, s))
}

/// Lower bound on the connectivity through one quadrant.
pub fn region_q_quadrant(sc: &SingleTierScenario) -> Result<f64> {
    let (v, lambda, r, s) = validated(sc)?;
    super::checked_probability("quadrant bound", q_quadrant(v, lambda, r, s))
}

/// Eight-region bound. `terms` holds the per-region values for regions
/// 1 through 8 (strips are odd, quadrants even).
pub fn pc_lb_multiregion(sc: &SingleTierScenario) -> Result<BoundResult> {
    let qa = region_q_axis(sc)?;
    let qq = region_q_quadrant(sc)?;
    let terms = [qa, qq].repeat(4);
    finish(BoundKind::MultiRegion, eight_region(qa, qq), terms, None)
}

/// Dense-site eight-region bound built from four quadrants.
pub fn pc_lb_multiregion_dense(sc: &SingleTierScenario) -> Result<BoundResult> {
    let (v, lambda, r, s) = validated(sc)?;
    let l = blockage_rate(v, s, false)?;
    let quad = dense_quadrant(l, lambda, r, s);
    finish(BoundKind::MultiRegionDense, union_of_independent(quad, 4.0), vec![quad; 4], None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeConfig;

    fn sc(r: f64, lambda: f64, s: f64, p: f64) -> SingleTierScenario {
        SingleTierScenario::new(LatticeConfig::new(s, p).unwrap(), lambda, r).unwrap()
    }

    fn defaults() -> SingleTierScenario {
        sc(150.0, 6e-5, 30.0, 0.3)
    }

    #[test]
    fn mbfc_limits() {
        let free = pc_lb_mbfc(&sc(150.0, 6e-5, 30.0, 0.0)).unwrap().value;
        assert!((free - (1.0 - (-PI * 6e-5 * 22500.0f64).exp())).abs() < 1e-12);
        assert_eq!(pc_lb_mbfc(&sc(150.0, 0.0, 30.0, 0.3)).unwrap().value, 0.0);
        let full = pc_lb_mbfc(&sc(150.0, 6e-5, 30.0, 1.0)).unwrap().value;
        assert!((full - (1.0 - (-PI * 6e-5 * 30.0 / 4.0f64).exp())).abs() < 1e-15);
        assert_eq!(pc_lb_mbfc(&sc(0.0, 6e-5, 30.0, 0.3)).unwrap().value, 0.0);
    }

    #[test]
    fn mbfc_is_continuous_across_grid_radii() {
        let side = 30f64.sqrt();
        for n in 0..5 {
            let rn = side * (n as f64 + 0.5);
            let lo = pc_lb_mbfc(&sc(rn * (1.0 - 1e-12), 6e-3, 30.0, 0.3)).unwrap().value;
            let hi = pc_lb_mbfc(&sc(rn * (1.0 + 1e-12), 6e-3, 30.0, 0.3)).unwrap().value;
            assert!((lo - hi).abs() < 1e-9, "n = {n}: {lo} vs {hi}");
        }
    }

    #[test]
    fn semi_exact_dominates_block_bound() {
        let exact = pc_lb_mbfc_semi_exact(&defaults()).unwrap().value;
        let bound = pc_lb_mbfc(&defaults()).unwrap().value;
        assert!(bound <= exact);
        assert!((exact - bound).abs() < 1e-3);
    }

    #[test]
    fn dense_limits() {
        let tiny = dense_terms(0.0, 6e-5, 150.0, 30.0);
        assert!((tiny[0] - (1.0 - (-PI * 6e-5 * 22500.0f64).exp())).abs() < 1e-15);
        assert_eq!(tiny[1], 0.0);
        assert!(pc_lb_mbfc_dense(&sc(150.0, 6e-5, 1e-6, 0.3), false).unwrap().value < 1e-3);
        assert!(matches!(pc_lb_mbfc_dense(&sc(150.0, 6e-5, 30.0, 1.0), false), Err(Error::Domain(_))));
        assert!(matches!(pc_lb_mbfc_dense(&sc(150.0, 6e-5, 30.0, 1.0), true), Err(Error::Domain(_))));
        assert_eq!(pc_lb_mbfc_dense(&sc(150.0, 0.0, 30.0, 0.0), false).unwrap().value, 0.0);
    }

    #[test]
    fn region_limits() {
        let zero = sc(150.0, 0.0, 30.0, 0.3);
        assert_eq!(region_q_axis(&zero).unwrap(), 0.0);
        assert_eq!(region_q_quadrant(&zero).unwrap(), 0.0);
        assert_eq!(pc_lb_multiregion(&zero).unwrap().value, 0.0);
        // no blockage: only the strip's whole-site area remains
        let qa = region_q_axis(&sc(150.0, 6e-5, 30.0, 0.0)).unwrap();
        let whole = (150.0 / 30f64.sqrt() - 0.5).floor();
        assert!((qa - (1.0 - (-30.0 * 6e-5 * whole).exp())).abs() < 1e-15);
    }

    #[test]
    fn multiregion_dense_limits() {
        let free = pc_lb_multiregion_dense(&sc(150.0, 6e-5, 30.0, 1e-300)).unwrap().value;
        assert!((free - (1.0 - (-PI * 6e-5 * 22500.0f64).exp())).abs() < 1e-12);
        assert_eq!(pc_lb_multiregion_dense(&sc(150.0, 0.0, 30.0, 0.3)).unwrap().value, 0.0);
        assert!(pc_lb_multiregion_dense(&sc(150.0, 6e-5, 30.0, 1.0)).is_err());
    }

    #[test]
    fn multiregion_beats_disk_at_defaults() {
        let disk = pc_lb_mbfc(&defaults()).unwrap().value;
        let multi = pc_lb_multiregion(&defaults()).unwrap();
        assert!(multi.value >= disk);
        assert_eq!(multi.terms.len(), 8);
    }
}
