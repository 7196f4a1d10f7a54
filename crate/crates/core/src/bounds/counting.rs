//! Site-count bounds and the distribution of the blockage-free radius index.

use super::{ceil_plus, one_minus_void_pow, void_pow};
use crate::error::{check_probability, Result};
use crate::geometry::covered_sites_at_grid_radius;

fn odd_square(m: u64) -> u64 {
    (2 * m + 1).pow(2)
}

/// Lower and upper bounds `(N⁻, N⁺)` on the number of sites met by `B(r)`:
/// the largest block inscribed in the disk and the smallest block
/// containing it.
pub fn n_bounds(r: f64, site_area: f64) -> (u64, u64) {
    let side = site_area.sqrt();
    let lower = ceil_plus(r / (std::f64::consts::SQRT_2 * side) - 0.5);
    let upper = ceil_plus(r / side - 0.5);
    (odd_square(lower), odd_square(upper))
}

/// Site-count bounds for a user anywhere inside its site; the lower radius
/// shrinks by half a site diagonal and the upper grows by half a side.
pub fn n_bounds_random_user(r: f64, site_area: f64) -> (u64, u64) {
    let side = site_area.sqrt();
    let lower = ceil_plus(r / (std::f64::consts::SQRT_2 * side) - 1.0);
    let upper = ceil_plus(r / side);
    (odd_square(lower), odd_square(upper))
}

/// Area approximation `πr²/s` of the site count, for `r ≫ √s`.
pub fn n_asymptotic(r: f64, site_area: f64) -> f64 {
    std::f64::consts::PI * r * r / site_area
}

/// `P(R ≥ r_n) = (1 - p_b)^{4n(n+1)}`, from the `(2n+1)²` block count.
pub fn mbfc_tail(n: u32, occupancy: f64) -> Result<f64> {
    check_probability("occupancy", occupancy)?;
    let n = n as f64;
    Ok(void_pow(1.0 - occupancy, 4.0 * n * (n + 1.0)))
}

/// `P(R ≥ r_n)` with the exact number of sites met by `B(r_n)`.
pub fn mbfc_tail_exact(n: u32, occupancy: f64) -> Result<f64> {
    check_probability("occupancy", occupancy)?;
    let blocking_sites = covered_sites_at_grid_radius(n) - 1;
    Ok(void_pow(1.0 - occupancy, blocking_sites as f64))
}

/// `P(R = r_n) = (1 - p_b)^{4n(n+1)} (1 - (1 - p_b)^{8(n+1)})`.
pub fn mbfc_pmf(n: u32, occupancy: f64) -> Result<f64> {
    let tail = mbfc_tail(n, occupancy)?;
    Ok(tail * one_minus_void_pow(1.0 - occupancy, 8.0 * (n as f64 + 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_bound_examples() {
        assert_eq!(n_bounds(0.0, 30.0), (1, 1));
        let side = 30f64.sqrt();
        assert_eq!(n_bounds(1.5 * side, 30.0), (9, 9));
        assert_eq!(n_bounds(2.6 * side, 30.0), (25, 49));
        assert_eq!(n_bounds_random_user(0.0, 30.0), (1, 1));
        assert_eq!(n_bounds_random_user(1.5 * side, 30.0).1, 25);
    }

    #[test]
    fn asymptotic_examples() {
        assert_eq!(n_asymptotic(0.0, 30.0), 0.0);
        assert!((n_asymptotic(100.0, 1.0) - std::f64::consts::PI * 1e4).abs() < 1e-9);
    }

    #[test]
    fn pmf_examples() {
        assert!((mbfc_pmf(0, 0.3).unwrap() - (1.0 - 0.7f64.powi(8))).abs() < 1e-15);
        assert!((mbfc_pmf(1, 0.3).unwrap() - (0.7f64.powi(8) - 0.7f64.powi(24))).abs() < 1e-15);
        for n in [0, 1, 5, 100] {
            assert_eq!(mbfc_pmf(n, 0.0).unwrap(), 0.0);
        }
        assert_eq!(mbfc_pmf(0, 1.0).unwrap(), 1.0);
        assert_eq!(mbfc_pmf(1, 1.0).unwrap(), 0.0);
        assert!(mbfc_pmf(0, 1.5).is_err());
    }

    #[test]
    fn exact_tail_matches_block_tail_for_small_n() {
        for n in 0..=2 {
            assert_eq!(mbfc_tail_exact(n, 0.3).unwrap(), mbfc_tail(n, 0.3).unwrap());
        }
        // 45 sites meet B(r_3), fewer than the 49 of the block
        assert!(mbfc_tail_exact(3, 0.3).unwrap() > mbfc_tail(3, 0.3).unwrap());
    }
}
