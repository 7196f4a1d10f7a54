use std::collections::BTreeSet;

use mmwave_core::geometry::{
    covered_sites_at_grid_radius, exact_covered_site_count, mbfc_radius_index, region_mbfc_radius_index,
    region_of_site, segment_blocked, site_of_point, Blockers, RegionId, Segment,
};
use mmwave_core::{LatticeConfig, LatticeRealization, Point, RngStream, SiteIndex, Window};
use mmwave_core::lattice::sample_uniform_lattice;
use proptest::prelude::*;
use rand::Rng;

/// Liang-Barsky clip against the closed square, then test whether the
/// clipped piece reaches the open interior through its midpoint.
fn crosses_open_square(p0: (f64, f64), p1: (f64, f64), site: SiteIndex) -> bool {
    let (xmin, xmax) = (site.a as f64 - 0.5, site.a as f64 + 0.5);
    let (ymin, ymax) = (site.b as f64 - 0.5, site.b as f64 + 0.5);
    let (dx, dy) = (p1.0 - p0.0, p1.1 - p0.1);
    let mut t0: f64 = 0.0;
    let mut t1: f64 = 1.0;
    for (p, q) in [(-dx, p0.0 - xmin), (dx, xmax - p0.0), (-dy, p0.1 - ymin), (dy, ymax - p0.1)] {
        if p == 0.0 {
            if q < 0.0 {
                return false;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    if t0 > t1 {
        return false;
    }
    let tm = 0.5 * (t0 + t1);
    let (mx, my) = (p0.0 + tm * dx, p0.1 + tm * dy);
    xmin < mx && mx < xmax && ymin < my && my < ymax
}

fn brute_force_blocked(seg: &Segment, blockers: &BTreeSet<SiteIndex>, site_area: f64) -> bool {
    let side = site_area.sqrt();
    let p0 = (seg.start.x / side, seg.start.y / side);
    let p1 = (seg.end.x / side, seg.end.y / side);
    blockers.iter().any(|&site| crosses_open_square(p0, p1, site))
}

fn random_blockers(rng: &mut impl Rng, reach: i64, p: f64) -> BTreeSet<SiteIndex> {
    let mut set = BTreeSet::new();
    for a in -reach..=reach {
        for b in -reach..=reach {
            // the user's own site is always empty
            if rng.random::<f64>() < p && (a, b) != (0, 0) {
                set.insert(SiteIndex::new(a, b));
            }
        }
    }
    set
}

fn random_coord(rng: &mut impl Rng, reach: f64) -> f64 {
    // half the coordinates land on site edges or centers to exercise grazing
    if rng.random::<bool>() {
        (rng.random_range(-reach..reach) * 2.0).round() / 2.0
    } else {
        rng.random_range(-reach..reach)
    }
}

#[test]
fn segment_test_matches_brute_force_on_fuzzed_segments() {
    let mut rng = RngStream::new(2024).substream(0);
    let mut blocked = 0;
    for i in 0..10_000 {
        let blockers = random_blockers(&mut rng, 7, 0.15);
        let site_area = if i % 2 == 0 { 1.0 } else { 30.0 };
        let side = f64::sqrt(site_area);
        let mut point = || Point::new(random_coord(&mut rng, 6.0) * side, random_coord(&mut rng, 6.0) * side);
        let seg = Segment::new(point(), point());
        let fast = segment_blocked(&seg, &blockers, site_area);
        assert_eq!(fast, brute_force_blocked(&seg, &blockers, site_area), "segment {seg:?}");
        blocked += usize::from(fast);
    }
    // both outcomes must be well represented
    assert!((2_000..8_000).contains(&blocked), "blocked = {blocked}");
}

proptest! {
    #[test]
    fn los_is_symmetric(
        x0 in -8.0f64..8.0, y0 in -8.0f64..8.0, x1 in -8.0f64..8.0, y1 in -8.0f64..8.0,
        seed in any::<u64>(),
    ) {
        let blockers = random_blockers(&mut RngStream::new(seed).substream(0), 9, 0.3);
        let seg = Segment::new(Point::new(x0, y0), Point::new(x1, y1));
        prop_assert_eq!(
            segment_blocked(&seg, &blockers, 2.0),
            segment_blocked(&seg.reversed(), &blockers, 2.0)
        );
    }

    #[test]
    fn points_land_in_their_site(x in -50.0f64..50.0, y in -50.0f64..50.0, s in 0.5f64..40.0) {
        let site = site_of_point(Point::new(x, y), s);
        let side = s.sqrt();
        prop_assert!((site.a as f64 - 0.5) * side <= x + 1e-9 && x < (site.a as f64 + 0.5) * side + 1e-9);
        prop_assert!((site.b as f64 - 0.5) * side <= y + 1e-9 && y < (site.b as f64 + 0.5) * side + 1e-9);
    }
}

/// Sites whose open square meets `B(r)`, by testing each site's nearest point.
fn count_by_nearest_point(r: f64, site_area: f64) -> u64 {
    let rho = r / site_area.sqrt();
    let reach = rho.ceil() as i64 + 1;
    let mut count = 0;
    for a in -reach..=reach {
        for b in -reach..=reach {
            let gap = |c: i64| (c.abs() as f64 - 0.5).max(0.0);
            let (gx, gy) = (gap(a), gap(b));
            if (a, b) == (0, 0) || gx * gx + gy * gy < rho * rho {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn covered_counts_match_direct_enumeration() {
    for i in 1..=200 {
        let rho = i as f64 * 0.037;
        assert_eq!(exact_covered_site_count(rho * 30f64.sqrt(), 30.0), count_by_nearest_point(rho * 30f64.sqrt(), 30.0), "rho = {rho}");
    }
    for n in 0..60 {
        assert_eq!(covered_sites_at_grid_radius(n), count_by_nearest_point(n as f64 + 0.5, 1.0));
    }
}

fn lattice(sites: &BTreeSet<SiteIndex>, extent: f64) -> LatticeRealization {
    LatticeRealization::with_buildings(1.0, Window::new(extent).unwrap(), sites.iter().copied()).unwrap()
}

/// Whether the `(2n+1)²` block around the user holds no building.
fn block_is_clear(blockers: &BTreeSet<SiteIndex>, n: i64) -> bool {
    !blockers.iter().any(|s| s.ring() <= n && *s != SiteIndex::ORIGIN)
}

/// Whether `B(r_n)` misses every building interior, by brute force.
fn disk_is_clear(blockers: &BTreeSet<SiteIndex>, n: u32) -> bool {
    let r = n as f64 + 0.5;
    blockers.iter().all(|s| {
        let gap = |c: i64| (c.abs() as f64 - 0.5).max(0.0);
        let (gx, gy) = (gap(s.a), gap(s.b));
        gx * gx + gy * gy >= r * r
    })
}

#[test]
fn radius_index_agrees_with_block_rule_up_to_two() {
    let mut rng = RngStream::new(77).substream(0);
    let cap = 6;
    for _ in 0..3_000 {
        let p = rng.random_range(0.0..0.25);
        let blockers = random_blockers(&mut rng, 7, p);
        let lat = lattice(&blockers, 7.2);
        let view = lat.occupied();
        let index = mbfc_radius_index(&lat, &view, cap).unwrap().0;
        for n in 0..=2u32 {
            assert_eq!(index >= n, block_is_clear(&blockers, n as i64), "n = {n}, {blockers:?}");
        }
        for n in 0..=cap {
            assert_eq!(index >= n, disk_is_clear(&blockers, n));
            // a clear block always implies a clear disk; from n = 3 on the
            // converse fails because the block corners lie outside the disk
            if block_is_clear(&blockers, n as i64) {
                assert!(index >= n);
            }
        }
    }
}

#[test]
fn block_rule_fails_beyond_two() {
    let blockers: BTreeSet<_> = [SiteIndex::new(3, 3)].into();
    let lat = lattice(&blockers, 7.2);
    assert_eq!(mbfc_radius_index(&lat, &lat.occupied(), 5).unwrap().0, 3);
    assert!(!block_is_clear(&blockers, 3));
}

#[test]
fn regions_partition_the_plane() {
    let mut seen = [0usize; 9];
    for a in -5..=5 {
        for b in -5..=5 {
            seen[region_of_site(SiteIndex::new(a, b)).0 as usize] += 1;
        }
    }
    assert_eq!(seen, [1, 5, 25, 5, 25, 5, 25, 5, 25]);
}

struct Filtered<'a> {
    all: &'a BTreeSet<SiteIndex>,
    region: RegionId,
}

impl Blockers for Filtered<'_> {
    fn blocks(&self, site: SiteIndex) -> bool {
        self.all.contains(&site) && region_of_site(site) == self.region
    }
}

#[test]
fn region_radius_is_the_disk_radius_of_that_region_alone() {
    let mut rng = RngStream::new(5).substream(0);
    let cap = 8;
    for _ in 0..1_000 {
        let blockers = random_blockers(&mut rng, 10, 0.08);
        let lat = lattice(&blockers, 10.2);
        let whole = mbfc_radius_index(&lat, &lat.occupied(), cap).unwrap();
        let mut smallest = cap;
        for id in 1..=8 {
            let region = RegionId(id);
            let filtered = Filtered { all: &blockers, region };
            let direct = mbfc_radius_index(&lat, &filtered, cap).unwrap();
            let by_region = region_mbfc_radius_index(&lat, &lat.occupied(), region, cap).unwrap();
            assert_eq!(direct, by_region);
            assert!(by_region >= whole);
            smallest = smallest.min(by_region.0);
        }
        assert_eq!(smallest, whole.0);
    }
}

#[test]
fn sampled_lattice_occupancy_frequency() {
    let config = LatticeConfig::new(30.0, 0.3).unwrap();
    let window = Window::new(300.0).unwrap();
    let lat = sample_uniform_lattice(&config, &window, &mut RngStream::new(11).substream(0)).unwrap();
    let n = (lat.site_count() - 1) as f64;
    let freq = lat.occupied().len() as f64 / n;
    let sigma = (0.3 * 0.7 / n).sqrt();
    assert!((freq - 0.3).abs() < 4.0 * sigma, "freq = {freq}");
}
