//! Exact lattice geometry: line-of-sight tests, disk/site coverage counts,
//! blockage-free disk radii and the eight-region partition of the plane.
//!
//! A building blocks a segment or a disk only through positive-area
//! overlap with the open interior of its square; grazing an edge or a
//! corner never blocks. Internally everything is measured in site units
//! (coordinates divided by `√s`), where site `(a, b)` spans
//! `[a - 1/2, a + 1/2) x [b - 1/2, b + 1/2)`.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::lattice::{BlockingView, LatticeRealization, Point, PointSet, SiteIndex};

/// A set of blocking sites.
pub trait Blockers {
    fn blocks(&self, site: SiteIndex) -> bool;
}

impl Blockers for BlockingView<'_> {
    fn blocks(&self, site: SiteIndex) -> bool {
        self.contains(site)
    }
}

impl Blockers for HashSet<SiteIndex> {
    fn blocks(&self, site: SiteIndex) -> bool {
        self.contains(&site)
    }
}

impl Blockers for BTreeSet<SiteIndex> {
    fn blocks(&self, site: SiteIndex) -> bool {
        self.contains(&site)
    }
}

impl<B: Blockers + ?Sized> Blockers for &B {
    fn blocks(&self, site: SiteIndex) -> bool {
        (**self).blocks(site)
    }
}

/// Closed disk `B(r)` centered on the typical user at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub radius: f64,
}

/// Index `n` of a grid radius `r_n = √s (n + 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MbfcIndex(pub u32);

impl MbfcIndex {
    pub fn radius(&self, site_area: f64) -> f64 {
        grid_radius(self.0, site_area)
    }
}

/// `r_n = √s (n + 1/2)`.
pub fn grid_radius(n: u32, site_area: f64) -> f64 {
    site_area.sqrt() * (n as f64 + 0.5)
}

/// One cell of the partition of the plane around the user.
///
/// 0 is the user's own site. Odd ids are one-site-wide axis strips
/// (1: `(a, 0), a >= 1`; 3: `(0, b), b >= 1`; 5: `(a, 0), a <= -1`;
/// 7: `(0, b), b <= -1`). Even ids are the open quadrants
/// (2: `(+, +)`, 4: `(-, +)`, 6: `(-, -)`, 8: `(+, -)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegionId(pub u8);

impl RegionId {
    pub const CENTER: RegionId = RegionId(0);

    pub fn is_axis(&self) -> bool {
        self.0 % 2 == 1
    }

    pub fn is_quadrant(&self) -> bool {
        self.0 != 0 && self.0.is_multiple_of(2)
    }

    /// Unit direction signs `(sa, sb)` of the region.
    fn signs(&self) -> (i64, i64) {
        match self.0 {
            1 => (1, 0),
            2 => (1, 1),
            3 => (0, 1),
            4 => (-1, 1),
            5 => (-1, 0),
            6 => (-1, -1),
            7 => (0, -1),
            8 => (1, -1),
            _ => (0, 0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Self {
        Self { start, end }
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.end, self.start)
    }
}

/// Site whose half-open square contains `p`.
pub fn site_of_point(p: Point, site_area: f64) -> SiteIndex {
    let side = site_area.sqrt();
    SiteIndex::new((p.x / side + 0.5).floor() as i64, (p.y / side + 0.5).floor() as i64)
}

/// Parameter interval of `p + t d` strictly inside `(lo, hi)`.
fn open_slab(p: f64, d: f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    if d == 0.0 {
        (lo < p && p < hi).then_some((f64::NEG_INFINITY, f64::INFINITY))
    } else {
        let t1 = (lo - p) / d;
        let t2 = (hi - p) / d;
        Some((t1.min(t2), t1.max(t2)))
    }
}

/// Whether the segment `p0 -> p1` (site units) meets the open square of `site`.
fn crosses_open_site(p0: (f64, f64), p1: (f64, f64), site: SiteIndex) -> bool {
    let (a, b) = (site.a as f64, site.b as f64);
    let (dx, dy) = (p1.0 - p0.0, p1.1 - p0.1);
    let Some((lx, ux)) = open_slab(p0.0, dx, a - 0.5, a + 0.5) else {
        return false;
    };
    let Some((ly, uy)) = open_slab(p0.1, dy, b - 0.5, b + 0.5) else {
        return false;
    };
    let lo = lx.max(ly);
    let hi = ux.min(uy);
    lo < hi && lo < 1.0 && hi > 0.0
}

// Slack when enumerating candidate cells; the exact test filters them.
const CELL_SLACK: f64 = 1e-9;

fn cell_of(u: f64) -> i64 {
    (u + 0.5).floor() as i64
}

/// Calls `visit` on every site whose closed square the segment may touch,
/// column by column, stopping early when `visit` returns true.
fn walk_cells(p0: (f64, f64), p1: (f64, f64), mut visit: impl FnMut(SiteIndex) -> bool) -> bool {
    let (left, right) = if p0.0 <= p1.0 { (p0, p1) } else { (p1, p0) };
    let first = cell_of(left.0 - CELL_SLACK);
    let last = cell_of(right.0 + CELL_SLACK);
    let dx = right.0 - left.0;
    for col in first..=last {
        let (ya, yb) = if dx == 0.0 {
            (left.1, right.1)
        } else {
            let xa = (col as f64 - 0.5).max(left.0);
            let xb = (col as f64 + 0.5).min(right.0);
            let slope = (right.1 - left.1) / dx;
            (left.1 + slope * (xa - left.0), left.1 + slope * (xb - left.0))
        };
        let (ylo, yhi) = if ya <= yb { (ya, yb) } else { (yb, ya) };
        for row in cell_of(ylo - CELL_SLACK)..=cell_of(yhi + CELL_SLACK) {
            if visit(SiteIndex::new(col, row)) {
                return true;
            }
        }
    }
    false
}

/// True iff the segment crosses the open interior of some blocking site.
///
/// Only the cells along the segment are examined, so the cost grows with
/// the segment length in sites and not with the number of blockers.
pub fn segment_blocked(seg: &Segment, blocking: &impl Blockers, site_area: f64) -> bool {
    let side = site_area.sqrt();
    let p0 = (seg.start.x / side, seg.start.y / side);
    let p1 = (seg.end.x / side, seg.end.y / side);
    walk_cells(p0, p1, |site| blocking.blocks(site) && crosses_open_site(p0, p1, site))
}

/// Twice the distance components from the origin to the nearest point of
/// `site`, `(max(2|a| - 1, 0), max(2|b| - 1, 0))`, kept in integers.
fn doubled_gap(site: SiteIndex) -> (u64, u64) {
    let gap = |c: i64| (2 * c.unsigned_abs()).saturating_sub(1);
    (gap(site.a), gap(site.b))
}

fn doubled_gap_sq(site: SiteIndex) -> u64 {
    let (dx, dy) = doubled_gap(site);
    dx * dx + dy * dy
}

/// Largest `n` such that the open interior of `site` misses `B(r_n)`.
fn free_index_limit(site: SiteIndex) -> u32 {
    let root = doubled_gap_sq(site).isqrt();
    // (2n + 1)^2 <= gap^2; non-origin sites have root >= 1.
    (root.saturating_sub(1) / 2) as u32
}

/// Number of sites whose open square meets the closed disk `B(r)`.
///
/// Brute-force column count; the oracle for the analytic site-count bounds.
pub fn exact_covered_site_count(r: f64, site_area: f64) -> u64 {
    let rho = r / site_area.sqrt();
    let limit = 4.0 * rho * rho; // (2 rho)^2 in doubled units
    let reach = (rho + 0.5).floor() as i64 + 1;
    let mut count = 0;
    for a in -reach..=reach {
        let (dx, _) = doubled_gap(SiteIndex::new(a, 0));
        let rem = limit - (dx * dx) as f64;
        if rem <= 0.0 {
            // the origin lies inside its own site even when r = 0
            count += u64::from(a == 0);
            continue;
        }
        // b = 0, plus the largest t >= 1 with (2t - 1)^2 < rem on each side.
        let mut t = ((rem.sqrt() + 1.0) / 2.0).floor() as i64;
        while t > 0 && ((2 * t - 1) as f64).powi(2) >= rem {
            t -= 1;
        }
        while ((2 * t + 1) as f64).powi(2) < rem {
            t += 1;
        }
        count += 1 + 2 * t as u64;
    }
    count
}

/// Exact `N(r_n)`: sites whose open square meets `B(r_n)`, in integers.
pub fn covered_sites_at_grid_radius(n: u32) -> u64 {
    let limit = (2 * n as u64 + 1).pow(2);
    let mut count = 0;
    for a in -(n as i64)..=(n as i64) {
        let (dx, _) = doubled_gap(SiteIndex::new(a, 0));
        let rem = limit - dx * dx;
        // (2t - 1)^2 < rem  <=>  2t - 1 <= isqrt(rem - 1)
        let t = (rem - 1).isqrt().div_ceil(2);
        count += 1 + 2 * t;
    }
    count
}

/// The region containing `site`.
pub fn region_of_site(site: SiteIndex) -> RegionId {
    use std::cmp::Ordering::*;
    let id = match (site.a.cmp(&0), site.b.cmp(&0)) {
        (Equal, Equal) => 0,
        (Greater, Equal) => 1,
        (Equal, Greater) => 3,
        (Less, Equal) => 5,
        (Equal, Less) => 7,
        (Greater, Greater) => 2,
        (Less, Greater) => 4,
        (Less, Less) => 6,
        (Greater, Less) => 8,
    };
    RegionId(id)
}

fn check_cap(lattice: &LatticeRealization, cap_n: u32) -> Result<()> {
    if cap_n as i64 > lattice.extent() {
        return Err(Error::WindowTooSmall {
            half_width: lattice.window().half_width,
            needed: grid_radius(cap_n, lattice.site_area()),
        });
    }
    Ok(())
}

/// Smallest free-index limit over blocking sites on rings `1..=cap`,
/// scanning outward and stopping once no farther ring can lower it.
fn scan_rings(cap_n: u32, mut ring_sites: impl FnMut(i64, &mut dyn FnMut(SiteIndex))) -> u32 {
    let mut best = cap_n;
    for k in 1..=cap_n as i64 {
        // every site on ring k has limit >= k - 1
        if (best as i64) < k {
            break;
        }
        ring_sites(k, &mut |site| best = best.min(free_index_limit(site)));
    }
    best
}

/// Index of the largest blockage-free grid disk: the largest `n <= cap_n`
/// whose disk `B(r_n)` misses the interior of every blocking site.
pub fn mbfc_radius_index(
    lattice: &LatticeRealization,
    blocking: &impl Blockers,
    cap_n: u32,
) -> Result<MbfcIndex> {
    check_cap(lattice, cap_n)?;
    let n = scan_rings(cap_n, |k, visit| {
        for a in -k..=k {
            for site in [SiteIndex::new(a, k), SiteIndex::new(a, -k)] {
                if blocking.blocks(site) {
                    visit(site);
                }
            }
        }
        for b in -k + 1..k {
            for site in [SiteIndex::new(k, b), SiteIndex::new(-k, b)] {
                if blocking.blocks(site) {
                    visit(site);
                }
            }
        }
    });
    Ok(MbfcIndex(n))
}

/// Largest `n <= cap_n` whose disk `B(r_n)` misses the interior of every
/// blocking site inside `region`.
///
/// Strip sites are touched in order of distance, so the strip radius is the
/// free prefix length. Quadrant sites are touched when their nearest corner
/// lies strictly inside the disk; this is evaluated exactly per site.
pub fn region_mbfc_radius_index(
    lattice: &LatticeRealization,
    blocking: &impl Blockers,
    region: RegionId,
    cap_n: u32,
) -> Result<MbfcIndex> {
    if region.0 == 0 || region.0 > 8 {
        return Err(Error::InvalidRegion(region.0));
    }
    check_cap(lattice, cap_n)?;
    let (sa, sb) = region.signs();
    let n = scan_rings(cap_n, |k, visit| {
        if region.is_axis() {
            let site = SiteIndex::new(sa * k, sb * k);
            if blocking.blocks(site) {
                visit(site);
            }
        } else {
            for j in 1..=k {
                let along_a = SiteIndex::new(sa * k, sb * j);
                let along_b = SiteIndex::new(sa * j, sb * k);
                if blocking.blocks(along_a) {
                    visit(along_a);
                }
                if j < k && blocking.blocks(along_b) {
                    visit(along_b);
                }
            }
        }
    });
    Ok(MbfcIndex(n))
}

/// Whether some station within `range` of `user` has line of sight to it.
pub fn has_los_bs_from(
    lattice: &LatticeRealization,
    blocking: &impl Blockers,
    stations: &PointSet,
    user: Point,
    range: f64,
) -> Result<bool> {
    let reach = range + user.x.abs().max(user.y.abs());
    lattice.window().require(reach, lattice.site_area())?;
    let s = lattice.site_area();
    Ok(stations.points.iter().any(|&y| {
        user.distance(y) <= range && !segment_blocked(&Segment::new(user, y), blocking, s)
    }))
}

/// Whether some station within `range` of the origin has line of sight to it.
pub fn has_los_bs(
    lattice: &LatticeRealization,
    blocking: &impl Blockers,
    stations: &PointSet,
    range: f64,
) -> Result<bool> {
    has_los_bs_from(lattice, blocking, stations, Point::ORIGIN, range)
}
