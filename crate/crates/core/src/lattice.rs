//! Random-lattice building realizations and Poisson base-station fields.
//!
//! The plane is tiled by square sites of area `s`. Site `S(a, b)` is the
//! half-open square `[(a - 1/2)√s, (a + 1/2)√s) x [(b - 1/2)√s, (b + 1/2)√s)`,
//! so its center is the lattice point `(a√s, b√s)`. Only the sites that
//! intersect a finite square [`Window`] are materialized. The site holding
//! the typical user, `S(0, 0)`, is always empty.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{check_nonnegative, check_positive, check_probability, Error, Result};

/// Tolerance on the sum of categorical height probabilities.
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-12;

/// Uniform-height building lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    /// Site area `s` in m².
    pub site_area: f64,
    /// Probability `p_b` that a site holds a building.
    pub occupancy: f64,
}

impl LatticeConfig {
    pub fn new(site_area: f64, occupancy: f64) -> Result<Self> {
        let config = Self { site_area, occupancy };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("site_area", self.site_area)?;
        check_probability("occupancy", self.occupancy)
    }

    /// Side length `√s` of one site.
    pub fn side(&self) -> f64 {
        self.site_area.sqrt()
    }

    /// Site density `1/s`.
    pub fn site_density(&self) -> f64 {
        1.0 / self.site_area
    }

    /// Probability `1 - p_b` that a site is empty.
    pub fn void_probability(&self) -> f64 {
        1.0 - self.occupancy
    }
}

/// K-height building lattice with exclusive marks.
///
/// `height_probs[0]` is the probability of an empty site and
/// `height_probs[k]` the probability of a building of height class `k`,
/// with class 1 the tallest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiHeightConfig {
    pub site_area: f64,
    pub height_probs: Vec<f64>,
}

impl MultiHeightConfig {
    pub fn new(site_area: f64, height_probs: Vec<f64>) -> Result<Self> {
        let config = Self { site_area, height_probs };
        config.validate()?;
        Ok(config)
    }

    /// Two-class lattice equivalent to a uniform lattice with occupancy `p`.
    pub fn from_uniform(config: &LatticeConfig) -> Result<Self> {
        Self::new(config.site_area, vec![1.0 - config.occupancy, config.occupancy])
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("site_area", self.site_area)?;
        if self.height_probs.len() < 2 {
            return Err(Error::Config(
                "height_probs needs an empty class and at least one height".into(),
            ));
        }
        for (k, &p) in self.height_probs.iter().enumerate() {
            check_probability(&format!("height_probs[{k}]"), p)?;
        }
        let total: f64 = self.height_probs.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
            return Err(Error::Config(format!("height_probs sum to {total}, expected 1")));
        }
        Ok(())
    }

    /// Number of building height classes `K`.
    pub fn heights(&self) -> usize {
        self.height_probs.len() - 1
    }

    pub fn side(&self) -> f64 {
        self.site_area.sqrt()
    }

    /// Probability of height class `k` (0 = empty).
    pub fn prob(&self, k: usize) -> f64 {
        self.height_probs[k]
    }
}

/// Square simulation window `[-h, h]²` centered on the typical user.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub half_width: f64,
}

impl Window {
    pub fn new(half_width: f64) -> Result<Self> {
        check_positive("half_width", half_width)?;
        Ok(Self { half_width })
    }

    /// Smallest window satisfying the contract `half_width >= range + √s`.
    pub fn for_range(range: f64, site_area: f64) -> Result<Self> {
        check_nonnegative("range", range)?;
        check_positive("site_area", site_area)?;
        Self::new(range + site_area.sqrt())
    }

    /// True when the window honours `half_width >= range + √s`.
    pub fn covers(&self, range: f64, site_area: f64) -> bool {
        let needed = range + site_area.sqrt();
        self.half_width >= needed * (1.0 - 1e-12)
    }

    pub fn area(&self) -> f64 {
        4.0 * self.half_width * self.half_width
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x.abs() <= self.half_width && p.y.abs() <= self.half_width
    }

    pub(crate) fn require(&self, range: f64, site_area: f64) -> Result<()> {
        if self.covers(range, site_area) {
            Ok(())
        } else {
            Err(Error::WindowTooSmall {
                half_width: self.half_width,
                needed: range + site_area.sqrt(),
            })
        }
    }
}

/// Integer coordinates `(a, b)` of a lattice site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SiteIndex {
    pub a: i64,
    pub b: i64,
}

impl SiteIndex {
    pub const ORIGIN: SiteIndex = SiteIndex { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    /// Chebyshev distance from the origin site, in sites.
    pub fn ring(&self) -> i64 {
        self.a.abs().max(self.b.abs())
    }
}

impl From<(i64, i64)> for SiteIndex {
    fn from((a, b): (i64, i64)) -> Self {
        Self { a, b }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(&self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Sampled building marks of every site intersecting a window.
///
/// Mark 0 is an empty site; marks `1..=levels` are building height classes
/// (a uniform-height lattice has `levels == 1`). Realizations are immutable
/// once built.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeRealization {
    site_area: f64,
    side: f64,
    window: Window,
    extent: i64,
    levels: u8,
    marks: Vec<u8>,
}

impl LatticeRealization {
    /// Builds a realization from an explicit marking function. The origin
    /// site is forced empty whatever `mark` returns.
    pub fn from_fn(
        site_area: f64,
        window: Window,
        levels: u8,
        mut mark: impl FnMut(SiteIndex) -> u8,
    ) -> Result<Self> {
        check_positive("site_area", site_area)?;
        if levels == 0 {
            return Err(Error::Config("a lattice needs at least one height level".into()));
        }
        let mut lattice = Self::blank(site_area, window, levels);
        let extent = lattice.extent;
        for b in -extent..=extent {
            for a in -extent..=extent {
                let m = mark(SiteIndex::new(a, b));
                if m > levels {
                    return Err(Error::Config(format!("mark {m} exceeds {levels} levels")));
                }
                let slot = lattice.slot(SiteIndex::new(a, b));
                lattice.marks[slot] = m;
            }
        }
        let origin = lattice.slot(SiteIndex::ORIGIN);
        lattice.marks[origin] = 0;
        Ok(lattice)
    }

    /// Realization with every site empty.
    pub fn vacant(site_area: f64, window: Window) -> Result<Self> {
        Self::from_fn(site_area, window, 1, |_| 0)
    }

    /// Realization whose only buildings are `occupied` (marked 1).
    pub fn with_buildings(
        site_area: f64,
        window: Window,
        occupied: impl IntoIterator<Item = SiteIndex>,
    ) -> Result<Self> {
        let set: std::collections::HashSet<SiteIndex> = occupied.into_iter().collect();
        Self::from_fn(site_area, window, 1, |site| u8::from(set.contains(&site)))
    }

    fn blank(site_area: f64, window: Window, levels: u8) -> Self {
        let side = site_area.sqrt();
        let extent = (window.half_width / side + 0.5).floor() as i64;
        let width = (2 * extent + 1) as usize;
        Self {
            site_area,
            side,
            window,
            extent,
            levels,
            marks: vec![0; width * width],
        }
    }

    fn slot(&self, site: SiteIndex) -> usize {
        let width = 2 * self.extent + 1;
        ((site.b + self.extent) * width + site.a + self.extent) as usize
    }

    pub fn site_area(&self) -> f64 {
        self.site_area
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Largest `|a|` (and `|b|`) of a materialized site.
    pub fn extent(&self) -> i64 {
        self.extent
    }

    /// Number of building height classes.
    pub fn levels(&self) -> u8 {
        self.levels
    }

    pub fn in_window(&self, site: SiteIndex) -> bool {
        site.a.abs() <= self.extent && site.b.abs() <= self.extent
    }

    /// Mark of `site`, or `None` outside the materialized window.
    pub fn mark(&self, site: SiteIndex) -> Option<u8> {
        self.in_window(site).then(|| self.marks[self.slot(site)])
    }

    pub fn site_count(&self) -> usize {
        self.marks.len()
    }

    /// All materialized sites with their marks, row by row.
    pub fn sites(&self) -> impl Iterator<Item = (SiteIndex, u8)> + '_ {
        let extent = self.extent;
        (-extent..=extent)
            .flat_map(move |b| (-extent..=extent).map(move |a| SiteIndex::new(a, b)))
            .map(move |site| (site, self.marks[self.slot(site)]))
    }

    /// Sites that block signals of the tier with blocking level `k`.
    pub fn blocking(&self, k: u8) -> Result<BlockingView<'_>> {
        blocking_sites_for_tier(self, k as usize)
    }

    /// All occupied sites, whatever their height.
    pub fn occupied(&self) -> BlockingView<'_> {
        BlockingView {
            lattice: self,
            max_level: self.levels,
        }
    }
}

/// The set of sites whose mark lies in `1..=max_level`.
#[derive(Debug, Clone, Copy)]
pub struct BlockingView<'a> {
    lattice: &'a LatticeRealization,
    max_level: u8,
}

impl<'a> BlockingView<'a> {
    pub fn lattice(&self) -> &'a LatticeRealization {
        self.lattice
    }

    pub fn max_level(&self) -> u8 {
        self.max_level
    }

    /// Membership test; sites outside the window are never blocking.
    pub fn contains(&self, site: SiteIndex) -> bool {
        matches!(self.lattice.mark(site), Some(m) if m != 0 && m <= self.max_level)
    }

    pub fn iter(&self) -> impl Iterator<Item = SiteIndex> + 'a {
        let max_level = self.max_level;
        self.lattice
            .sites()
            .filter(move |&(_, m)| m != 0 && m <= max_level)
            .map(|(site, _)| site)
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.iter().next().is_none()
    }
}

/// Sites able to block tier `k`: marks `1..=k`, nondecreasing in `k`.
pub fn blocking_sites_for_tier(lattice: &LatticeRealization, k: usize) -> Result<BlockingView<'_>> {
    let max = lattice.levels as usize;
    if k == 0 || k > max {
        return Err(Error::TierOutOfRange { k, max });
    }
    Ok(BlockingView {
        lattice,
        max_level: k as u8,
    })
}

/// Draws one mark per site: mark `k` when `u` falls in the `k`-th slot of
/// `cumulative`, else 0. One uniform is consumed per site, origin included,
/// so that a two-class categorical lattice reproduces the Bernoulli
/// sampler draw for draw.
fn sample_marks<R: RngCore + ?Sized>(
    site_area: f64,
    window: Window,
    cumulative: &[f64],
    rng: &mut R,
) -> LatticeRealization {
    let mut lattice = LatticeRealization::blank(site_area, window, cumulative.len() as u8);
    for slot in lattice.marks.iter_mut() {
        let u: f64 = rng.random();
        *slot = cumulative
            .iter()
            .position(|&c| u < c)
            .map_or(0, |k| k as u8 + 1);
    }
    let origin = lattice.slot(SiteIndex::ORIGIN);
    lattice.marks[origin] = 0;
    lattice
}

pub fn sample_uniform_lattice<R: RngCore + ?Sized>(
    config: &LatticeConfig,
    window: &Window,
    rng: &mut R,
) -> Result<LatticeRealization> {
    config.validate()?;
    Ok(sample_marks(config.site_area, *window, &[config.occupancy], rng))
}

pub fn sample_multiheight_lattice<R: RngCore + ?Sized>(
    config: &MultiHeightConfig,
    window: &Window,
    rng: &mut R,
) -> Result<LatticeRealization> {
    config.validate()?;
    let cumulative: Vec<f64> = config.height_probs[1..]
        .iter()
        .scan(0.0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    Ok(sample_marks(config.site_area, *window, &cumulative, rng))
}

/// Base-station locations of one Poisson realization.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    pub points: Vec<Point>,
    pub density: f64,
    pub window: Window,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Homogeneous PPP of `density` (per m²) restricted to the window.
pub fn sample_ppp<R: RngCore + ?Sized>(density: f64, window: &Window, rng: &mut R) -> Result<PointSet> {
    check_nonnegative("density", density)?;
    let mean = density * window.area();
    let count = if mean > 0.0 {
        let poisson = Poisson::new(mean).map_err(|e| Error::Config(format!("density: {e}")))?;
        poisson.sample(rng) as usize
    } else {
        0
    };
    let h = window.half_width;
    let points = (0..count)
        .map(|_| Point::new(rng.random_range(-h..h), rng.random_range(-h..h)))
        .collect();
    Ok(PointSet {
        points,
        density,
        window: *window,
    })
}

/// Source of per-trial random substreams.
///
/// Trial `i` always reads ChaCha8 stream `i` under key `master_seed`, so a
/// trial's draws do not depend on which worker runs it or in what order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngStream {
    pub master_seed: u64,
}

impl RngStream {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }

    pub fn substream(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(trial);
        rng
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(h: f64) -> Window {
        Window::new(h).unwrap()
    }

    #[test]
    fn empty_lattice_when_probability_zero() {
        let config = LatticeConfig::new(30.0, 0.0).unwrap();
        let lat = sample_uniform_lattice(&config, &window(80.0), &mut RngStream::new(1).substream(0)).unwrap();
        assert!(lat.occupied().is_empty());
    }

    #[test]
    fn full_lattice_except_origin() {
        let config = LatticeConfig::new(30.0, 1.0).unwrap();
        let lat = sample_uniform_lattice(&config, &window(80.0), &mut RngStream::new(1).substream(0)).unwrap();
        assert_eq!(lat.occupied().len(), lat.site_count() - 1);
        assert_eq!(lat.mark(SiteIndex::ORIGIN), Some(0));
    }

    #[test]
    fn window_extent_covers_intersecting_sites() {
        // side 1: the window [-2.2, 2.2] meets sites -2..=2.
        let lat = LatticeRealization::vacant(1.0, window(2.2)).unwrap();
        assert_eq!(lat.extent(), 2);
        // [-2.6, 2.6] reaches into site 3 = [2.5, 3.5).
        let lat = LatticeRealization::vacant(1.0, window(2.6)).unwrap();
        assert_eq!(lat.extent(), 3);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(LatticeConfig::new(0.0, 0.3).is_err());
        assert!(LatticeConfig::new(30.0, 1.3).is_err());
        assert!(MultiHeightConfig::new(30.0, vec![0.5, 0.4]).is_err());
        assert!(MultiHeightConfig::new(30.0, vec![1.0]).is_err());
        assert!(sample_ppp(-1.0, &window(10.0), &mut RngStream::new(0).substream(0)).is_err());
    }

    #[test]
    fn single_height_mark_threshold() {
        let w = window(5.0);
        let lat = LatticeRealization::from_fn(1.0, w, 3, |s| u8::from(s == SiteIndex::new(2, 0)) * 2).unwrap();
        assert!(lat.blocking(1).unwrap().is_empty());
        assert_eq!(lat.blocking(2).unwrap().iter().collect::<Vec<_>>(), vec![SiteIndex::new(2, 0)]);
        assert_eq!(lat.blocking(3).unwrap().len(), 1);
        assert!(matches!(lat.blocking(4), Err(Error::TierOutOfRange { k: 4, max: 3 })));
        assert!(matches!(lat.blocking(0), Err(Error::TierOutOfRange { .. })));
    }

    #[test]
    fn zero_density_gives_no_points() {
        let set = sample_ppp(0.0, &window(100.0), &mut RngStream::new(3).substream(0)).unwrap();
        assert!(set.is_empty());
    }

    #[test]
    fn substreams_are_reproducible_and_distinct() {
        let stream = RngStream::new(42);
        let a: u64 = stream.substream(7).random();
        let b: u64 = stream.substream(7).random();
        let c: u64 = stream.substream(8).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
