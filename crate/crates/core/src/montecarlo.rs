//! Seeded Monte Carlo estimation of connectivity events.
//!
//! Each trial draws a fresh building lattice and fresh BS fields from its
//! own ChaCha8 substream, in a fixed order: the lattice (one uniform per
//! site), one Poisson field per tier, then the user's offset inside its
//! site. Several estimators can be evaluated on the same draws, which makes
//! event containment checkable trial by trial. Trials are reduced by
//! integer counting, so results do not depend on the thread schedule.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::bounds::grid_radii_below;
use crate::error::{Error, Result};
use crate::geometry::{
    mbfc_radius_index, region_mbfc_radius_index, region_of_site, segment_blocked, site_of_point, Blockers,
    RegionId, Segment,
};
use crate::lattice::{
    sample_multiheight_lattice, sample_ppp, sample_uniform_lattice, LatticeRealization, Point, PointSet,
    RngStream, Window,
};
use crate::scenario::{HetNetScenario, SingleTierScenario};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scenario {
    SingleTier(SingleTierScenario),
    #[serde(rename = "hetnet")]
    HetNet(HetNetScenario),
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        match self {
            Scenario::SingleTier(sc) => sc.validate(),
            Scenario::HetNet(sc) => sc.validate(),
        }
    }

    pub fn site_area(&self) -> f64 {
        match self {
            Scenario::SingleTier(sc) => sc.site_area(),
            Scenario::HetNet(sc) => sc.lattice.site_area,
        }
    }

    fn tiers(&self) -> Vec<(f64, f64)> {
        match self {
            Scenario::SingleTier(sc) => vec![(sc.bs_density, sc.range)],
            Scenario::HetNet(sc) => sc.tiers.iter().map(|t| (t.density, t.range)).collect(),
        }
    }

    pub fn max_range(&self) -> f64 {
        self.tiers().iter().map(|t| t.1).fold(0.0, f64::max)
    }

    fn is_hetnet(&self) -> bool {
        matches!(self, Scenario::HetNet(_))
    }
}

/// The event whose probability an estimator measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Event {
    /// Some in-range BS has line of sight to the user.
    ExactSingle,
    /// Some BS lies in `B(min(R, r_b))`, `R` the largest blockage-free grid disk.
    MbfcSingle,
    /// Some in-range LoS BS lies within its own region's blockage-free radius.
    MultiregionSingle,
    /// The blockage-free radius index equals `n`.
    RPmf(u32),
    /// Exact connectivity through any tier.
    ExactHetnet,
    /// Exact connectivity through tier `k` (1-based).
    PerTier(usize),
    /// Disk event of any tier.
    MbfcHetnet,
    /// Eight-region event of any tier.
    MultiregionHetnet,
}

impl Event {
    fn needs_hetnet(&self) -> bool {
        matches!(
            self,
            Event::ExactHetnet | Event::PerTier(_) | Event::MbfcHetnet | Event::MultiregionHetnet
        )
    }

    fn is_exact(&self) -> bool {
        matches!(self, Event::ExactSingle | Event::ExactHetnet | Event::PerTier(_))
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::ExactSingle => write!(f, "exact_single"),
            Event::MbfcSingle => write!(f, "mbfc_single"),
            Event::MultiregionSingle => write!(f, "multiregion_single"),
            Event::RPmf(n) => write!(f, "r_pmf_{n}"),
            Event::ExactHetnet => write!(f, "exact_hetnet"),
            Event::PerTier(k) => write!(f, "per_tier_{k}"),
            Event::MbfcHetnet => write!(f, "mbfc_hetnet"),
            Event::MultiregionHetnet => write!(f, "multiregion_hetnet"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UserPlacement {
    /// The user sits at the center of its site.
    #[default]
    Origin,
    /// The user is uniform inside its (empty) site.
    UniformInEmptySite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EstimatorKind {
    pub event: Event,
    pub placement: UserPlacement,
}

impl EstimatorKind {
    pub fn new(event: Event) -> Self {
        Self { event, placement: UserPlacement::Origin }
    }

    pub fn with_random_user(event: Event) -> Self {
        Self { event, placement: UserPlacement::UniformInEmptySite }
    }

    /// Stable identifier, e.g. `exact_single` or `exact_single/uniform_in_empty_site`.
    pub fn id(&self) -> String {
        match self.placement {
            UserPlacement::Origin => self.event.to_string(),
            UserPlacement::UniformInEmptySite => format!("{}/uniform_in_empty_site", self.event),
        }
    }

    fn check(&self, scenario: &Scenario) -> Result<()> {
        let fail = |reason: String| Err(Error::IncompatibleKind { kind: self.id(), reason });
        if self.event.needs_hetnet() != scenario.is_hetnet() {
            let wanted = if self.event.needs_hetnet() { "a HetNet" } else { "a single-tier" };
            return fail(format!("needs {wanted} scenario"));
        }
        if let (Event::PerTier(k), Scenario::HetNet(sc)) = (self.event, scenario) {
            if k == 0 || k > sc.tier_count() {
                return fail(format!("tier {k} out of range 1..={}", sc.tier_count()));
            }
        }
        if self.placement == UserPlacement::UniformInEmptySite && !self.event.is_exact() {
            return fail("only exact connectivity events support a randomly placed user".into());
        }
        Ok(())
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub p_hat: f64,
    pub trials: u64,
    pub successes: u64,
    /// 95% Wilson interval.
    pub ci_low: f64,
    pub ci_high: f64,
    pub master_seed: u64,
    pub estimator: String,
}

impl Estimate {
    pub fn from_counts(successes: u64, trials: u64, master_seed: u64, estimator: String) -> Self {
        let (ci_low, ci_high) = wilson_ci(successes, trials, 0.95);
        Self {
            p_hat: successes as f64 / trials as f64,
            trials,
            successes,
            ci_low,
            ci_high,
            master_seed,
            estimator,
        }
    }

    /// Wilson interval at another confidence level.
    pub fn interval(&self, level: f64) -> (f64, f64) {
        wilson_ci(self.successes, self.trials, level)
    }
}

/// Wilson score interval for `successes` out of `trials` at `level`.
pub fn wilson_ci(successes: u64, trials: u64, level: f64) -> (f64, f64) {
    assert!(trials >= 1 && successes <= trials, "need 0 <= successes <= trials, trials >= 1");
    assert!(level > 0.0 && level < 1.0, "confidence level must lie in (0, 1)");
    let z = Normal::standard().inverse_cdf(0.5 + level / 2.0);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2n = z * z / n;
    let center = (p + z2n / 2.0) / (1.0 + z2n);
    let half = z / (1.0 + z2n) * (p * (1.0 - p) / n + z2n / (4.0 * n)).sqrt();
    let low = if successes == 0 { 0.0 } else { (center - half).clamp(0.0, p) };
    let high = if successes == trials { 1.0 } else { (center + half).clamp(p, 1.0) };
    (low, high)
}

/// One trial's random inputs.
#[derive(Debug, Clone)]
pub struct Draw {
    pub lattice: LatticeRealization,
    /// One BS field per tier.
    pub stations: Vec<PointSet>,
    /// Offset of a randomly placed user from its site center.
    pub user_offset: Point,
}

/// Outcome counts of several estimators evaluated on shared draws.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedRun {
    pub kinds: Vec<EstimatorKind>,
    pub estimates: Vec<Estimate>,
    /// Number of trials per outcome bitmask (bit `i` set when `kinds[i]` succeeded).
    pub patterns: BTreeMap<u64, u64>,
}

impl PairedRun {
    /// Trials on which `kinds[a]` succeeded but `kinds[b]` failed.
    pub fn violations(&self, a: usize, b: usize) -> u64 {
        self.patterns
            .iter()
            .filter(|&(&mask, _)| mask >> a & 1 == 1 && mask >> b & 1 == 0)
            .map(|(_, &count)| count)
            .sum()
    }

    pub fn estimate(&self, kind: &EstimatorKind) -> Option<&Estimate> {
        self.kinds.iter().position(|k| k == kind).map(|i| &self.estimates[i])
    }
}

/// Evaluates a fixed set of estimators on shared draws.
#[derive(Debug, Clone)]
pub struct Simulator {
    scenario: Scenario,
    kinds: Vec<EstimatorKind>,
    window: Window,
    /// `(density, range, blocking level)` per tier.
    tiers: Vec<(f64, f64, u8)>,
    pmf_cap: u32,
}

impl Simulator {
    pub fn new(scenario: &Scenario, kinds: &[EstimatorKind]) -> Result<Self> {
        scenario.validate()?;
        if kinds.is_empty() || kinds.len() > 64 {
            return Err(Error::Config(format!("need 1 to 64 estimators, got {}", kinds.len())));
        }
        for kind in kinds {
            kind.check(scenario)?;
        }
        let s = scenario.site_area();
        let side = s.sqrt();
        let pmf_cap = kinds
            .iter()
            .filter_map(|k| match k.event {
                Event::RPmf(n) => Some(n + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        Ok(Self {
            window: window_for(scenario.max_range(), side, kinds, pmf_cap)?,
            tiers: tier_table(scenario),
            scenario: scenario.clone(),
            kinds: kinds.to_vec(),
            pmf_cap,
        })
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn kinds(&self) -> &[EstimatorKind] {
        &self.kinds
    }

    /// Samples the random inputs of one trial.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Draw> {
        let lattice = match &self.scenario {
            Scenario::SingleTier(sc) => sample_uniform_lattice(&sc.lattice, &self.window, rng)?,
            Scenario::HetNet(sc) => sample_multiheight_lattice(&sc.lattice, &self.window, rng)?,
        };
        let stations = self
            .tiers
            .iter()
            .map(|&(density, _, _)| sample_ppp(density, &self.window, rng))
            .collect::<Result<Vec<_>>>()?;
        let side = lattice.side();
        let user_offset = Point::new(
            rng.random_range(-0.5..0.5) * side,
            rng.random_range(-0.5..0.5) * side,
        );
        Ok(Draw { lattice, stations, user_offset })
    }

    /// Outcome bitmask of every estimator on `draw`.
    pub fn evaluate(&self, draw: &Draw) -> Result<u64> {
        let mut eval = TrialEval::new(self, draw);
        let mut mask = 0u64;
        for (i, kind) in self.kinds.iter().enumerate() {
            if eval.outcome(kind)? {
                mask |= 1 << i;
            }
        }
        Ok(mask)
    }

    /// Outcome bitmask of trial `trial` under `master_seed`.
    pub fn run_trial(&self, master_seed: u64, trial: u64) -> Result<u64> {
        let mut rng = RngStream::new(master_seed).substream(trial);
        let draw = self.draw(&mut rng)?;
        self.evaluate(&draw)
    }

    /// Runs trials `0..trials` and aggregates the outcome patterns.
    pub fn run(&self, trials: u64, master_seed: u64) -> Result<PairedRun> {
        if trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        let patterns = (0..trials)
            .into_par_iter()
            .map(|t| self.run_trial(master_seed, t))
            .try_fold(BTreeMap::new, |mut acc, mask| {
                *acc.entry(mask?).or_insert(0u64) += 1;
                Ok::<_, Error>(acc)
            })
            .try_reduce(BTreeMap::new, |mut a, b| {
                for (mask, count) in b {
                    *a.entry(mask).or_insert(0) += count;
                }
                Ok(a)
            })?;
        let estimates = self
            .kinds
            .iter()
            .enumerate()
            .map(|(i, kind)| {
                let successes = patterns.iter().filter(|&(&m, _)| m >> i & 1 == 1).map(|(_, &c)| c).sum();
                Estimate::from_counts(successes, trials, master_seed, kind.id())
            })
            .collect();
        Ok(PairedRun { kinds: self.kinds.clone(), estimates, patterns })
    }
}

fn tier_table(scenario: &Scenario) -> Vec<(f64, f64, u8)> {
    match scenario {
        Scenario::SingleTier(sc) => vec![(sc.bs_density, sc.range, 1)],
        Scenario::HetNet(sc) => sc
            .tiers
            .iter()
            .enumerate()
            .map(|(i, t)| (t.density, t.range, sc.blocking_level(i + 1) as u8))
            .collect(),
    }
}

/// Window with half-width `max range + √s`, grown by half a site when the
/// user may sit off-center, and large enough for any requested radius index.
fn window_for(max_range: f64, side: f64, kinds: &[EstimatorKind], pmf_cap: u32) -> Result<Window> {
    let offset = if kinds.iter().any(|k| k.placement == UserPlacement::UniformInEmptySite) {
        0.5 * side
    } else {
        0.0
    };
    let base = max_range + offset + side;
    Window::new(base.max((pmf_cap as f64 + 1.0) * side))
}

/// Lazily evaluated per-tier events of one draw.
struct TrialEval<'a> {
    sim: &'a Simulator,
    draw: &'a Draw,
    exact: Vec<Option<bool>>,
    exact_user: Vec<Option<bool>>,
    mbfc: Vec<Option<bool>>,
    multi: Vec<Option<bool>>,
    pmf_index: Option<u32>,
}

impl<'a> TrialEval<'a> {
    fn new(sim: &'a Simulator, draw: &'a Draw) -> Self {
        let k = sim.tiers.len();
        Self {
            sim,
            draw,
            exact: vec![None; k],
            exact_user: vec![None; k],
            mbfc: vec![None; k],
            multi: vec![None; k],
            pmf_index: None,
        }
    }

    fn outcome(&mut self, kind: &EstimatorKind) -> Result<bool> {
        let random_user = kind.placement == UserPlacement::UniformInEmptySite;
        let all = 0..self.sim.tiers.len();
        match kind.event {
            Event::ExactSingle | Event::ExactHetnet => self.any_tier(all, |e, t| e.exact(t, random_user)),
            Event::PerTier(k) => self.exact(k - 1, random_user),
            Event::MbfcSingle | Event::MbfcHetnet => self.any_tier(all, Self::mbfc),
            Event::MultiregionSingle | Event::MultiregionHetnet => self.any_tier(all, Self::multiregion),
            Event::RPmf(n) => Ok(self.pmf_index()? == n),
        }
    }

    fn any_tier(
        &mut self,
        tiers: std::ops::Range<usize>,
        mut f: impl FnMut(&mut Self, usize) -> Result<bool>,
    ) -> Result<bool> {
        for t in tiers {
            if f(self, t)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn blocking(&self, t: usize) -> Result<impl Blockers + 'a> {
        self.draw.lattice.blocking(self.sim.tiers[t].2)
    }

    fn exact(&mut self, t: usize, random_user: bool) -> Result<bool> {
        let cache = if random_user { &self.exact_user } else { &self.exact };
        if let Some(hit) = cache[t] {
            return Ok(hit);
        }
        let user = if random_user { self.draw.user_offset } else { Point::ORIGIN };
        let range = self.sim.tiers[t].1;
        let blocking = self.blocking(t)?;
        let s = self.draw.lattice.site_area();
        let hit = self.draw.stations[t].points.iter().any(|&y| {
            user.distance(y) <= range && !segment_blocked(&Segment::new(user, y), &blocking, s)
        });
        let cache = if random_user { &mut self.exact_user } else { &mut self.exact };
        cache[t] = Some(hit);
        Ok(hit)
    }

    fn in_range(&self, t: usize) -> impl Iterator<Item = Point> + 'a {
        let range = self.sim.tiers[t].1;
        self.draw.stations[t].points.iter().copied().filter(move |y| y.norm() <= range)
    }

    fn cap(&self, t: usize) -> u32 {
        grid_radii_below(self.sim.tiers[t].1, self.draw.lattice.site_area()) as u32
    }

    fn mbfc(&mut self, t: usize) -> Result<bool> {
        if let Some(hit) = self.mbfc[t] {
            return Ok(hit);
        }
        let hit = if self.in_range(t).next().is_none() {
            false
        } else {
            let lattice = &self.draw.lattice;
            let index = mbfc_radius_index(lattice, &self.blocking(t)?, self.cap(t))?;
            let radius = index.radius(lattice.site_area()).min(self.sim.tiers[t].1);
            self.in_range(t).any(|y| y.norm() <= radius)
        };
        self.mbfc[t] = Some(hit);
        Ok(hit)
    }

    fn multiregion(&mut self, t: usize) -> Result<bool> {
        if let Some(hit) = self.multi[t] {
            return Ok(hit);
        }
        let hit = if self.in_range(t).next().is_none() {
            false
        } else {
            let lattice = &self.draw.lattice;
            let s = lattice.site_area();
            let blocking = self.blocking(t)?;
            let cap = self.cap(t);
            // region 0 (the user's own site) uses the whole-disk radius
            let mut radii = [0.0; 9];
            radii[0] = mbfc_radius_index(lattice, &blocking, cap)?.radius(s);
            for (id, radius) in radii.iter_mut().enumerate().skip(1) {
                *radius = region_mbfc_radius_index(lattice, &blocking, RegionId(id as u8), cap)?.radius(s);
            }
            self.in_range(t).any(|y| {
                let region = region_of_site(site_of_point(y, s));
                y.norm() <= radii[region.0 as usize]
                    && !segment_blocked(&Segment::new(Point::ORIGIN, y), &blocking, s)
            })
        };
        self.multi[t] = Some(hit);
        Ok(hit)
    }

    fn pmf_index(&mut self) -> Result<u32> {
        if let Some(n) = self.pmf_index {
            return Ok(n);
        }
        let lattice = &self.draw.lattice;
        let n = mbfc_radius_index(lattice, &lattice.occupied(), self.sim.pmf_cap)?.0;
        self.pmf_index = Some(n);
        Ok(n)
    }
}

/// One success/failure draw of `kind` from the given random source.
pub fn run_trial<R: Rng + ?Sized>(kind: &EstimatorKind, scenario: &Scenario, rng: &mut R) -> Result<bool> {
    let sim = Simulator::new(scenario, std::slice::from_ref(kind))?;
    let draw = sim.draw(rng)?;
    Ok(sim.evaluate(&draw)? == 1)
}

/// Estimates `kind` over trials `0..trials` of `master_seed`.
pub fn estimate(kind: &EstimatorKind, scenario: &Scenario, trials: u64, master_seed: u64) -> Result<Estimate> {
    let run = estimate_paired(std::slice::from_ref(kind), scenario, trials, master_seed)?;
    Ok(run.estimates.into_iter().next().expect("one estimator"))
}

/// Estimates several kinds on the same draws.
pub fn estimate_paired(
    kinds: &[EstimatorKind],
    scenario: &Scenario,
    trials: u64,
    master_seed: u64,
) -> Result<PairedRun> {
    Simulator::new(scenario, kinds)?.run(trials, master_seed)
}

/// Largest radius index a PMF estimate may ask for; guards against
/// windows with billions of sites.
pub const MAX_PMF_INDEX: u32 = 10_000;

/// Empirical distribution of the blockage-free radius index: buckets
/// `0..n_max` followed by the tail `>= n_max`. The bucket counts always sum
/// to `trials`.
pub fn estimate_pmf(
    scenario: &SingleTierScenario,
    n_max: u32,
    trials: u64,
    master_seed: u64,
) -> Result<Vec<Estimate>> {
    if n_max > MAX_PMF_INDEX {
        return Err(Error::WindowTooSmall {
            half_width: (MAX_PMF_INDEX as f64 + 1.0) * scenario.site_area().sqrt(),
            needed: (n_max as f64 + 1.0) * scenario.site_area().sqrt(),
        });
    }
    let kind = EstimatorKind::new(Event::RPmf(n_max.saturating_sub(1)));
    let mut sim = Simulator::new(&Scenario::SingleTier(*scenario), &[kind])?;
    sim.pmf_cap = n_max;
    if trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let buckets = n_max as usize + 1;
    let counts = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<usize> {
            let draw = sim.draw(&mut RngStream::new(master_seed).substream(t))?;
            let mut eval = TrialEval::new(&sim, &draw);
            Ok(eval.pmf_index()? as usize)
        })
        .try_fold(
            || vec![0u64; buckets],
            |mut acc, n| {
                acc[n?] += 1;
                Ok::<_, Error>(acc)
            },
        )
        .try_reduce(
            || vec![0u64; buckets],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            let id = if n == n_max as usize { format!("r_pmf_ge_{n}") } else { format!("r_pmf_{n}") };
            Estimate::from_counts(c, trials, master_seed, id)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeConfig;
    use crate::scenario::Tier;
    use crate::MultiHeightConfig;

    fn single(p: f64, lambda: f64) -> Scenario {
        Scenario::SingleTier(SingleTierScenario::new(LatticeConfig::new(30.0, p).unwrap(), lambda, 150.0).unwrap())
    }

    #[test]
    fn wilson_examples() {
        let (lo, hi) = wilson_ci(50, 100, 0.95);
        assert!((lo - 0.4038).abs() < 1e-3 && (hi - 0.5962).abs() < 1e-3, "{lo} {hi}");
        assert_eq!(wilson_ci(0, 100, 0.95).0, 0.0);
        assert_eq!(wilson_ci(100, 100, 0.95).1, 1.0);
        let (lo99, hi99) = wilson_ci(50, 100, 0.99);
        assert!(lo99 < lo && hi99 > hi);
    }

    #[test]
    fn no_bs_means_no_success() {
        let est = estimate(&EstimatorKind::new(Event::ExactSingle), &single(0.3, 0.0), 200, 1).unwrap();
        assert_eq!(est.successes, 0);
        assert_eq!(est.p_hat, 0.0);
    }

    #[test]
    fn forced_station_without_buildings_connects() {
        let sc = single(0.0, 0.0);
        let sim = Simulator::new(&sc, &[EstimatorKind::new(Event::ExactSingle)]).unwrap();
        let mut draw = sim.draw(&mut RngStream::new(3).substream(0)).unwrap();
        draw.stations[0].points.push(Point::new(75.0, 0.0));
        assert_eq!(sim.evaluate(&draw).unwrap(), 1);
    }

    #[test]
    fn incompatible_kinds_are_rejected() {
        let sc = single(0.3, 6e-5);
        for kind in [
            EstimatorKind::new(Event::ExactHetnet),
            EstimatorKind::new(Event::PerTier(1)),
            EstimatorKind::with_random_user(Event::MbfcSingle),
        ] {
            assert!(matches!(Simulator::new(&sc, &[kind]), Err(Error::IncompatibleKind { .. })));
        }
        let het = Scenario::HetNet(
            HetNetScenario::new(
                MultiHeightConfig::new(30.0, vec![0.7, 0.3]).unwrap(),
                vec![Tier { density: 1e-5, range: 100.0 }],
            )
            .unwrap(),
        );
        assert!(Simulator::new(&het, &[EstimatorKind::new(Event::PerTier(2))]).is_err());
        assert!(Simulator::new(&het, &[EstimatorKind::new(Event::MbfcSingle)]).is_err());
    }

    #[test]
    fn pmf_extremes() {
        let full = SingleTierScenario::new(LatticeConfig::new(30.0, 1.0).unwrap(), 0.0, 10.0).unwrap();
        let pmf = estimate_pmf(&full, 3, 50, 9).unwrap();
        assert_eq!(pmf[0].successes, 50);
        let empty = SingleTierScenario::new(LatticeConfig::new(30.0, 0.0).unwrap(), 0.0, 10.0).unwrap();
        let pmf = estimate_pmf(&empty, 3, 50, 9).unwrap();
        assert_eq!(pmf.len(), 4);
        assert_eq!(pmf[3].successes, 50);
        assert_eq!(pmf[3].estimator, "r_pmf_ge_3");
    }

    #[test]
    fn kind_ids() {
        assert_eq!(EstimatorKind::new(Event::PerTier(2)).id(), "per_tier_2");
        assert_eq!(
            EstimatorKind::with_random_user(Event::ExactSingle).id(),
            "exact_single/uniform_in_empty_site"
        );
    }
}
