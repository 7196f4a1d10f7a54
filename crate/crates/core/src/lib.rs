//! Connectivity of mmWave users in cities modeled as random building
//! lattices: exact lattice geometry, closed-form lower bounds and a seeded
//! Monte Carlo engine.

pub mod bounds;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod montecarlo;
pub mod scenario;

pub use error::{Error, Result};
pub use lattice::{
    LatticeConfig, LatticeRealization, MultiHeightConfig, Point, PointSet, RngStream, SiteIndex, Window,
};
pub use scenario::{HetNetScenario, SingleTierScenario, Tier};
