use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("window half-width {half_width} m is too small: {needed} m required")]
    WindowTooSmall { half_width: f64, needed: f64 },

    #[error("tier {k} out of range 1..={max}")]
    TierOutOfRange { k: usize, max: usize },

    #[error("region {0} has no free-disk radius (expected 1..=8)")]
    InvalidRegion(u8),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric violation in {what}: value {value} outside [0, 1]")]
    NumericViolation { what: &'static str, value: f64 },

    #[error("estimator {kind} is incompatible with this scenario: {reason}")]
    IncompatibleKind { kind: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Config(format!("{name} = {p} is not a probability")));
    }
    Ok(())
}

pub(crate) fn check_positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Config(format!("{name} = {x} must be positive and finite")));
    }
    Ok(())
}

pub(crate) fn check_nonnegative(name: &str, x: f64) -> Result<()> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::Config(format!("{name} = {x} must be non-negative and finite")));
    }
    Ok(())
}
