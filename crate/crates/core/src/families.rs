//! Ready-made spaces.
//!
//! * `naturals_r2`: `X = {0, 1, ..., n_cap}`, values in `R^2` with pointwise
//!   product, `F(x,y,z) = (h, h)` with `h = ((x+z)^2 + (y+z)^2) / 2` and
//!   `C(x,y,z) = (|x+y-z+1|, |x+y-z+1|)`.
//! * `interval_m2`: `X = [0, 4]`, values in `M_2(R)`,
//!   `F(x,y,z) = (max{x,z} + max{y,z}) I`, `C(x,y,z) = (2 + max{x,y,z}) I`,
//!   with the contraction `T x = x / 8`, `P = I / (2 sqrt 2)`, `Q = R = 0`.
//!
//! The naturals family fails several axioms (see the checker output); it is
//! kept because it separates the controlled and the extended triangle
//! inequality at `(1, 2, 3, 0)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraDescriptor;
use crate::contraction::ContractionSpec;
use crate::error::{Error, Result};
use crate::space::{Domain, Point, SpaceInstance};

pub const INTERVAL_UPPER: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    NaturalsR2,
    IntervalM2,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::NaturalsR2, Family::IntervalM2];

    pub fn name(self) -> &'static str {
        match self {
            Family::NaturalsR2 => "naturals_r2",
            Family::IntervalM2 => "interval_m2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExampleConfig {
    pub family: Family,
    /// Truncation of the naturals.
    pub n_cap: u64,
    /// Grid spacing on `[0, 4]`.
    pub grid_step: f64,
}

impl ExampleConfig {
    pub const DEFAULT_N_CAP: u64 = 50;
    pub const DEFAULT_GRID_STEP: f64 = 0.25;

    pub fn new(family: Family) -> Self {
        Self {
            family,
            n_cap: Self::DEFAULT_N_CAP,
            grid_step: Self::DEFAULT_GRID_STEP,
        }
    }

    pub fn naturals_r2() -> Self {
        Self::new(Family::NaturalsR2)
    }

    pub fn interval_m2() -> Self {
        Self::new(Family::IntervalM2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_cap < 3 {
            return Err(Error::InvalidArgument(format!(
                "n_cap must be at least 3, got {}",
                self.n_cap
            )));
        }
        if !(self.grid_step > 0.0 && self.grid_step <= INTERVAL_UPPER) {
            return Err(Error::InvalidArgument(format!(
                "grid_step must lie in (0, 4], got {}",
                self.grid_step
            )));
        }
        Ok(())
    }

    fn expect(&self, family: Family) -> Result<()> {
        if self.family != family {
            return Err(Error::ConfigMismatch(format!(
                "builder for {family} called with family {}",
                self.family
            )));
        }
        self.validate()
    }
}

/// `(1/2)((x+z)^2 + (y+z)^2)`.
pub fn naturals_metric_value(x: f64, y: f64, z: f64) -> f64 {
    0.5 * ((x + z).powi(2) + (y + z).powi(2))
}

/// `|x + y - z + 1|`.
pub fn naturals_control_value(x: f64, y: f64, z: f64) -> f64 {
    (x + y - z + 1.0).abs()
}

pub fn build_example_naturals(config: &ExampleConfig) -> Result<SpaceInstance> {
    config.expect(Family::NaturalsR2)?;
    let algebra = AlgebraDescriptor::componentwise(2)?;
    let space = SpaceInstance::new(
        Family::NaturalsR2.name(),
        algebra,
        Domain::naturals(config.n_cap),
        move |x: &Point, y: &Point, z: &Point| {
            algebra.scalar(naturals_metric_value(x.x(), y.x(), z.x()))
        },
        move |x: &Point, y: &Point, z: &Point| {
            algebra.scalar(naturals_control_value(x.x(), y.x(), z.x()))
        },
    )?;
    let worked = [1.0, 2.0, 3.0, 0.0].map(Point::scalar).to_vec();
    Ok(space.with_anchor(worked))
}

/// `max{x,z} + max{y,z}`.
pub fn interval_metric_value(x: f64, y: f64, z: f64) -> f64 {
    x.max(z) + y.max(z)
}

/// `2 + max{x,y,z}`.
pub fn interval_control_value(x: f64, y: f64, z: f64) -> f64 {
    2.0 + x.max(y).max(z)
}

/// `1 / (2 sqrt 2)`.
pub fn interval_p_norm() -> f64 {
    1.0 / (2.0 * 2f64.sqrt())
}

pub fn build_example_interval(config: &ExampleConfig) -> Result<(SpaceInstance, ContractionSpec)> {
    config.expect(Family::IntervalM2)?;
    let algebra = AlgebraDescriptor::matrix(2)?;
    let space = SpaceInstance::new(
        Family::IntervalM2.name(),
        algebra,
        Domain::interval(0.0, INTERVAL_UPPER, config.grid_step)?,
        move |x: &Point, y: &Point, z: &Point| {
            algebra.scalar(interval_metric_value(x.x(), y.x(), z.x()))
        },
        move |x: &Point, y: &Point, z: &Point| {
            algebra.scalar(interval_control_value(x.x(), y.x(), z.x()))
        },
    )?;
    let spec = ContractionSpec::new(
        &space,
        "x/8",
        |x: &Point| Point::scalar(x.x() / 8.0),
        algebra.scalar(interval_p_norm()),
        algebra.zero(),
        algebra.zero(),
    )?;
    Ok((space, spec))
}
