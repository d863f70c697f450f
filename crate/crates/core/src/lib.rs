//! Numerical verification for C*-algebra-valued controlled F_c-metric type
//! spaces.
//!
//! The crate checks the space axioms on concrete instances by reproducible
//! random sampling, verifies the hypotheses of the associated fixed-point
//! theorem, runs the Picard iteration and compares observed orbit distances
//! with the explicit Cauchy majorant from the convergence proof.
//!
//! ```
//! use fcmetric::families::{build_example_interval, ExampleConfig};
//! use fcmetric::solver::picard;
//! use fcmetric::{Point, Tolerance};
//!
//! let (space, spec) = build_example_interval(&ExampleConfig::interval_m2()).unwrap();
//! let run = picard(&space, &spec, &Point::scalar(4.0), Tolerance::default(), 100).unwrap();
//! assert!(run.converged);
//! assert!(run.fixed_point.x().abs() <= 1e-9);
//! ```

pub mod algebra;
pub mod cli;
pub mod contraction;
pub mod error;
pub mod families;
pub mod solver;
pub mod space;

pub use algebra::{AlgebraDescriptor, AlgebraElement, AlgebraKind, Tolerance};
pub use contraction::ContractionSpec;
pub use error::{Error, Result};
pub use space::{Domain, Point, SpaceInstance};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/contraction.md")]
    mod contraction {}
    #[doc = include_str!("../../../book/src/solver.md")]
    mod solver {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
