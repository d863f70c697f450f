use thiserror::Error;

use crate::algebra::AlgebraDescriptor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element is not self-adjoint: |h - h*| = {deviation:e} exceeds tolerance {eps:e}")]
    NotSelfAdjoint { deviation: f64, eps: f64 },

    #[error("algebra mismatch: expected {expected}, found {found}")]
    DescriptorMismatch {
        expected: AlgebraDescriptor,
        found: AlgebraDescriptor,
    },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("sampler produced no points")]
    EmptySample,

    #[error("iterate {index} left the domain: {point:?}")]
    DomainEscape { index: usize, point: Vec<f64> },

    #[error("inner limit did not stabilise: tail oscillation {oscillation:e} exceeds {allowed:e} (m = {m})")]
    TailNotConverged {
        m: usize,
        oscillation: f64,
        allowed: f64,
    },

    #[error("contraction ratio |S|^2 = {ratio} is not below 1, the Cauchy bound is undefined")]
    NormBoundViolated { ratio: f64 },

    #[error("configuration does not match builder: {0}")]
    ConfigMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
