//! Controlled F_c-metric type spaces and randomized axiom checking.
//!
//! A [`SpaceInstance`] bundles the ground set (as a samplable [`Domain`]),
//! the three-point metric `F_c : X^3 -> A`, the control function
//! `C : X^3 -> A'_I` and the algebra they take values in. The checkers draw
//! tuples of points, evaluate both sides of an axiom and keep concrete
//! witnesses wherever it fails.
//!
//! Sampling is reproducible: tuple `i` of a run with seed `s` is drawn from
//! ChaCha stream `i` keyed by `s`, so results do not depend on how the index
//! range is split across threads, and the first `n` tuples of a run with
//! `2n` samples are the tuples of the run with `n` samples.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraDescriptor, AlgebraElement, Tolerance};
use crate::error::{Error, Result};

/// Witnesses kept per report; further violations are only counted.
pub const MAX_STORED_WITNESSES: usize = 32;

/// Coordinates closer than this are the same point.
pub const DEFAULT_POINT_EQ_TOL: f64 = 1e-12;

/// A point of the ground set `X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument(
                "a point needs at least one coordinate".into(),
            ));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite coordinate in {coords:?}"
            )));
        }
        Ok(Self(coords))
    }

    /// One-dimensional point.
    pub fn scalar(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite coordinate {x}");
        Self(vec![x])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// First coordinate; the natural accessor for one-dimensional spaces.
    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn max_coordinate_gap(&self, other: &Point) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn approx_eq(&self, other: &Point, tol: f64) -> bool {
        self.max_coordinate_gap(other) <= tol
    }
}

/// Shortest round-trip text for `v`, in exponent form outside `[1e-4, 1e9)`.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e9).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", format_number(self.0[0]));
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_number(*c))?;
        }
        write!(f, ")")
    }
}

/// The ground set, with how to sample from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// `{0, 1, ..., cap}^dim`, sampled uniformly.
    Naturals { cap: u64, dim: usize },
    /// The box `[lower, upper]` per coordinate. Each coordinate is drawn from
    /// the grid `lower, lower + grid_step, ...` or uniformly, with equal odds.
    Interval {
        lower: f64,
        upper: f64,
        grid_step: f64,
        dim: usize,
    },
    /// An explicit finite set, sampled uniformly.
    Finite(Vec<Point>),
}

impl Domain {
    pub fn interval(lower: f64, upper: f64, grid_step: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower <= upper) {
            return Err(Error::InvalidArgument(format!(
                "invalid interval [{lower}, {upper}]"
            )));
        }
        if !(grid_step > 0.0 && grid_step.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "grid step must be positive, got {grid_step}"
            )));
        }
        Ok(Domain::Interval {
            lower,
            upper,
            grid_step,
            dim: 1,
        })
    }

    pub fn naturals(cap: u64) -> Self {
        Domain::Naturals { cap, dim: 1 }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Domain::Naturals { dim, .. } | Domain::Interval { dim, .. } => Some(*dim),
            Domain::Finite(points) => points.first().map(Point::dim),
        }
    }

    fn axis_grid(lower: f64, upper: f64, grid_step: f64) -> Vec<f64> {
        let steps = ((upper - lower) / grid_step + 1e-9).floor() as usize;
        (0..=steps).map(|k| lower + k as f64 * grid_step).collect()
    }

    /// Distinguished points: the whole set for finite domains, the grid for
    /// intervals and all of `{0..cap}^dim` for the naturals.
    pub fn grid(&self) -> Vec<Point> {
        let axis: Vec<f64> = match self {
            Domain::Finite(points) => return points.clone(),
            Domain::Naturals { cap, .. } => (0..=*cap).map(|k| k as f64).collect(),
            Domain::Interval {
                lower,
                upper,
                grid_step,
                ..
            } => Self::axis_grid(*lower, *upper, *grid_step),
        };
        let dim = self.dim().unwrap_or(1);
        let mut out: Vec<Vec<f64>> = vec![Vec::new()];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    axis.iter().map(move |c| {
                        let mut p = prefix.clone();
                        p.push(*c);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Point).collect()
    }

    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        match self {
            Domain::Naturals { cap, dim } => {
                p.dim() == *dim
                    && p.coords().iter().all(|c| {
                        *c >= -tol && *c <= *cap as f64 + tol && (c - c.round()).abs() <= tol
                    })
            }
            Domain::Interval {
                lower, upper, dim, ..
            } => {
                p.dim() == *dim
                    && p.coords()
                        .iter()
                        .all(|c| *c >= lower - tol && *c <= upper + tol)
            }
            Domain::Finite(points) => points.iter().any(|q| q.approx_eq(p, tol)),
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Result<Point> {
        match self {
            Domain::Naturals { cap, dim } => Ok(Point(
                (0..*dim)
                    .map(|_| rng.random_range(0..=*cap) as f64)
                    .collect(),
            )),
            Domain::Interval {
                lower,
                upper,
                grid_step,
                dim,
            } => {
                let axis = Self::axis_grid(*lower, *upper, *grid_step);
                Ok(Point(
                    (0..*dim)
                        .map(|_| {
                            if rng.random_bool(0.5) {
                                axis[rng.random_range(0..axis.len())]
                            } else {
                                lower + (upper - lower) * rng.random::<f64>()
                            }
                        })
                        .collect(),
                ))
            }
            Domain::Finite(points) => {
                if points.is_empty() {
                    return Err(Error::EmptySample);
                }
                Ok(points[rng.random_range(0..points.len())].clone())
            }
        }
    }
}

/// `(x, y, z) -> A`, used for both the metric and the control function.
pub type Evaluator = Arc<dyn Fn(&Point, &Point, &Point) -> AlgebraElement + Send + Sync>;

/// A concrete C*-algebra-valued controlled F_c-metric type space candidate.
#[derive(Clone)]
pub struct SpaceInstance {
    name: String,
    algebra: AlgebraDescriptor,
    domain: Domain,
    metric: Evaluator,
    control: Evaluator,
    point_eq_tol: f64,
    anchors: Vec<Vec<Point>>,
}

impl fmt::Debug for SpaceInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpaceInstance")
            .field("name", &self.name)
            .field("algebra", &self.algebra)
            .field("domain", &self.domain)
            .field("point_eq_tol", &self.point_eq_tol)
            .field("anchors", &self.anchors)
            .finish_non_exhaustive()
    }
}

impl SpaceInstance {
    /// Builds a space and probes both evaluators once to make sure they land
    /// in `algebra`.
    pub fn new<M, C>(
        name: impl Into<String>,
        algebra: AlgebraDescriptor,
        domain: Domain,
        metric: M,
        control: C,
    ) -> Result<Self>
    where
        M: Fn(&Point, &Point, &Point) -> AlgebraElement + Send + Sync + 'static,
        C: Fn(&Point, &Point, &Point) -> AlgebraElement + Send + Sync + 'static,
    {
        let space = Self {
            name: name.into(),
            algebra,
            domain,
            metric: Arc::new(metric),
            control: Arc::new(control),
            point_eq_tol: DEFAULT_POINT_EQ_TOL,
            anchors: Vec::new(),
        };
        if let Some(p) = space.domain.grid().first() {
            for value in [space.metric(p, p, p), space.control(p, p, p)] {
                if value.descriptor() != algebra {
                    return Err(Error::DescriptorMismatch {
                        expected: algebra,
                        found: value.descriptor(),
                    });
                }
            }
        }
        Ok(space)
    }

    /// Registers a tuple that every checker of matching arity evaluates
    /// before drawing random tuples.
    pub fn with_anchor(mut self, points: Vec<Point>) -> Self {
        self.anchors.push(points);
        self
    }

    pub fn with_point_eq_tol(mut self, tol: f64) -> Self {
        self.point_eq_tol = tol;
        self
    }

    /// Same evaluators and algebra on a different ground set.
    pub fn restricted_to(&self, domain: Domain) -> Self {
        let mut space = self.clone();
        space
            .anchors
            .retain(|tuple| tuple.iter().all(|p| domain.contains(p, 0.0)));
        space.domain = domain;
        space
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        self.algebra
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn point_eq_tol(&self) -> f64 {
        self.point_eq_tol
    }

    pub fn anchors(&self) -> &[Vec<Point>] {
        &self.anchors
    }

    /// `F_c(x, y, z)`.
    pub fn metric(&self, x: &Point, y: &Point, z: &Point) -> AlgebraElement {
        (self.metric)(x, y, z)
    }

    /// `C(x, y, z)`.
    pub fn control(&self, x: &Point, y: &Point, z: &Point) -> AlgebraElement {
        (self.control)(x, y, z)
    }

    /// `|F_c(x, x, y)|`, the scalar distance used along orbits.
    pub fn distance(&self, x: &Point, y: &Point) -> f64 {
        self.metric(x, x, y).operator_norm()
    }

    fn same_point(&self, a: &Point, b: &Point) -> bool {
        a.approx_eq(b, self.point_eq_tol)
    }

    fn all_equal(&self, points: &[Point]) -> bool {
        points.windows(2).all(|w| self.same_point(&w[0], &w[1]))
    }

    /// Tuple `index` of a sampled run: anchors of the right arity first, then
    /// independent draws from stream `index`.
    pub fn sample_tuple(&self, arity: usize, seed: u64, index: usize) -> Result<Vec<Point>> {
        if let Some(anchor) = self.anchors.iter().filter(|a| a.len() == arity).nth(index) {
            return Ok(anchor.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        (0..arity).map(|_| self.domain.sample(&mut rng)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomId {
    Identity,
    Order,
    ControlledTriangle,
    Symmetry,
    ControlAdmissible,
    ZeroImpliesEqual,
}

impl AxiomId {
    pub const ALL: [AxiomId; 6] = [
        AxiomId::Identity,
        AxiomId::Order,
        AxiomId::ControlledTriangle,
        AxiomId::Symmetry,
        AxiomId::ControlAdmissible,
        AxiomId::ZeroImpliesEqual,
    ];

    /// Number of points the axiom quantifies over.
    pub fn arity(self) -> usize {
        match self {
            AxiomId::Symmetry => 2,
            AxiomId::ControlledTriangle => 4,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::Identity => "identity",
            AxiomId::Order => "order",
            AxiomId::ControlledTriangle => "controlled_triangle",
            AxiomId::Symmetry => "symmetry",
            AxiomId::ControlAdmissible => "control_admissible",
            AxiomId::ZeroImpliesEqual => "zero_implies_equal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == name)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A concrete violation.
///
/// `margin` is the signed slack of the checked relation and is negative (or
/// zero for coincidence-type checks) on violation: the smallest eigenvalue of
/// `rhs - lhs` for order relations, `eps - |lhs - rhs|` for equalities, and
/// `spread - eps` for "values coincide" tests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub points: Vec<Point>,
    pub lhs: AlgebraElement,
    pub rhs: AlgebraElement,
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub samples_checked: usize,
    /// Total number of violating tuples, including those not stored.
    pub violations: usize,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

/// Signed slack of `lhs <= rhs`: smallest eigenvalue of `rhs - lhs`, pulled
/// below zero when the difference is not self-adjoint.
pub(crate) fn order_slack(
    lhs: &AlgebraElement,
    rhs: &AlgebraElement,
    tol: Tolerance,
) -> Result<(bool, f64)> {
    let holds = lhs.leq(rhs, tol)?;
    let diff = rhs - lhs;
    let mut margin = diff.min_eigenvalue();
    let deviation = diff.self_adjoint_deviation();
    if deviation > tol.eps() {
        margin = margin.min(-deviation);
    }
    Ok((holds, margin))
}

/// How a failed `lhs <= rhs` fails: the reverse relation holds, or the two
/// are incomparable.
pub(crate) fn failure_kind(
    lhs: &AlgebraElement,
    rhs: &AlgebraElement,
    tol: Tolerance,
) -> Result<&'static str> {
    Ok(if rhs.leq(lhs, tol)? {
        "reversed"
    } else {
        "incomparable"
    })
}

fn generators(algebra: AlgebraDescriptor) -> Vec<AlgebraElement> {
    let mut gens = algebra.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    for _ in 0..2 {
        let entries = (0..algebra.entry_count())
            .map(|_| rng.random_range(-1.0..1.0))
            .collect();
        gens.push(AlgebraElement::new(algebra, entries).expect("finite entries"));
    }
    gens
}

/// Evaluates one axiom at one tuple. Returns the witness if the tuple
/// violates it. Tuples the axiom does not constrain return `None`.
pub fn probe_axiom(
    space: &SpaceInstance,
    axiom: AxiomId,
    points: &[Point],
    tol: Tolerance,
) -> Result<Option<Witness>> {
    if points.len() != axiom.arity() {
        return Err(Error::InvalidArgument(format!(
            "{axiom} takes {} points, got {}",
            axiom.arity(),
            points.len()
        )));
    }
    let eps = tol.eps();
    let f = |a: &Point, b: &Point, c: &Point| space.metric(a, b, c);
    let c = |a: &Point, b: &Point, d: &Point| space.control(a, b, d);
    let witness = |lhs, rhs, margin, detail: Option<String>| Witness {
        points: points.to_vec(),
        lhs,
        rhs,
        margin,
        detail,
    };

    let found = match axiom {
        AxiomId::Identity => {
            let (x, y, z) = (&points[0], &points[1], &points[2]);
            if space.all_equal(points) {
                return Ok(None);
            }
            let values = [f(x, x, x), f(y, y, y), f(z, z, z), f(x, y, z)];
            for v in &values {
                values[0].same_algebra(v)?;
            }
            let mut spread: f64 = 0.0;
            for i in 0..values.len() {
                for j in (i + 1)..values.len() {
                    spread = spread.max(values[i].distance(&values[j]));
                }
            }
            (spread <= eps).then(|| {
                let [xxx, _, _, xyz] = values;
                witness(
                    xyz,
                    xxx,
                    spread - eps,
                    Some("distinct points share all four values".into()),
                )
            })
        }
        AxiomId::Order => {
            let (x, y, z) = (&points[0], &points[1], &points[2]);
            let xxx = f(x, x, x);
            let links = [
                ("0 <= F(x,x,x)", space.algebra.zero(), xxx.clone()),
                ("F(x,x,x) <= F(x,x,y)", xxx, f(x, x, y)),
                ("F(x,x,y) <= F(x,y,z)", f(x, x, y), f(x, y, z)),
            ];
            let mut out = None;
            for (name, lhs, rhs) in links {
                let (holds, margin) = order_slack(&lhs, &rhs, tol)?;
                if !holds {
                    let kind = failure_kind(&lhs, &rhs, tol)?;
                    out = Some(witness(lhs, rhs, margin, Some(format!("{name}: {kind}"))));
                    break;
                }
            }
            out
        }
        AxiomId::ControlledTriangle => {
            let (x, y, z, a) = (&points[0], &points[1], &points[2], &points[3]);
            let lhs = f(x, y, z);
            let rhs = &(&(&(&c(x, x, a) * &f(x, x, a)) + &(&c(y, y, a) * &f(y, y, a)))
                + &(&c(z, z, a) * &f(z, z, a)))
                - &f(a, a, a);
            let (holds, margin) = order_slack(&lhs, &rhs, tol)?;
            if holds {
                None
            } else {
                let kind = failure_kind(&lhs, &rhs, tol)?;
                Some(witness(lhs, rhs, margin, Some(kind.into())))
            }
        }
        AxiomId::Symmetry => {
            let (x, y) = (&points[0], &points[1]);
            let lhs = f(x, x, y);
            let rhs = f(y, y, x);
            lhs.same_algebra(&rhs)?;
            let gap = lhs.distance(&rhs);
            (gap > eps).then(|| witness(lhs, rhs, eps - gap, None))
        }
        AxiomId::ControlAdmissible => {
            let value = c(&points[0], &points[1], &points[2]);
            let unit = space.algebra.unit();
            let gens = generators(space.algebra);
            if value.is_admissible_control_value(&gens, tol)? {
                None
            } else {
                let (above_unit, margin) = order_slack(&unit, &value, tol)?;
                if above_unit {
                    // slack of the worst commutator against its allowance
                    let norm = value.operator_norm();
                    let excess = gens
                        .iter()
                        .map(|g| {
                            (&(&value * g) - &(g * &value)).operator_norm()
                                - eps * (1.0 + norm * g.operator_norm())
                        })
                        .fold(f64::NEG_INFINITY, f64::max);
                    Some(witness(
                        unit,
                        value,
                        -excess,
                        Some("control value is not central".into()),
                    ))
                } else {
                    Some(witness(
                        unit,
                        value,
                        margin,
                        Some("control value is not above the unit".into()),
                    ))
                }
            }
        }
        AxiomId::ZeroImpliesEqual => {
            if space.all_equal(points) {
                return Ok(None);
            }
            let value = f(&points[0], &points[1], &points[2]);
            let norm = value.operator_norm();
            (norm <= eps).then(|| {
                witness(
                    value,
                    space.algebra.zero(),
                    norm - eps,
                    Some("zero value at distinct points".into()),
                )
            })
        }
    };
    Ok(found)
}

/// Evaluates `probe` on `n_samples` reproducible tuples, in parallel, and
/// collects violations in sample order.
pub(crate) fn sampled_violations<T, F>(
    space: &SpaceInstance,
    arity: usize,
    n_samples: usize,
    seed: u64,
    probe: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[Point]) -> Result<Option<T>> + Sync,
{
    if n_samples == 0 {
        return Err(Error::InvalidArgument(
            "n_samples must be at least 1".into(),
        ));
    }
    if space.domain.grid().is_empty() {
        return Err(Error::EmptySample);
    }
    let found: Vec<Option<T>> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let tuple = space.sample_tuple(arity, seed, i)?;
            probe(&tuple)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

fn report(axiom: AxiomId, samples_checked: usize, mut witnesses: Vec<Witness>) -> AxiomReport {
    let violations = witnesses.len();
    witnesses.truncate(MAX_STORED_WITNESSES);
    AxiomReport {
        axiom,
        samples_checked,
        violations,
        passed: violations == 0,
        witnesses,
    }
}

/// Runs one axiom over `n_samples` sampled tuples.
pub fn check_axiom(
    space: &SpaceInstance,
    axiom: AxiomId,
    n_samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<AxiomReport> {
    let witnesses = sampled_violations(space, axiom.arity(), n_samples, seed, |tuple| {
        probe_axiom(space, axiom, tuple, tol)
    })?;
    Ok(report(axiom, n_samples, witnesses))
}

/// Axiom 1, reverse direction: distinct points must not share the four values
/// `F(x,x,x), F(y,y,y), F(z,z,z), F(x,y,z)`.
pub fn check_axiom_identity(
    space: &SpaceInstance,
    n_samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<AxiomReport> {
    check_axiom(space, AxiomId::Identity, n_samples, seed, tol)
}

/// Axiom 2: `0 <= F(x,x,x) <= F(x,x,y) <= F(x,y,z)`.
pub fn check_axiom_order(
    space: &SpaceInstance,
    n_samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<AxiomReport> {
    check_axiom(space, AxiomId::Order, n_samples, seed, tol)
}

/// Axiom 3: `F(x,y,z) <= C(x,x,a)F(x,x,a) + C(y,y,a)F(y,y,a) + C(z,z,a)F(z,z,a) - F(a,a,a)`.
pub fn check_axiom_controlled_triangle(
    space: &SpaceInstance,
    n_samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<AxiomReport> {
    check_axiom(space, AxiomId::ControlledTriangle, n_samples, seed, tol)
}

/// `F(x,x,y) = F(y,y,x)`.
pub fn check_symmetry(
    space: &SpaceInstance,
    n_samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<AxiomReport> {
    check_axiom(space, AxiomId::Symmetry, n_samples, seed, tol)
}

/// Every control value is central and above the unit.
pub fn check_control_admissibility(
    space: &SpaceInstance,
    n_samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<AxiomReport> {
    check_axiom(space, AxiomId::ControlAdmissible, n_samples, seed, tol)
}

/// A zero metric value forces the three points to coincide.
pub fn check_zero_implies_equal(
    space: &SpaceInstance,
    n_samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<AxiomReport> {
    check_axiom(space, AxiomId::ZeroImpliesEqual, n_samples, seed, tol)
}

/// Runs one axiom over every tuple of `points`.
pub fn enumerate_axiom(
    space: &SpaceInstance,
    axiom: AxiomId,
    points: &[Point],
    tol: Tolerance,
) -> Result<AxiomReport> {
    if points.is_empty() {
        return Err(Error::EmptySample);
    }
    let arity = axiom.arity();
    let total = points.len().pow(arity as u32);
    let found: Vec<Option<Witness>> = (0..total)
        .into_par_iter()
        .map(|mut k| {
            let mut tuple = Vec::with_capacity(arity);
            for _ in 0..arity {
                tuple.push(points[k % points.len()].clone());
                k /= points.len();
            }
            tuple.reverse();
            probe_axiom(space, axiom, &tuple, tol)
        })
        .collect::<Result<_>>()?;
    Ok(report(axiom, total, found.into_iter().flatten().collect()))
}

/// Evaluates the extended inequality, where the single factor `C(x,y,z)`
/// multiplies the whole right-hand side.
pub fn probe_extended(
    space: &SpaceInstance,
    points: &[Point],
    tol: Tolerance,
) -> Result<Option<Witness>> {
    let [x, y, z, a] = points else {
        return Err(Error::InvalidArgument(format!(
            "extended inequality takes 4 points, got {}",
            points.len()
        )));
    };
    let lhs = space.metric(x, y, z);
    let sum = &(&space.metric(x, x, a) + &space.metric(y, y, a)) + &space.metric(z, z, a);
    let rhs = &(&space.control(x, y, z) * &sum) - &space.metric(a, a, a);
    let (holds, margin) = order_slack(&lhs, &rhs, tol)?;
    if holds {
        return Ok(None);
    }
    let kind = failure_kind(&lhs, &rhs, tol)?;
    Ok(Some(Witness {
        points: points.to_vec(),
        lhs,
        rhs,
        margin,
        detail: Some(format!("extended inequality fails: {kind}")),
    }))
}

/// Searches sampled quadruples for a point where the extended (single
/// control factor) inequality fails. Returns the first one in sample order.
pub fn refute_extended(
    space: &SpaceInstance,
    n_samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<Option<Witness>> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument(
            "n_samples must be at least 1".into(),
        ));
    }
    if space.domain.grid().is_empty() {
        return Err(Error::EmptySample);
    }
    let first = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let tuple = space.sample_tuple(4, seed, i)?;
            probe_extended(space, &tuple, tol)
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    first.transpose().map(Option::flatten)
}
