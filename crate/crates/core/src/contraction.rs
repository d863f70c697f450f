//! The self-map `T` with coefficients `P, Q, R`, and numerical checks of each
//! hypothesis of the fixed-point theorem.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Tolerance};
use crate::error::{Error, Result};
use crate::space::{
    failure_kind, order_slack, sampled_violations, Domain, Point, SpaceInstance, Witness,
};

/// Default truncation of the inner limit in the sup-lim condition.
pub const DEFAULT_I_MAX: usize = 64;
/// Default truncation of the outer supremum in the sup-lim condition.
pub const DEFAULT_M_MAX: usize = 64;
/// Number of trailing terms a sequence must agree on to count as converged.
pub const TAIL_LEN: usize = 5;

const DOMAIN_PROBES: usize = 64;

pub type PointMap = Arc<dyn Fn(&Point) -> Point + Send + Sync>;

/// `T : X -> X` together with `P, Q, R`.
#[derive(Clone)]
pub struct ContractionSpec {
    name: String,
    map: PointMap,
    p: AlgebraElement,
    q: AlgebraElement,
    r: AlgebraElement,
    domain: Domain,
    domain_tol: f64,
}

impl fmt::Debug for ContractionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContractionSpec")
            .field("name", &self.name)
            .field("p", &self.p)
            .field("q", &self.q)
            .field("r", &self.r)
            .finish_non_exhaustive()
    }
}

impl ContractionSpec {
    /// Checks that `P, Q, R` live in the space's algebra and that `T` keeps
    /// the grid and a batch of sampled points inside the domain.
    pub fn new<T>(
        space: &SpaceInstance,
        name: impl Into<String>,
        map: T,
        p: AlgebraElement,
        q: AlgebraElement,
        r: AlgebraElement,
    ) -> Result<Self>
    where
        T: Fn(&Point) -> Point + Send + Sync + 'static,
    {
        let spec = Self {
            name: name.into(),
            map: Arc::new(map),
            p,
            q,
            r,
            domain: space.domain().clone(),
            domain_tol: space.point_eq_tol(),
        };
        spec.check_coefficients(space)?;

        let mut probes = space.domain().grid();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..DOMAIN_PROBES {
            probes.push(space.domain().sample(&mut rng)?);
        }
        for x in &probes {
            let image = spec.apply(x);
            if !spec.domain.contains(&image, spec.domain_tol) {
                return Err(Error::DomainEscape {
                    index: 1,
                    point: image.coords().to_vec(),
                });
            }
        }
        Ok(spec)
    }

    fn check_coefficients(&self, space: &SpaceInstance) -> Result<()> {
        let unit = space.algebra().unit();
        for c in [&self.p, &self.q, &self.r] {
            unit.same_algebra(c)?;
        }
        Ok(())
    }

    /// Same map with different coefficients.
    pub fn with_coefficients(
        &self,
        p: AlgebraElement,
        q: AlgebraElement,
        r: AlgebraElement,
    ) -> Result<Self> {
        p.same_algebra(&self.p)?;
        q.same_algebra(&self.p)?;
        r.same_algebra(&self.p)?;
        Ok(Self {
            p,
            q,
            r,
            ..self.clone()
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn p(&self) -> &AlgebraElement {
        &self.p
    }

    pub fn q(&self) -> &AlgebraElement {
        &self.q
    }

    pub fn r(&self) -> &AlgebraElement {
        &self.r
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// `T x`.
    pub fn apply(&self, x: &Point) -> Point {
        (self.map)(x)
    }

    pub fn in_domain(&self, x: &Point) -> bool {
        self.domain.contains(x, self.domain_tol)
    }

    /// `|S|^2 = (|P|^2 + |Q|^2) / (1 - |R|^2)`, or `+inf` once `|R| >= 1`.
    pub fn contraction_ratio(&self) -> f64 {
        let (p2, q2, r2) = self.norms_squared();
        if r2 >= 1.0 {
            return f64::INFINITY;
        }
        (p2 + q2) / (1.0 - r2)
    }

    fn norms_squared(&self) -> (f64, f64, f64) {
        let sq = |z: &AlgebraElement| z.operator_norm().powi(2);
        (sq(&self.p), sq(&self.q), sq(&self.r))
    }

    /// Right side of the sup-lim condition, `(1 - |R|^2) / (|P|^2 + |Q|^2)`;
    /// `+inf` when `P = Q = 0`.
    pub fn suplim_threshold(&self) -> f64 {
        let (p2, q2, r2) = self.norms_squared();
        if p2 + q2 == 0.0 {
            return f64::INFINITY;
        }
        (1.0 - r2) / (p2 + q2)
    }

    /// The Banach-contraction threshold `1 / |P|^2`, meaningful when `Q = R = 0`.
    pub fn corollary_threshold(&self) -> f64 {
        let p2 = self.p.operator_norm().powi(2);
        if p2 == 0.0 {
            return f64::INFINITY;
        }
        1.0 / p2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisId {
    Contractive,
    NormBound,
    Suplim,
    ControlLimits,
}

impl HypothesisId {
    pub const ALL: [HypothesisId; 4] = [
        HypothesisId::Contractive,
        HypothesisId::NormBound,
        HypothesisId::Suplim,
        HypothesisId::ControlLimits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HypothesisId::Contractive => "contractive",
            HypothesisId::NormBound => "norm_bound",
            HypothesisId::Suplim => "suplim",
            HypothesisId::ControlLimits => "control_limits",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|h| h.name() == name)
    }
}

impl fmt::Display for HypothesisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub condition: HypothesisId,
    pub passed: bool,
    /// Named numbers behind the verdict; infinite values serialize as `null`.
    pub computed_values: BTreeMap<String, f64>,
    pub witnesses: Vec<Witness>,
}

impl HypothesisReport {
    fn new(condition: HypothesisId) -> Self {
        Self {
            condition,
            passed: false,
            computed_values: BTreeMap::new(),
            witnesses: Vec::new(),
        }
    }

    fn set(&mut self, name: &str, value: f64) {
        self.computed_values.insert(name.to_string(), value);
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.computed_values.get(name).copied()
    }
}

/// Both sides of the contractive inequality at `(x, y)`:
/// `F(Tx,Tx,Ty)` and `P* F(x,x,y) P + Q* F(x,x,Tx) Q + R* F(y,y,Ty) R`.
pub fn contraction_sides(
    space: &SpaceInstance,
    spec: &ContractionSpec,
    x: &Point,
    y: &Point,
) -> (AlgebraElement, AlgebraElement) {
    let tx = spec.apply(x);
    let ty = spec.apply(y);
    let lhs = space.metric(&tx, &tx, &ty);
    let sandwich = |c: &AlgebraElement, v: AlgebraElement| &(&c.adjoint() * &v) * c;
    let rhs = &(&sandwich(&spec.p, space.metric(x, x, y))
        + &sandwich(&spec.q, space.metric(x, x, &tx)))
        + &sandwich(&spec.r, space.metric(y, y, &ty));
    (lhs, rhs)
}

fn contraction_probe(
    space: &SpaceInstance,
    spec: &ContractionSpec,
    x: &Point,
    y: &Point,
    tol: Tolerance,
) -> Result<(f64, Option<Witness>)> {
    let (lhs, rhs) = contraction_sides(space, spec, x, y);
    let gap = lhs.distance(&rhs);
    let (holds, margin) = order_slack(&lhs, &rhs, tol)?;
    if holds {
        return Ok((gap, None));
    }
    let kind = failure_kind(&lhs, &rhs, tol)?;
    let witness = Witness {
        points: vec![x.clone(), y.clone()],
        lhs,
        rhs,
        margin,
        detail: Some(kind.into()),
    };
    Ok((gap, Some(witness)))
}

fn contraction_report(samples: usize, probes: Vec<(f64, Option<Witness>)>) -> HypothesisReport {
    let mut report = HypothesisReport::new(HypothesisId::Contractive);
    let max_gap = probes.iter().fold(0.0_f64, |m, (g, _)| m.max(*g));
    let mut witnesses: Vec<Witness> = probes.into_iter().filter_map(|(_, w)| w).collect();
    let min_margin = witnesses
        .iter()
        .map(|w| w.margin)
        .fold(f64::INFINITY, f64::min);
    report.set("samples", samples as f64);
    report.set("violations", witnesses.len() as f64);
    report.set("max_side_gap", max_gap);
    if min_margin.is_finite() {
        report.set("worst_margin", min_margin);
    }
    report.passed = witnesses.is_empty();
    witnesses.truncate(crate::space::MAX_STORED_WITNESSES);
    report.witnesses = witnesses;
    report
}

/// Checks `F(Tx,Tx,Ty) <= P*F(x,x,y)P + Q*F(x,x,Tx)Q + R*F(y,y,Ty)R` on
/// sampled pairs. `max_side_gap` records `max |lhs - rhs|`, which is zero
/// when the inequality holds with equality.
pub fn verify_contraction_inequality(
    space: &SpaceInstance,
    spec: &ContractionSpec,
    n_samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<HypothesisReport> {
    let probes = sampled_violations(space, 2, n_samples, seed, |pair| {
        contraction_probe(space, spec, &pair[0], &pair[1], tol).map(Some)
    })?;
    Ok(contraction_report(n_samples, probes))
}

/// The contractive inequality at consecutive pairs `(points[k], points[k+1])`,
/// typically an orbit.
pub fn verify_contraction_along(
    space: &SpaceInstance,
    spec: &ContractionSpec,
    points: &[Point],
    tol: Tolerance,
) -> Result<HypothesisReport> {
    let probes = points
        .windows(2)
        .map(|w| contraction_probe(space, spec, &w[0], &w[1], tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(contraction_report(probes.len(), probes))
}

/// `|P|^2 + |Q|^2 + |R|^2 < 1`, together with the derived ratio `|S|^2`.
pub fn coefficient_norm_condition(spec: &ContractionSpec) -> HypothesisReport {
    let (p2, q2, r2) = spec.norms_squared();
    let sum = p2 + q2 + r2;
    let mut report = HypothesisReport::new(HypothesisId::NormBound);
    report.set("p_norm_sq", p2);
    report.set("q_norm_sq", q2);
    report.set("r_norm_sq", r2);
    report.set("sum", sum);
    report.set("s_norm_sq", spec.contraction_ratio());
    report.passed = sum < 1.0;
    report
}

/// `[x0, T x0, ..., T^n x0]`.
pub fn orbit(spec: &ContractionSpec, x0: &Point, n: usize) -> Result<Vec<Point>> {
    let mut points = Vec::with_capacity(n + 1);
    let mut x = x0.clone();
    for index in 0..=n {
        if !spec.in_domain(&x) {
            return Err(Error::DomainEscape {
                index,
                point: x.coords().to_vec(),
            });
        }
        if index < n {
            let next = spec.apply(&x);
            points.push(std::mem::replace(&mut x, next));
        } else {
            points.push(x.clone());
        }
    }
    Ok(points)
}

/// Estimates `sup_{m>=1} lim_i |C(x_{i+1},x_{i+1},x_{i+2}) C(x_{i+1},x_{i+1},x_m)|`
/// along the orbit of `x0` and compares it against the threshold
/// `(1 - |R|^2) / (|P|^2 + |Q|^2)`.
///
/// The inner limit is the value at `i = i_max` once the last five terms agree
/// to within `eps * (1 + value)`; the supremum runs over `m = 1..=m_max`.
pub fn verify_suplim(
    space: &SpaceInstance,
    spec: &ContractionSpec,
    x0: &Point,
    m_max: usize,
    i_max: usize,
    tol: Tolerance,
) -> Result<HypothesisReport> {
    if m_max < 1 || i_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "sup-lim needs m_max >= 1 and i_max >= 2, got m_max = {m_max}, i_max = {i_max}"
        )));
    }
    let path = orbit(spec, x0, (i_max + 2).max(m_max))?;
    let term = |i: usize, m: usize| {
        let head = &path[i + 1];
        (&space.control(head, head, &path[i + 2]) * &space.control(head, head, &path[m]))
            .operator_norm()
    };

    let tail_start = i_max + 1 - TAIL_LEN.min(i_max + 1);
    let mut estimate = f64::NEG_INFINITY;
    let mut argmax = 1;
    for m in 1..=m_max {
        let limit = term(i_max, m);
        let oscillation = (tail_start..i_max)
            .map(|i| (term(i, m) - limit).abs())
            .fold(0.0, f64::max);
        let allowed = tol.eps() * (1.0 + limit);
        if oscillation > allowed || !limit.is_finite() {
            return Err(Error::TailNotConverged {
                m,
                oscillation,
                allowed,
            });
        }
        if limit > estimate {
            estimate = limit;
            argmax = m;
        }
    }

    let threshold = spec.suplim_threshold();
    let mut report = HypothesisReport::new(HypothesisId::Suplim);
    report.set("estimate", estimate);
    report.set("threshold", threshold);
    report.set("argmax_m", argmax as f64);
    report.set("m_max", m_max as f64);
    report.set("i_max", i_max as f64);
    report.passed = threshold.is_infinite() || estimate < threshold;
    Ok(report)
}

/// Whether `lim |C(x,x,x_n)|` and `lim |C(x_n,x_n,x)|` exist and are finite
/// along the orbit of `x0`, judged on the last five of `n_max + 1` terms.
pub fn verify_control_limits(
    space: &SpaceInstance,
    spec: &ContractionSpec,
    x: &Point,
    x0: &Point,
    n_max: usize,
    tol: Tolerance,
) -> Result<HypothesisReport> {
    if n_max < 10 {
        return Err(Error::InvalidArgument(format!(
            "control limits need n_max >= 10, got {n_max}"
        )));
    }
    let path = orbit(spec, x0, n_max)?;
    let forward: Vec<f64> = path
        .iter()
        .map(|p| space.control(x, x, p).operator_norm())
        .collect();
    let backward: Vec<f64> = path
        .iter()
        .map(|p| space.control(p, p, x).operator_norm())
        .collect();

    let mut report = HypothesisReport::new(HypothesisId::ControlLimits);
    let mut passed = true;
    for (name, seq) in [("forward", &forward), ("backward", &backward)] {
        let tail = &seq[seq.len() - TAIL_LEN..];
        let last = *tail.last().expect("tail is nonempty");
        let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let oscillation = hi - lo;
        let bounded = seq.iter().all(|v| v.is_finite());
        let stable = oscillation <= tol.eps() * (1.0 + last.abs());
        report.set(&format!("{name}_limit"), last);
        report.set(&format!("{name}_oscillation"), oscillation);
        passed &= bounded && stable;
    }
    report.passed = passed;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDescriptor;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn m2() -> AlgebraDescriptor {
        AlgebraDescriptor::matrix(2).unwrap()
    }

    // max-based metric on [0, 4] with C = (2 + max) I
    fn interval_space() -> SpaceInstance {
        let a = m2();
        SpaceInstance::new(
            "interval",
            a,
            Domain::interval(0.0, 4.0, 0.25).unwrap(),
            move |x: &Point, y: &Point, z: &Point| a.scalar(x.x().max(z.x()) + y.x().max(z.x())),
            move |x: &Point, y: &Point, z: &Point| a.scalar(2.0 + x.x().max(y.x()).max(z.x())),
        )
        .unwrap()
    }

    fn eighth(space: &SpaceInstance) -> ContractionSpec {
        let a = m2();
        ContractionSpec::new(
            space,
            "x/8",
            |x: &Point| Point::scalar(x.x() / 8.0),
            a.scalar(1.0 / (2.0 * 2f64.sqrt())),
            a.zero(),
            a.zero(),
        )
        .unwrap()
    }

    fn identity(space: &SpaceInstance, p: AlgebraElement) -> ContractionSpec {
        let a = m2();
        ContractionSpec::new(space, "id", |x: &Point| x.clone(), p, a.zero(), a.zero()).unwrap()
    }

    #[test]
    fn eighth_map_is_contractive_with_equality() {
        let space = interval_space();
        let r = verify_contraction_inequality(&space, &eighth(&space), 2_000, 4, tol()).unwrap();
        assert!(r.passed);
        assert!(r.value("max_side_gap").unwrap() <= 1e-12);
    }

    #[test]
    fn identity_with_unit_coefficient_is_contractive() {
        let space = interval_space();
        let spec = identity(&space, m2().unit());
        let r = verify_contraction_inequality(&space, &spec, 500, 4, tol()).unwrap();
        assert!(r.passed);
        assert_eq!(r.value("max_side_gap"), Some(0.0));
    }

    #[test]
    fn identity_with_small_coefficient_is_not() {
        let space = interval_space();
        let spec = identity(&space, m2().scalar(1.0 / (2.0 * 2f64.sqrt())));
        let r = verify_contraction_inequality(&space, &spec, 500, 4, tol()).unwrap();
        assert!(!r.passed);
        // lhs = 2 max I, rhs = 2 max / 8 I; slack = -(7/8) 2 max
        for w in &r.witnesses {
            let big = w.points[0].x().max(w.points[1].x());
            assert!((w.margin + 1.75 * big).abs() < 1e-12);
        }
    }

    #[test]
    fn norm_condition_examples() {
        let space = interval_space();
        let r = coefficient_norm_condition(&eighth(&space));
        assert!(r.passed);
        assert!((r.value("sum").unwrap() - 0.125).abs() < 1e-15);
        assert!((r.value("s_norm_sq").unwrap() - 0.125).abs() < 1e-15);

        let zero = identity(&space, m2().zero());
        let r = coefficient_norm_condition(&zero);
        assert!(r.passed);
        assert_eq!(r.value("s_norm_sq"), Some(0.0));

        let r = coefficient_norm_condition(&identity(&space, m2().unit()));
        assert!(!r.passed);
        assert_eq!(r.value("sum"), Some(1.0));
    }

    #[test]
    fn orbit_examples() {
        let space = interval_space();
        let spec = eighth(&space);
        let xs: Vec<f64> = orbit(&spec, &Point::scalar(4.0), 3)
            .unwrap()
            .iter()
            .map(Point::x)
            .collect();
        assert_eq!(xs, vec![4.0, 0.5, 0.0625, 0.0078125]);
        assert_eq!(
            orbit(&spec, &Point::scalar(2.0), 0).unwrap(),
            vec![Point::scalar(2.0)]
        );
        let id = identity(&space, m2().unit());
        assert_eq!(
            orbit(&id, &Point::scalar(1.5), 5).unwrap(),
            vec![Point::scalar(1.5); 6]
        );
    }

    #[test]
    fn orbit_reports_escape() {
        let space = interval_space();
        let spec = eighth(&space);
        let err = orbit(&spec, &Point::scalar(5.0), 2).unwrap_err();
        assert!(matches!(err, Error::DomainEscape { index: 0, .. }));
    }

    #[test]
    fn escaping_map_rejected_at_construction() {
        let space = interval_space();
        let a = m2();
        let err = ContractionSpec::new(
            &space,
            "double",
            |x: &Point| Point::scalar(2.0 * x.x()),
            a.zero(),
            a.zero(),
            a.zero(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DomainEscape { .. }));
    }

    #[test]
    fn suplim_examples() {
        let space = interval_space();
        let spec = eighth(&space);
        let r = verify_suplim(&space, &spec, &Point::scalar(4.0), 64, 64, tol()).unwrap();
        assert!(r.passed);
        assert!((r.value("estimate").unwrap() - 5.0).abs() < 1e-9);
        assert!((r.value("threshold").unwrap() - 8.0).abs() < 1e-9);
        assert_eq!(r.value("argmax_m"), Some(1.0));

        let r = verify_suplim(&space, &spec, &Point::scalar(0.0), 64, 64, tol()).unwrap();
        assert!((r.value("estimate").unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn suplim_with_unit_control() {
        let a = m2();
        let space = SpaceInstance::new(
            "unit control",
            a,
            Domain::interval(0.0, 4.0, 0.25).unwrap(),
            move |x: &Point, _: &Point, z: &Point| a.scalar((x.x() - z.x()).abs()),
            move |_: &Point, _: &Point, _: &Point| a.unit(),
        )
        .unwrap();
        let r = verify_suplim(&space, &eighth(&space), &Point::scalar(3.0), 16, 16, tol()).unwrap();
        assert_eq!(r.value("estimate"), Some(1.0));
        assert!(r.passed);
    }

    #[test]
    fn suplim_vacuous_without_p_and_q() {
        let space = interval_space();
        let spec = eighth(&space)
            .with_coefficients(m2().zero(), m2().zero(), m2().scalar(0.5))
            .unwrap();
        let r = verify_suplim(&space, &spec, &Point::scalar(4.0), 8, 24, tol()).unwrap();
        assert!(r.passed);
        assert_eq!(r.value("threshold"), Some(f64::INFINITY));
    }

    fn flip_space() -> (SpaceInstance, ContractionSpec) {
        let a = m2();
        let space = SpaceInstance::new(
            "flip",
            a,
            Domain::naturals(1),
            move |x: &Point, _: &Point, z: &Point| a.scalar((x.x() - z.x()).abs()),
            move |_: &Point, _: &Point, z: &Point| a.scalar(2.0 + z.x()),
        )
        .unwrap();
        let spec = ContractionSpec::new(
            &space,
            "1 - x",
            |x: &Point| Point::scalar(1.0 - x.x()),
            a.zero(),
            a.zero(),
            a.zero(),
        )
        .unwrap();
        (space, spec)
    }

    #[test]
    fn suplim_detects_unsettled_tail() {
        let (space, spec) = flip_space();
        let err = verify_suplim(&space, &spec, &Point::scalar(0.0), 4, 10, tol()).unwrap_err();
        assert!(matches!(err, Error::TailNotConverged { .. }));
    }

    #[test]
    fn control_limit_examples() {
        let space = interval_space();
        let spec = eighth(&space);
        let r = verify_control_limits(
            &space,
            &spec,
            &Point::scalar(0.0),
            &Point::scalar(4.0),
            40,
            tol(),
        )
        .unwrap();
        assert!(r.passed);
        assert!((r.value("forward_limit").unwrap() - 2.0).abs() < 1e-12);
        assert!((r.value("backward_limit").unwrap() - 2.0).abs() < 1e-12);

        let (space, spec) = flip_space();
        let r = verify_control_limits(
            &space,
            &spec,
            &Point::scalar(0.0),
            &Point::scalar(0.0),
            20,
            tol(),
        )
        .unwrap();
        assert!(!r.passed);
        assert_eq!(r.value("forward_oscillation"), Some(1.0));
    }

    #[test]
    fn constant_control_limits_equal_its_norm() {
        let a = m2();
        let space = SpaceInstance::new(
            "const",
            a,
            Domain::interval(0.0, 4.0, 0.5).unwrap(),
            move |x: &Point, _: &Point, z: &Point| a.scalar((x.x() - z.x()).abs()),
            move |_: &Point, _: &Point, _: &Point| a.scalar(3.0),
        )
        .unwrap();
        let r = verify_control_limits(
            &space,
            &eighth(&space),
            &Point::scalar(1.0),
            &Point::scalar(4.0),
            12,
            tol(),
        )
        .unwrap();
        assert!(r.passed);
        assert_eq!(r.value("forward_limit"), Some(3.0));
    }
}
