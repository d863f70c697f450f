//! Picard iteration, the explicit Cauchy majorant from the convergence proof,
//! and a multi-start uniqueness probe.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Tolerance};
use crate::contraction::{coefficient_norm_condition, orbit, ContractionSpec};
use crate::error::{Error, Result};
use crate::space::{Point, SpaceInstance};

pub const DEFAULT_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub fixed_point: Point,
    pub iterations: usize,
    /// `|F(x*, x*, T x*)|`, recomputed at the returned point.
    pub residual: f64,
    /// `|F(x_n, x_n, x_{n+1})|` for every step taken.
    pub orbit_distances: Vec<f64>,
    pub converged: bool,
}

/// Iterates `x_{n+1} = T x_n` until `|F(x_n, x_n, x_{n+1})| <= eps` or
/// `max_iter` steps, then certifies the last iterate by its residual.
pub fn picard(
    space: &SpaceInstance,
    spec: &ContractionSpec,
    x0: &Point,
    tol: Tolerance,
    max_iter: usize,
) -> Result<FixedPointReport> {
    if max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
    }
    if !spec.in_domain(x0) {
        return Err(Error::DomainEscape {
            index: 0,
            point: x0.coords().to_vec(),
        });
    }
    let mut current = x0.clone();
    let mut distances = Vec::new();
    let mut settled = false;
    while distances.len() < max_iter {
        let next = spec.apply(&current);
        if !spec.in_domain(&next) {
            return Err(Error::DomainEscape {
                index: distances.len() + 1,
                point: next.coords().to_vec(),
            });
        }
        let d = space.distance(&current, &next);
        distances.push(d);
        current = next;
        if d <= tol.eps() {
            settled = true;
            break;
        }
    }
    let residual = space.distance(&current, &spec.apply(&current));
    Ok(FixedPointReport {
        fixed_point: current,
        iterations: distances.len(),
        residual,
        orbit_distances: distances,
        converged: settled && residual <= tol.eps(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheckReport {
    pub n: usize,
    pub q: usize,
    /// `|F(x_n, x_n, x_{n+q})|`.
    pub observed: f64,
    /// `2|S_0| [ |C(x_n,x_n,x_{n+1})| |S|^{2n} + (Y_{n+q-1} - Y_n) ]`.
    pub bound: f64,
    pub dominated: bool,
    /// `|S_0|` with `S_0 = F(x_0, x_0, x_1)`.
    pub s0_norm: f64,
    /// `|S|^2`.
    pub ratio: f64,
    /// `Y_1, ..., Y_{n+q-1}`.
    pub y_values: Vec<f64>,
}

/// Compares the observed distance `|F(x_n, x_n, x_{n+q})|` with the proof's
/// explicit majorant, where
///
/// `Y_m = sum_{i=1..m} |S|^{2i} |C(x_i,x_i,x_{i+1}) prod_{j=1..i} C(x_{n+q},x_{n+q},x_j)|`.
pub fn cauchy_bound_check(
    space: &SpaceInstance,
    spec: &ContractionSpec,
    x0: &Point,
    n: usize,
    q: usize,
    tol: Tolerance,
) -> Result<BoundCheckReport> {
    if n < 1 || q < 1 {
        return Err(Error::InvalidArgument(format!(
            "bound check needs n >= 1 and q >= 1, got n = {n}, q = {q}"
        )));
    }
    let ratio = coefficient_norm_condition(spec)
        .value("s_norm_sq")
        .expect("norm report always carries s_norm_sq");
    if ratio.is_nan() || ratio >= 1.0 {
        return Err(Error::NormBoundViolated { ratio });
    }
    let path = orbit(spec, x0, n + q)?;
    let c = |a: &Point, b: &Point| space.control(a, a, b);
    let s0_norm = space.metric(&path[0], &path[0], &path[1]).operator_norm();

    let far = &path[n + q];
    let mut y_values = Vec::with_capacity(n + q - 1);
    let mut running = 0.0;
    let mut product: Option<AlgebraElement> = None;
    for i in 1..n + q {
        let factor = c(far, &path[i]);
        let prod = match product.take() {
            Some(p) => &p * &factor,
            None => factor,
        };
        let term = (&c(&path[i], &path[i + 1]) * &prod).operator_norm();
        running += ratio.powi(i as i32) * term;
        y_values.push(running);
        product = Some(prod);
    }
    let y = |m: usize| y_values[m - 1];
    let lead = c(&path[n], &path[n + 1]).operator_norm() * ratio.powi(n as i32);
    let bound = 2.0 * s0_norm * (lead + (y(n + q - 1) - y(n)));
    let observed = space
        .metric(&path[n], &path[n], &path[n + q])
        .operator_norm();
    Ok(BoundCheckReport {
        n,
        q,
        observed,
        bound,
        dominated: observed <= bound + tol.eps(),
        s0_norm,
        ratio,
        y_values,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub passed: bool,
    pub starts: Vec<Point>,
    pub runs: Vec<FixedPointReport>,
    /// `max |F(a, a, b)|` over all pairs of returned points.
    pub spread: f64,
    /// Index of the first start whose run did not converge.
    pub failing_start: Option<usize>,
}

/// Runs [`picard`] from every start and checks that all runs land on the same
/// point, within `10 eps` in the metric.
pub fn uniqueness_probe(
    space: &SpaceInstance,
    spec: &ContractionSpec,
    starts: &[Point],
    tol: Tolerance,
    max_iter: usize,
) -> Result<UniquenessReport> {
    if starts.is_empty() {
        return Err(Error::InvalidArgument(
            "uniqueness probe needs at least one start".into(),
        ));
    }
    let runs = starts
        .par_iter()
        .map(|x0| picard(space, spec, x0, tol, max_iter))
        .collect::<Result<Vec<_>>>()?;
    let failing_start = runs.iter().position(|r| !r.converged);
    let mut spread: f64 = 0.0;
    for a in &runs {
        for b in &runs {
            spread = spread.max(space.distance(&a.fixed_point, &b.fixed_point));
        }
    }
    Ok(UniquenessReport {
        passed: failing_start.is_none() && spread <= 10.0 * tol.eps(),
        starts: starts.to_vec(),
        runs,
        spread,
        failing_start,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDescriptor;
    use crate::space::Domain;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn abs_space() -> SpaceInstance {
        let a = AlgebraDescriptor::matrix(2).unwrap();
        SpaceInstance::new(
            "abs",
            a,
            Domain::interval(0.0, 4.0, 0.25).unwrap(),
            move |x: &Point, y: &Point, z: &Point| {
                a.scalar((x.x() - z.x()).abs() + (y.x() - z.x()).abs())
            },
            move |_: &Point, _: &Point, _: &Point| a.unit(),
        )
        .unwrap()
    }

    fn identity(space: &SpaceInstance) -> ContractionSpec {
        let a = space.algebra();
        ContractionSpec::new(
            space,
            "id",
            |x: &Point| x.clone(),
            a.unit(),
            a.zero(),
            a.zero(),
        )
        .unwrap()
    }

    #[test]
    fn identity_map_has_many_fixed_points() {
        let space = abs_space();
        let spec = identity(&space);
        let starts = [Point::scalar(1.0), Point::scalar(3.0)];
        let r = uniqueness_probe(&space, &spec, &starts, tol(), 50).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failing_start, None);
        assert_eq!(r.runs[0].fixed_point, Point::scalar(1.0));
        assert_eq!(r.runs[1].fixed_point, Point::scalar(3.0));
        assert_eq!(r.spread, 4.0);
    }

    #[test]
    fn bound_rejects_non_contracting_coefficients() {
        let space = abs_space();
        let err = cauchy_bound_check(&space, &identity(&space), &Point::scalar(1.0), 1, 1, tol())
            .unwrap_err();
        assert!(matches!(err, Error::NormBoundViolated { .. }));
    }

    #[test]
    fn singleton_space_bound_is_zero() {
        let a = AlgebraDescriptor::matrix(2).unwrap();
        let space = SpaceInstance::new(
            "singleton",
            a,
            Domain::Finite(vec![Point::scalar(0.0)]),
            move |_: &Point, _: &Point, _: &Point| a.zero(),
            move |_: &Point, _: &Point, _: &Point| a.unit(),
        )
        .unwrap();
        let spec = ContractionSpec::new(
            &space,
            "id",
            |x: &Point| x.clone(),
            a.zero(),
            a.zero(),
            a.zero(),
        )
        .unwrap();
        let r = cauchy_bound_check(&space, &spec, &Point::scalar(0.0), 2, 3, tol()).unwrap();
        assert_eq!((r.observed, r.bound), (0.0, 0.0));
        assert!(r.dominated);
        assert_eq!(r.y_values.len(), 4);
    }

    #[test]
    fn picard_stops_at_max_iter() {
        let space = abs_space();
        let a = space.algebra();
        let spec = ContractionSpec::new(
            &space,
            "half",
            |x: &Point| Point::scalar(x.x() / 2.0),
            a.scalar(0.5),
            a.zero(),
            a.zero(),
        )
        .unwrap();
        let r = picard(&space, &spec, &Point::scalar(4.0), tol(), 3).unwrap();
        assert_eq!(r.iterations, 3);
        assert_eq!(r.orbit_distances, vec![4.0, 2.0, 1.0]);
        assert!(!r.converged);
        assert_eq!(r.fixed_point, Point::scalar(0.5));
        assert!(matches!(
            picard(&space, &spec, &Point::scalar(4.0), tol(), 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn empty_start_list_rejected() {
        let space = abs_space();
        assert!(uniqueness_probe(&space, &identity(&space), &[], tol(), 5).is_err());
    }
}
