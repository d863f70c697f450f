//! Config-driven runs behind the `fcmetric` binary.
//!
//! A run is described by a single JSON document ([`RunConfig`]). `check`
//! evaluates the named axioms and hypotheses; `solve` verifies the
//! hypotheses, runs the Picard iteration and tabulates the Cauchy bound.
//! Both produce a [`RunReport`] and an exit code: 0 when everything passed,
//! 1 when some check failed or the solve did not converge, 2 when the run
//! could not start.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Tolerance};
use crate::contraction::{
    coefficient_norm_condition, verify_contraction_inequality, verify_control_limits,
    verify_suplim, ContractionSpec, HypothesisId, HypothesisReport, DEFAULT_I_MAX, DEFAULT_M_MAX,
};
use crate::error::Error;
use crate::families::{build_example_interval, build_example_naturals, ExampleConfig, Family};
use crate::solver::{
    cauchy_bound_check, picard, uniqueness_probe, BoundCheckReport, FixedPointReport,
    UniquenessReport, DEFAULT_MAX_ITER,
};
use crate::space::{check_axiom, refute_extended, AxiomId, Point, SpaceInstance, Witness};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Orbit length used by the control-limit check.
const CONTROL_LIMIT_TERMS: usize = 64;

/// A configuration or usage problem; the run never started.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("configuration error: {0}")]
pub struct ConfigError(pub String);

impl From<Error> for ConfigError {
    fn from(e: Error) -> Self {
        ConfigError(e.to_string())
    }
}

fn default_checks() -> Vec<String> {
    vec!["all".into()]
}
fn default_samples() -> usize {
    10_000
}
fn default_tol() -> f64 {
    Tolerance::DEFAULT_EPS
}
fn default_m_max() -> usize {
    DEFAULT_M_MAX
}
fn default_i_max() -> usize {
    DEFAULT_I_MAX
}
fn default_max_iter() -> usize {
    DEFAULT_MAX_ITER
}
fn default_bound_max() -> usize {
    6
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractionConfig {
    /// `"scale"` (`x -> factor * x`) or `"identity"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<f64>,
    /// Row-major entries of `P`, `Q`, `R`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub family: String,
    /// `n_cap` for `naturals_r2`, `grid_step` for `interval_m2`.
    #[serde(default)]
    pub family_params: BTreeMap<String, f64>,
    /// Overrides of the family's default contraction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contraction: Option<ContractionConfig>,
    #[serde(default = "default_checks")]
    pub checks: Vec<String>,
    #[serde(default = "default_samples")]
    pub n_samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_m_max")]
    pub m_max: usize,
    #[serde(default = "default_i_max")]
    pub i_max: usize,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub starts: Option<Vec<Vec<f64>>>,
    /// Bound table covers `n, q` in `1..=bound_max`.
    #[serde(default = "default_bound_max")]
    pub bound_max: usize,
    /// Solve even when a hypothesis fails.
    #[serde(default)]
    pub force: bool,
}

impl RunConfig {
    pub fn for_family(family: &str) -> Self {
        serde_json::from_value(serde_json::json!({ "family": family }))
            .expect("defaults deserialize")
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text)
            .map_err(|e| ConfigError(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn tolerance(&self) -> Result<Tolerance, ConfigError> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(ConfigError(format!(
                "field `tol`: must be positive, got {}",
                self.tol
            )));
        }
        Ok(Tolerance::new(self.tol)?)
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    RunConfig::from_json(&text).map_err(|e| ConfigError(format!("{}: {}", path.display(), e.0)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub id: String,
    pub passed: bool,
    pub computed_values: BTreeMap<String, f64>,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl From<HypothesisReport> for CheckEntry {
    fn from(r: HypothesisReport) -> Self {
        Self {
            id: r.condition.name().into(),
            passed: r.passed,
            computed_values: r.computed_values,
            witnesses: r.witnesses,
            error: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveSection {
    pub attempted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_point: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orbit_distances: Vec<f64>,
    pub bound_checks: Vec<BoundCheckReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniqueness: Option<UniquenessReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config_echo: RunConfig,
    pub checks: Vec<CheckEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveSection>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: RunReport,
}

struct Resolved {
    /// The config with the family's effective parameters filled in.
    echo: RunConfig,
    space: SpaceInstance,
    spec: Option<ContractionSpec>,
    tol: Tolerance,
    x0: Point,
    starts: Vec<Point>,
}

fn family_param(config: &RunConfig, key: &str) -> Option<f64> {
    config.family_params.get(key).copied()
}

fn point(coords: &[f64], field: &str) -> Result<Point, ConfigError> {
    Point::new(coords.to_vec()).map_err(|e| ConfigError(format!("field `{field}`: {e}")))
}

fn coefficient(
    space: &SpaceInstance,
    entries: Option<&Vec<f64>>,
    default: &AlgebraElement,
    field: &str,
) -> Result<AlgebraElement, ConfigError> {
    match entries {
        None => Ok(default.clone()),
        Some(e) => AlgebraElement::new(space.algebra(), e.clone())
            .map_err(|err| ConfigError(format!("field `contraction.{field}`: {err}"))),
    }
}

fn resolve(config: &RunConfig) -> Result<Resolved, ConfigError> {
    let family = Family::from_name(&config.family).ok_or_else(|| {
        ConfigError(format!(
            "field `family`: unknown family `{}`",
            config.family
        ))
    })?;
    for key in config.family_params.keys() {
        if !matches!(key.as_str(), "n_cap" | "grid_step") {
            return Err(ConfigError(format!(
                "field `family_params`: unknown key `{key}`"
            )));
        }
    }
    if config.n_samples == 0 {
        return Err(ConfigError("field `n_samples`: must be at least 1".into()));
    }
    let tol = config.tolerance()?;

    let mut example = ExampleConfig::new(family);
    if let Some(cap) = family_param(config, "n_cap") {
        if cap < 0.0 || cap.fract() != 0.0 {
            return Err(ConfigError(format!(
                "field `family_params.n_cap`: not an integer: {cap}"
            )));
        }
        example.n_cap = cap as u64;
    }
    if let Some(step) = family_param(config, "grid_step") {
        example.grid_step = step;
    }
    let mut echo = config.clone();
    match family {
        Family::NaturalsR2 => echo
            .family_params
            .insert("n_cap".into(), example.n_cap as f64),
        Family::IntervalM2 => echo
            .family_params
            .insert("grid_step".into(), example.grid_step),
    };
    let (space, default_spec) = match family {
        Family::NaturalsR2 => (build_example_naturals(&example)?, None),
        Family::IntervalM2 => {
            let (s, c) = build_example_interval(&example)?;
            (s, Some(c))
        }
    };

    let spec = match (&config.contraction, default_spec) {
        (None, spec) => spec,
        (Some(cc), base) => {
            let zero = space.algebra().zero();
            let (dp, dq, dr) = match &base {
                Some(b) => (b.p().clone(), b.q().clone(), b.r().clone()),
                None => (zero.clone(), zero.clone(), zero.clone()),
            };
            let p = coefficient(&space, cc.p.as_ref(), &dp, "p")?;
            let q = coefficient(&space, cc.q.as_ref(), &dq, "q")?;
            let r = coefficient(&space, cc.r.as_ref(), &dr, "r")?;
            let spec = match (cc.map.as_deref(), base) {
                (None, Some(b)) if cc.factor.is_none() => b.with_coefficients(p, q, r)?,
                (None, None) if cc.factor.is_none() => {
                    return Err(ConfigError(format!(
                        "field `contraction.map`: family `{family}` has no default map"
                    )))
                }
                (None | Some("scale"), _) => {
                    let factor = cc.factor.ok_or_else(|| {
                        ConfigError("field `contraction.factor`: required for map `scale`".into())
                    })?;
                    ContractionSpec::new(
                        &space,
                        format!("{factor}*x"),
                        move |x: &Point| {
                            Point::new(x.coords().iter().map(|c| factor * c).collect())
                                .expect("finite image")
                        },
                        p,
                        q,
                        r,
                    )
                    .map_err(|e| ConfigError(format!("field `contraction`: {e}")))?
                }
                (Some("identity"), _) => {
                    ContractionSpec::new(&space, "identity", |x: &Point| x.clone(), p, q, r)?
                }
                (Some(other), _) => {
                    return Err(ConfigError(format!(
                        "field `contraction.map`: unknown map `{other}`"
                    )))
                }
            };
            Some(spec)
        }
    };

    let x0 = match &config.x0 {
        Some(c) => point(c, "x0")?,
        None => Point::scalar(match family {
            Family::IntervalM2 => 4.0,
            Family::NaturalsR2 => 1.0,
        }),
    };
    if !space.domain().contains(&x0, space.point_eq_tol()) {
        return Err(ConfigError(format!(
            "field `x0`: {x0} is outside the domain"
        )));
    }
    let starts = match &config.starts {
        Some(list) if list.is_empty() => {
            return Err(ConfigError("field `starts`: must not be empty".into()))
        }
        Some(list) => list
            .iter()
            .map(|c| point(c, "starts"))
            .collect::<Result<Vec<_>, _>>()?,
        None => vec![x0.clone()],
    };
    if let Some(bad) = starts
        .iter()
        .find(|s| !space.domain().contains(s, space.point_eq_tol()))
    {
        return Err(ConfigError(format!(
            "field `starts`: {bad} is outside the domain"
        )));
    }
    Ok(Resolved {
        echo,
        space,
        spec,
        tol,
        x0,
        starts,
    })
}

enum CheckName {
    Axiom(AxiomId),
    Extended,
    Hypothesis(HypothesisId),
}

fn expand_checks(config: &RunConfig, has_spec: bool) -> Result<Vec<CheckName>, ConfigError> {
    let mut out = Vec::new();
    for name in &config.checks {
        if name == "all" {
            out.extend(AxiomId::ALL.map(CheckName::Axiom));
            if has_spec {
                out.extend(HypothesisId::ALL.map(CheckName::Hypothesis));
            }
        } else if let Some(a) = AxiomId::from_name(name) {
            out.push(CheckName::Axiom(a));
        } else if name == "extended" {
            out.push(CheckName::Extended);
        } else if let Some(h) = HypothesisId::from_name(name) {
            if !has_spec {
                return Err(ConfigError(format!(
                    "field `checks`: `{name}` needs a contraction"
                )));
            }
            out.push(CheckName::Hypothesis(h));
        } else {
            return Err(ConfigError(format!(
                "field `checks`: unknown check `{name}`"
            )));
        }
    }
    if out.is_empty() {
        return Err(ConfigError("field `checks`: nothing to run".into()));
    }
    Ok(out)
}

fn failed_entry(id: &str, err: Error) -> CheckEntry {
    CheckEntry {
        id: id.into(),
        passed: false,
        computed_values: BTreeMap::new(),
        witnesses: Vec::new(),
        error: Some(err.to_string()),
    }
}

fn hypothesis_entry(
    config: &RunConfig,
    r: &Resolved,
    spec: &ContractionSpec,
    h: HypothesisId,
) -> Result<CheckEntry, ConfigError> {
    let entry = match h {
        HypothesisId::Contractive => {
            verify_contraction_inequality(&r.space, spec, config.n_samples, config.seed, r.tol)?
                .into()
        }
        HypothesisId::NormBound => coefficient_norm_condition(spec).into(),
        HypothesisId::Suplim => {
            match verify_suplim(&r.space, spec, &r.x0, config.m_max, config.i_max, r.tol) {
                Ok(rep) => rep.into(),
                Err(e @ Error::TailNotConverged { .. }) => failed_entry(h.name(), e),
                Err(e) => return Err(e.into()),
            }
        }
        HypothesisId::ControlLimits => {
            let mut entry = CheckEntry {
                id: h.name().into(),
                passed: true,
                computed_values: BTreeMap::new(),
                witnesses: Vec::new(),
                error: None,
            };
            let mut probes = vec![r.x0.clone()];
            for s in &r.starts {
                if !probes.contains(s) {
                    probes.push(s.clone());
                }
            }
            for x in &probes {
                let rep =
                    verify_control_limits(&r.space, spec, x, &r.x0, CONTROL_LIMIT_TERMS, r.tol)?;
                entry.passed &= rep.passed;
                for (k, v) in rep.computed_values {
                    entry.computed_values.insert(format!("{k}[x={x}]"), v);
                }
            }
            entry
        }
    };
    Ok(entry)
}

fn exit_for(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

/// Runs every configured check.
pub fn run_check(config: &RunConfig) -> Result<Outcome, ConfigError> {
    let r = resolve(config)?;
    let mut checks = Vec::new();
    for name in expand_checks(config, r.spec.is_some())? {
        let entry = match name {
            CheckName::Axiom(a) => {
                let rep = check_axiom(&r.space, a, config.n_samples, config.seed, r.tol)?;
                CheckEntry {
                    id: a.name().into(),
                    passed: rep.passed,
                    computed_values: BTreeMap::from([
                        ("samples_checked".to_string(), rep.samples_checked as f64),
                        ("violations".to_string(), rep.violations as f64),
                    ]),
                    witnesses: rep.witnesses,
                    error: None,
                }
            }
            CheckName::Extended => {
                let found = refute_extended(&r.space, config.n_samples, config.seed, r.tol)?;
                CheckEntry {
                    id: "extended".into(),
                    passed: found.is_none(),
                    computed_values: BTreeMap::from([(
                        "samples_checked".to_string(),
                        config.n_samples as f64,
                    )]),
                    witnesses: found.into_iter().collect(),
                    error: None,
                }
            }
            CheckName::Hypothesis(h) => {
                let spec = r.spec.as_ref().expect("checked in expand_checks");
                hypothesis_entry(config, &r, spec, h)?
            }
        };
        checks.push(entry);
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(Outcome {
        exit_code: exit_for(passed),
        report: RunReport {
            config_echo: r.echo,
            checks,
            solve: None,
        },
    })
}

/// Verifies the theorem's hypotheses, then solves and tabulates the bound.
pub fn run_solve(config: &RunConfig) -> Result<Outcome, ConfigError> {
    let r = resolve(config)?;
    let spec = r.spec.as_ref().ok_or_else(|| {
        ConfigError(format!(
            "field `contraction`: family `{}` needs an explicit contraction to solve",
            config.family
        ))
    })?;
    let checks = HypothesisId::ALL
        .into_iter()
        .map(|h| hypothesis_entry(config, &r, spec, h))
        .collect::<Result<Vec<_>, _>>()?;
    let hypotheses_hold = checks.iter().all(|c| c.passed);

    let mut solve = SolveSection {
        attempted: false,
        fixed_point: None,
        residual: None,
        iterations: None,
        converged: false,
        orbit_distances: Vec::new(),
        bound_checks: Vec::new(),
        uniqueness: None,
    };
    let mut passed = hypotheses_hold;
    if hypotheses_hold || config.force {
        let run: FixedPointReport = picard(&r.space, spec, &r.x0, r.tol, config.max_iter)?;
        solve.attempted = true;
        solve.fixed_point = Some(run.fixed_point);
        solve.residual = Some(run.residual);
        solve.iterations = Some(run.iterations);
        solve.converged = run.converged;
        solve.orbit_distances = run.orbit_distances;
        passed &= run.converged;

        if spec.contraction_ratio() < 1.0 {
            for n in 1..=config.bound_max {
                for q in 1..=config.bound_max {
                    let b = cauchy_bound_check(&r.space, spec, &r.x0, n, q, r.tol)?;
                    passed &= b.dominated;
                    solve.bound_checks.push(b);
                }
            }
        }
        let uniq = uniqueness_probe(&r.space, spec, &r.starts, r.tol, config.max_iter)?;
        passed &= uniq.passed;
        solve.uniqueness = Some(uniq);
    }
    Ok(Outcome {
        exit_code: exit_for(passed),
        report: RunReport {
            config_echo: r.echo,
            checks,
            solve: Some(solve),
        },
    })
}

const SUMMARY_WITNESSES: usize = 3;

use crate::space::format_number as num;

fn point_list(points: &[Point]) -> String {
    let parts: Vec<String> = points.iter().map(Point::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Human-readable rendering. Every number printed here is also present in
/// the JSON report.
pub fn summary(report: &RunReport) -> String {
    let c = &report.config_echo;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "family {}  seed {}  samples {}  tol {}",
        c.family,
        c.seed,
        c.n_samples,
        num(c.tol)
    );
    for check in &report.checks {
        let verdict = if check.passed { "PASS" } else { "FAIL" };
        let values: Vec<String> = check
            .computed_values
            .iter()
            .map(|(k, v)| format!("{k}={}", num(*v)))
            .collect();
        let _ = writeln!(s, "[{verdict}] {:<20} {}", check.id, values.join(" "));
        if let Some(e) = &check.error {
            let _ = writeln!(s, "       error: {e}");
        }
        for w in check.witnesses.iter().take(SUMMARY_WITNESSES) {
            let _ = writeln!(
                s,
                "       witness {} margin {}{}",
                point_list(&w.points),
                num(w.margin),
                w.detail
                    .as_deref()
                    .map(|d| format!(" ({d})"))
                    .unwrap_or_default()
            );
        }
        if check.witnesses.len() > SUMMARY_WITNESSES {
            let _ = writeln!(
                s,
                "       ... {} more stored witnesses in the JSON report",
                check.witnesses.len() - SUMMARY_WITNESSES
            );
        }
    }
    if let Some(solve) = &report.solve {
        if !solve.attempted {
            let _ = writeln!(
                s,
                "solve: skipped, hypotheses failed (set \"force\": true to override)"
            );
        } else {
            let verdict = if solve.converged {
                "converged"
            } else {
                "NOT converged"
            };
            let _ = writeln!(
                s,
                "solve: {verdict}  fixed point {}  residual {}  iterations {}",
                solve
                    .fixed_point
                    .as_ref()
                    .map(Point::to_string)
                    .unwrap_or_default(),
                num(solve.residual.unwrap_or(f64::NAN)),
                solve.iterations.unwrap_or(0)
            );
            let worst = solve.bound_checks.iter().filter(|b| !b.dominated).count();
            if !solve.bound_checks.is_empty() {
                let _ = writeln!(s, "  cauchy bound: n q observed bound");
                for b in &solve.bound_checks {
                    let mark = if b.dominated { "ok" } else { "VIOLATED" };
                    let _ = writeln!(
                        s,
                        "    {} {} {} {} {mark}",
                        b.n,
                        b.q,
                        num(b.observed),
                        num(b.bound)
                    );
                }
                let _ = writeln!(s, "  bound violations: {worst}");
            }
            if let Some(u) = &solve.uniqueness {
                let verdict = if u.passed { "unique" } else { "NOT unique" };
                let _ = writeln!(
                    s,
                    "  uniqueness: {verdict} over {} starts, spread {}",
                    u.starts.len(),
                    num(u.spread)
                );
            }
        }
    }
    s
}
