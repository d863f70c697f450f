//! Axiom checkers on the two example families and on small synthetic spaces.

use fcmetric::families::{build_example_interval, build_example_naturals, ExampleConfig};
use fcmetric::space::{
    check_axiom, enumerate_axiom, probe_axiom, refute_extended, AxiomId, MAX_STORED_WITNESSES,
};
use fcmetric::{AlgebraDescriptor, Domain, Point, SpaceInstance, Tolerance};
use proptest::prelude::*;

fn p(x: f64) -> Point {
    Point::scalar(x)
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn interval() -> SpaceInstance {
    build_example_interval(&ExampleConfig::interval_m2())
        .unwrap()
        .0
}

fn naturals() -> SpaceInstance {
    build_example_naturals(&ExampleConfig::naturals_r2()).unwrap()
}

/// Both families have scalar-valued metrics, so any axiom reduces to a real
/// inequality that can be evaluated independently of the checker.
#[test]
fn interval_order_fails_at_known_tuple() {
    let space = interval();
    // F(1,1,2) = 4 but F(1,2,0) = 3.
    let w = probe_axiom(&space, AxiomId::Order, &[p(1.0), p(2.0), p(0.0)], tol())
        .unwrap()
        .expect("order must fail at (1, 2, 0)");
    assert_eq!(w.margin, -1.0);
    assert_eq!(w.lhs, space.algebra().scalar(4.0));
    assert_eq!(w.rhs, space.algebra().scalar(3.0));
}

#[test]
fn interval_passes_everything_but_order_on_grid() {
    let space = interval();
    let grid = space.domain().grid();
    assert_eq!(grid.len(), 17);
    for axiom in AxiomId::ALL {
        if axiom == AxiomId::ControlledTriangle {
            continue;
        }
        let rep = enumerate_axiom(&space, axiom, &grid, tol()).unwrap();
        assert_eq!(rep.passed, axiom != AxiomId::Order, "{axiom:?}");
    }
    // The 4-ary triangle over a coarser grid keeps the test fast.
    let coarse: Vec<Point> = (0..=4).map(|k| p(k as f64)).collect();
    assert!(
        enumerate_axiom(&space, AxiomId::ControlledTriangle, &coarse, tol())
            .unwrap()
            .passed
    );
}

#[test]
fn naturals_known_failures() {
    let space = naturals();
    let fail = |axiom, pts: &[f64]| {
        let pts: Vec<Point> = pts.iter().copied().map(p).collect();
        probe_axiom(&space, axiom, &pts, tol()).unwrap().is_some()
    };
    // C(0,0,1) = 0 is below the unit.
    assert!(fail(AxiomId::ControlAdmissible, &[0.0, 0.0, 1.0]));
    assert!(!fail(AxiomId::ControlAdmissible, &[1.0, 2.0, 3.0]));
    // F(0,0,0) = 0, F(0,0,1) = 1, F(0,1,0) = 0.5.
    assert!(fail(AxiomId::Order, &[0.0, 1.0, 0.0]));
    assert!(fail(AxiomId::ControlledTriangle, &[0.0, 0.0, 0.0, 1.0]));
    assert!(!fail(AxiomId::Symmetry, &[3.0, 7.0]));
    assert!(!fail(AxiomId::ZeroImpliesEqual, &[0.0, 0.0, 0.0]));
}

#[test]
fn sampled_and_exhaustive_agree_on_interval_grid() {
    let space = interval();
    let grid = space.domain().grid();
    for axiom in [
        AxiomId::Identity,
        AxiomId::Order,
        AxiomId::Symmetry,
        AxiomId::ZeroImpliesEqual,
    ] {
        let exhaustive = enumerate_axiom(&space, axiom, &grid, tol()).unwrap();
        let sampled = check_axiom(&space, axiom, 20_000, 3, tol()).unwrap();
        assert_eq!(exhaustive.passed, sampled.passed, "{axiom:?}");
    }
}

#[test]
fn witnesses_are_capped_but_counted() {
    let rep = check_axiom(&interval(), AxiomId::Order, 5_000, 11, tol()).unwrap();
    assert!(rep.violations > MAX_STORED_WITNESSES);
    assert_eq!(rep.witnesses.len(), MAX_STORED_WITNESSES);
    assert_eq!(rep.samples_checked, 5_000);
}

#[test]
fn stored_witnesses_replay() {
    let space = naturals();
    for axiom in [AxiomId::Order, AxiomId::ControlAdmissible] {
        let rep = check_axiom(&space, axiom, 2_000, 5, tol()).unwrap();
        assert!(!rep.witnesses.is_empty());
        for w in &rep.witnesses {
            let again = probe_axiom(&space, axiom, &w.points, tol())
                .unwrap()
                .unwrap();
            assert_eq!(&again, w);
            assert!(w.margin <= 0.0);
        }
    }
}

#[test]
fn extended_refutation_is_deterministic() {
    let space = naturals();
    let a = refute_extended(&space, 1_000, 9, tol()).unwrap();
    let b = refute_extended(&space, 1_000, 9, tol()).unwrap();
    assert_eq!(a, b);
    assert!(refute_extended(&interval(), 1_000, 9, tol())
        .unwrap()
        .is_none());
}

#[test]
fn larger_samples_never_hide_violations() {
    // Sample index i draws from its own stream, so n samples are a prefix of n + k.
    let space = naturals();
    let small = check_axiom(&space, AxiomId::Order, 500, 4, tol()).unwrap();
    let large = check_axiom(&space, AxiomId::Order, 2_000, 4, tol()).unwrap();
    assert!(large.violations >= small.violations);
    let n = small.witnesses.len().min(large.witnesses.len());
    assert_eq!(small.witnesses[..n], large.witnesses[..n]);
}

fn abs_space() -> SpaceInstance {
    let a = AlgebraDescriptor::matrix(2).unwrap();
    SpaceInstance::new(
        "abs",
        a,
        Domain::interval(-3.0, 3.0, 0.5).unwrap(),
        move |x: &Point, y: &Point, z: &Point| {
            a.diagonal(&[
                (x.x() - z.x()).abs() + (y.x() - z.x()).abs(),
                2.0 * ((x.x() - z.x()).abs() + (y.x() - z.x()).abs()),
            ])
            .unwrap()
        },
        move |_: &Point, _: &Point, _: &Point| a.scalar(2.0),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampling_is_a_function_of_seed(seed in any::<u64>(), n in 1usize..300) {
        let space = abs_space();
        let a = check_axiom(&space, AxiomId::Order, n, seed, tol()).unwrap();
        let b = check_axiom(&space, AxiomId::Order, n, seed, tol()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn matrix_valued_metric_satisfies_symmetry(x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let space = abs_space();
        prop_assert!(probe_axiom(&space, AxiomId::Symmetry, &[p(x), p(y)], tol()).unwrap().is_none());
    }

    #[test]
    fn controlled_triangle_holds_for_doubled_abs(
        x in -3.0f64..3.0, y in -3.0f64..3.0, z in -3.0f64..3.0, a in -3.0f64..3.0,
    ) {
        let space = abs_space();
        let pts = [p(x), p(y), p(z), p(a)];
        prop_assert!(probe_axiom(&space, AxiomId::ControlledTriangle, &pts, tol()).unwrap().is_none());
    }
}
