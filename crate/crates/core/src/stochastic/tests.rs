use super::*;
use crate::agora::InferenceRule;
use crate::exact::Rational;

fn lit(s: &str) -> Literal {
    Literal::parse(s).unwrap()
}

// Exact probabilities for forced-flip models by enumerating the four
// (flip1, flip2) outcomes.
fn agreement_independent(e1: f64, e2: f64) -> f64 {
    e1 * e2 + (1.0 - e1) * (1.0 - e2)
}

fn agreement_comonotone(e1: f64, e2: f64) -> f64 {
    1.0 - (e1 - e2).abs()
}

fn near(report: &BoundReport, exact: f64) {
    let tol = 4.0 * libm::sqrt(exact * (1.0 - exact) / report.trials as f64) + 1e-12;
    assert!(
        (report.frequency - exact).abs() <= tol,
        "{}: {} vs {}",
        report.id,
        report.frequency,
        exact
    );
}

#[test]
fn standard_error_values() {
    assert_eq!(standard_error(0.5, 0), 0.0);
    assert!((standard_error(0.5, 10_000) - 0.005).abs() < 1e-15);
    assert_eq!(standard_error(1.0, 100), 0.0);
}

#[test]
fn model_validation() {
    assert!(matches!(
        DebateModel::new(1, 1, 2, 0.1, 0.2, 1.0, true),
        Err(SimulationError::ActualExceedsBound { .. })
    ));
    assert!(matches!(
        DebateModel::new(3, 2, 4, 0.1, 0.1, 1.0, true),
        Err(SimulationError::SnapshotBeforeSaturation { .. })
    ));
    assert!(matches!(
        DebateModel::new(1, 3, 2, 0.1, 0.1, 1.0, true),
        Err(SimulationError::HorizonBeforeSnapshot { .. })
    ));
    assert!(matches!(
        DebateModel::new(1, 1, 2, 1.5, 0.1, 1.0, true),
        Err(SimulationError::Probability {
            name: "eps_new_info",
            ..
        })
    ));
    assert!(DebateModel::forced_flip(0.1, true)
        .unwrap()
        .with_actual_prob(0.05)
        .is_ok());
}

#[test]
fn trials_are_reproducible() {
    let m = DebateModel::forced_flip(0.5, true).unwrap();
    let a: Vec<_> = (0..32).map(|s| gen_trial(&m, s)).collect();
    let b: Vec<_> = (0..32).map(|s| gen_trial(&m, s)).collect();
    assert_eq!(a, b);
    assert!(a.iter().all(|r| r.v_at_snapshot && r.converged));
    assert!(a.iter().all(|r| r.v_infinity != r.new_info_occurred));
}

#[test]
fn no_new_information_means_no_change() {
    let m = DebateModel::forced_flip(0.2, true)
        .unwrap()
        .with_actual_prob(0.0)
        .unwrap();
    let [keep, lose] = check_snapshot_bounds(&m, MIN_TRIALS, 3).unwrap();
    assert_eq!(keep.frequency, 1.0);
    assert_eq!(lose.frequency, 0.0);
    assert!(keep.satisfied_within_3se && lose.satisfied_within_3se);
}

#[test]
fn snapshot_bounds_forced_flip() {
    let m = DebateModel::forced_flip(0.1, true).unwrap();
    let [keep, lose] = check_snapshot_bounds(&m, 20_000, 11).unwrap();
    assert_eq!(keep.id, "prop1.1");
    assert_eq!(lose.id, "prop1.2");
    assert_eq!(keep.trials, 20_000);
    near(&keep, 0.9);
    near(&lose, 0.1);
    assert!(keep.satisfied_within_3se && lose.satisfied_within_3se);
}

#[test]
fn snapshot_bounds_preconditions() {
    let m = DebateModel::forced_flip(0.1, false).unwrap();
    assert!(matches!(
        check_snapshot_bounds(&m, MIN_TRIALS, 0),
        Err(SimulationError::Conditioning(_))
    ));
    let m = m.with_initial_value(true);
    assert!(matches!(
        check_snapshot_bounds(&m, 10, 0),
        Err(SimulationError::TooFewTrials { given: 10, .. })
    ));
}

#[test]
fn identical_agreement_matches_enumeration() {
    let m1 = DebateModel::forced_flip(0.1, true).unwrap();
    let m2 = DebateModel::forced_flip(0.2, true).unwrap();
    let ind = check_identical_agreement(&m1, &m2, Coupling::Independent, 40_000, 5).unwrap();
    near(&ind, agreement_independent(0.1, 0.2));
    assert!((ind.bound - 0.7).abs() < 1e-12);
    assert!(ind.satisfied_within_3se);
    let com = check_identical_agreement(&m1, &m2, Coupling::Comonotone, 40_000, 5).unwrap();
    near(&com, agreement_comonotone(0.1, 0.2));
    assert!(com.satisfied_within_3se);
    assert!(matches!(
        check_identical_agreement(
            &m1,
            &m2.with_initial_value(false),
            Coupling::Independent,
            MIN_TRIALS,
            0
        ),
        Err(SimulationError::Conditioning(_))
    ));
}

#[test]
fn paired_bounds_populate_all_cells() {
    let m1 = DebateModel::forced_flip(0.1, true).unwrap();
    let m2 = DebateModel::forced_flip(0.2, true).unwrap();
    let reports = check_paired_snapshot_bounds(&m1, &m2, Coupling::Independent, 20_000, 9).unwrap();
    let ids: Vec<_> = reports.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["prop5.1", "prop5.2", "prop5.3", "prop5.4"]);
    let agree = agreement_independent(0.1, 0.2);
    near(&reports[0], agree);
    near(&reports[1], 1.0 - agree);
    near(&reports[2], 1.0 - agree);
    near(&reports[3], agree);
    assert!(reports
        .iter()
        .all(|r| r.trials == 20_000 && r.satisfied_within_3se));
    assert!((reports[1].bound - 0.3).abs() < 1e-12);
}

#[test]
fn bound_report_tolerance() {
    let r = BoundReport::from_counts("x", Relation::AtLeast, 0.9, 8_920, 10_000, 0).unwrap();
    // se ~ 0.0031, so 0.892 lies 2.6 se below 0.9.
    assert!(r.satisfied_within_3se);
    let r = BoundReport::from_counts("x", Relation::AtLeast, 0.9, 8_800, 10_000, 0).unwrap();
    assert!(!r.satisfied_within_3se);
    let r = BoundReport::from_counts("x", Relation::AtMost, 0.1, 1_200, 10_000, 0).unwrap();
    assert!(!r.satisfied_within_3se);
    assert!(matches!(
        BoundReport::from_counts("x", Relation::AtMost, 0.1, 0, 0, 0),
        Err(SimulationError::EmptyConditioningCell(_))
    ));
}

fn chain_scenario() -> Scenario {
    Scenario::new(
        "s",
        [lit("a"), lit("b"), lit("c")],
        [
            InferenceRule::new("r1", [lit("a")], lit("d"), "strict"),
            InferenceRule::new("r2", [lit("b")], lit("!d"), "strict"),
            InferenceRule::new("r3", [lit("c")], lit("!b"), "strict"),
            InferenceRule::new("r4", [lit("d")], lit("e"), "strict"),
        ],
        Rational::from_integer(1),
        0.0,
    )
    .unwrap()
}

#[test]
fn order_invariance_exhaustive() {
    let sc = chain_scenario();
    let n = derive_arguments(&sc).len();
    let report = check_order_invariance_exhaustive(&sc).unwrap();
    let factorial: u64 = (1..=n as u64).product();
    assert_eq!(report.arguments, n);
    assert_eq!(report.schedules, factorial);
    assert!(report.identical(), "{:?}", report.mismatches.first());
    assert!(report.claims.contains(&lit("!e")));
}

#[test]
fn order_invariance_random() {
    let report = check_order_invariance(&chain_scenario(), 50, 1).unwrap();
    assert_eq!(report.schedules, 50);
    assert!(report.identical());
}

#[test]
fn exhaustive_limit() {
    let atoms: Vec<Literal> = (0..9).map(|i| lit(&alloc::format!("q{i}"))).collect();
    let sc = Scenario::new("big", atoms, [], Rational::from_integer(1), 0.0).unwrap();
    assert!(matches!(
        check_order_invariance_exhaustive(&sc),
        Err(SimulationError::TooManyArguments { count: 9, .. })
    ));
}

#[test]
fn undercut_control_is_outside_hypothesis() {
    let c = undercut_control().unwrap();
    assert!(!c.rebuttal_only);
    assert!(c.violates);
    assert_eq!(c.support_claim, Rational::from_integer(1));
    assert_eq!(c.support_negation, Rational::from_integer(1));
}

#[test]
fn axiom_exploration_is_deterministic() {
    let p = AxiomGenParams::default();
    let a = check_support_axioms(&p, 200, 4).unwrap();
    let b = check_support_axioms(&p, 200, 4).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.rebuttal_only_ensembles, 200);
    assert!(a.tautology_failures.is_empty());
    for v in &a.violations {
        assert!(v.support_claim + v.support_negation > Rational::from_integer(1));
        assert!(!v.witness.is_empty());
    }
}

#[test]
fn single_sided_ensembles_never_violate() {
    let p = AxiomGenParams {
        max_rules: 1,
        ..AxiomGenParams::default()
    };
    let r = check_support_axioms(&p, 300, 2).unwrap();
    assert!(r.violations.is_empty());
    assert!(r.passed());
}
