//! Seeded Monte Carlo models of debates that may receive new information
//! after a snapshot, and empirical checks of the resulting probability bounds.
//!
//! New information is a single Bernoulli event after the snapshot time; a
//! debate's truth value can change only through it. Each bound is compared to
//! an empirical (conditional) frequency with a tolerance of three binomial
//! standard errors.

mod axioms;

pub use axioms::{
    check_support_axioms, undercut_control, AxiomGenParams, AxiomReport, AxiomViolation,
    ControlCase,
};

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::agora::{
    derive_arguments, label, saturate, Label, SaturationError, SchedulePolicy, Time,
};
use crate::ensemble::{agreement_lower_bound, EnsembleError, Scenario};
use crate::lang::Literal;
use crate::rng::{trial_rng, TrialRng};

/// Minimum number of trials for any bound report.
pub const MIN_TRIALS: u64 = 10_000;

/// Tolerance, in standard errors, when comparing a frequency to its bound.
pub const SE_TOLERANCE: f64 = 3.0;

/// Largest scenario for which every articulation order is enumerated.
pub const MAX_EXHAUSTIVE_ARGUMENTS: usize = 8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimulationError {
    #[error("model parameter {name} = {value} outside [0, 1]")]
    Probability { name: &'static str, value: f64 },
    #[error("actual new-information probability {actual} exceeds its bound {bound}")]
    ActualExceedsBound { actual: f64, bound: f64 },
    #[error("snapshot time {snapshot} precedes saturation time {saturation}")]
    SnapshotBeforeSaturation { snapshot: Time, saturation: Time },
    #[error("horizon {horizon} precedes snapshot time {snapshot}")]
    HorizonBeforeSnapshot { horizon: Time, snapshot: Time },
    #[error("{0}")]
    Conditioning(&'static str),
    #[error("{given} trials requested; at least {min} are required")]
    TooFewTrials { given: u64, min: u64 },
    #[error("report {0}: conditioning event never occurred")]
    EmptyConditioningCell(String),
    #[error("scenario derives {count} arguments; exhaustive enumeration supports at most {max}")]
    TooManyArguments { count: usize, max: usize },
    #[error(transparent)]
    Saturation(#[from] SaturationError),
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
}

/// Binomial standard error `sqrt(p(1−p)/n)`.
pub fn standard_error(p: f64, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    libm::sqrt(p * (1.0 - p) / n as f64)
}

fn check_probability(name: &'static str, value: f64) -> Result<(), SimulationError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(SimulationError::Probability { name, value })
    }
}

/// One debate observed at `snapshot_time`, after saturation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DebateModel {
    saturation_time: Time,
    snapshot_time: Time,
    horizon: Time,
    eps_new_info: f64,
    actual_new_info_prob: f64,
    flip_prob_given_new_info: f64,
    initial_value: bool,
}

impl DebateModel {
    pub fn new(
        saturation_time: Time,
        snapshot_time: Time,
        horizon: Time,
        eps_new_info: f64,
        actual_new_info_prob: f64,
        flip_prob_given_new_info: f64,
        initial_value: bool,
    ) -> Result<Self, SimulationError> {
        check_probability("eps_new_info", eps_new_info)?;
        check_probability("actual_new_info_prob", actual_new_info_prob)?;
        check_probability("flip_prob_given_new_info", flip_prob_given_new_info)?;
        if actual_new_info_prob > eps_new_info {
            return Err(SimulationError::ActualExceedsBound {
                actual: actual_new_info_prob,
                bound: eps_new_info,
            });
        }
        if snapshot_time < saturation_time {
            return Err(SimulationError::SnapshotBeforeSaturation {
                snapshot: snapshot_time,
                saturation: saturation_time,
            });
        }
        if horizon < snapshot_time {
            return Err(SimulationError::HorizonBeforeSnapshot {
                horizon,
                snapshot: snapshot_time,
            });
        }
        Ok(DebateModel {
            saturation_time,
            snapshot_time,
            horizon,
            eps_new_info,
            actual_new_info_prob,
            flip_prob_given_new_info,
            initial_value,
        })
    }

    /// New information arrives with probability exactly `eps` and always
    /// flips the value.
    pub fn forced_flip(eps: f64, initial_value: bool) -> Result<Self, SimulationError> {
        DebateModel::new(1, 1, 2, eps, eps, 1.0, initial_value)
    }

    pub fn with_actual_prob(self, p: f64) -> Result<Self, SimulationError> {
        DebateModel::new(
            self.saturation_time,
            self.snapshot_time,
            self.horizon,
            self.eps_new_info,
            p,
            self.flip_prob_given_new_info,
            self.initial_value,
        )
    }

    pub fn with_flip_prob(self, p: f64) -> Result<Self, SimulationError> {
        DebateModel::new(
            self.saturation_time,
            self.snapshot_time,
            self.horizon,
            self.eps_new_info,
            self.actual_new_info_prob,
            p,
            self.initial_value,
        )
    }

    pub fn with_initial_value(mut self, v: bool) -> Self {
        self.initial_value = v;
        self
    }

    pub fn eps_new_info(&self) -> f64 {
        self.eps_new_info
    }

    pub fn actual_new_info_prob(&self) -> f64 {
        self.actual_new_info_prob
    }

    pub fn initial_value(&self) -> bool {
        self.initial_value
    }

    pub fn snapshot_time(&self) -> Time {
        self.snapshot_time
    }

    pub fn horizon(&self) -> Time {
        self.horizon
    }

    fn resolve(&self, u_info: f64, u_flip: f64) -> TrialResult {
        let new_info_occurred = u_info < self.actual_new_info_prob;
        let flipped = new_info_occurred && u_flip < self.flip_prob_given_new_info;
        TrialResult {
            v_at_snapshot: self.initial_value,
            v_infinity: self.initial_value ^ flipped,
            converged: true,
            new_info_occurred,
        }
    }

    fn run(&self, rng: &mut TrialRng) -> TrialResult {
        let u_info = rng.random::<f64>();
        let u_flip = rng.random::<f64>();
        self.resolve(u_info, u_flip)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialResult {
    pub v_at_snapshot: bool,
    /// Value at the horizon; constant afterwards.
    pub v_infinity: bool,
    pub converged: bool,
    pub new_info_occurred: bool,
}

pub fn gen_trial(model: &DebateModel, seed: u64) -> TrialResult {
    model.run(&mut trial_rng(seed, 0))
}

/// Dependence between the two debates' new-information events.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coupling {
    Independent,
    /// Both debates read the same uniforms, maximising positive dependence.
    Comonotone,
}

fn run_pair(
    m1: &DebateModel,
    m2: &DebateModel,
    coupling: Coupling,
    rng: &mut TrialRng,
) -> (TrialResult, TrialResult) {
    match coupling {
        Coupling::Independent => {
            let a = m1.run(rng);
            let b = m2.run(rng);
            (a, b)
        }
        Coupling::Comonotone => {
            let u_info = rng.random::<f64>();
            let u_flip = rng.random::<f64>();
            (m1.resolve(u_info, u_flip), m2.resolve(u_info, u_flip))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    AtLeast,
    AtMost,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
        })
    }
}

/// An empirical frequency against a theoretical bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub id: String,
    pub relation: Relation,
    pub bound: f64,
    pub frequency: f64,
    /// Number of trials in the conditioning event.
    pub trials: u64,
    pub standard_error: f64,
    pub satisfied_within_3se: bool,
    pub seed: u64,
}

impl BoundReport {
    fn from_counts(
        id: &str,
        relation: Relation,
        bound: f64,
        hits: u64,
        total: u64,
        seed: u64,
    ) -> Result<Self, SimulationError> {
        if total == 0 {
            return Err(SimulationError::EmptyConditioningCell(id.into()));
        }
        let frequency = hits as f64 / total as f64;
        let se = standard_error(frequency, total);
        let satisfied = match relation {
            Relation::AtLeast => frequency >= bound - SE_TOLERANCE * se,
            Relation::AtMost => frequency <= bound + SE_TOLERANCE * se,
        };
        Ok(BoundReport {
            id: id.into(),
            relation,
            bound,
            frequency,
            trials: total,
            standard_error: se,
            satisfied_within_3se: satisfied,
            seed,
        })
    }
}

fn require_trials(trials: u64) -> Result<(), SimulationError> {
    if trials < MIN_TRIALS {
        return Err(SimulationError::TooFewTrials {
            given: trials,
            min: MIN_TRIALS,
        });
    }
    Ok(())
}

/// Snapshot-to-limit bounds for one debate whose snapshot value is 1:
/// `Pr(v_∞ = 1 | v_tm = 1) >= 1 − ε` and `Pr(v_∞ = 0 | v_tm = 1) <= ε`.
pub fn check_snapshot_bounds(
    model: &DebateModel,
    trials: u64,
    seed: u64,
) -> Result<[BoundReport; 2], SimulationError> {
    require_trials(trials)?;
    if !model.initial_value {
        return Err(SimulationError::Conditioning(
            "the snapshot value must be 1",
        ));
    }
    let (mut conditioned, mut kept) = (0u64, 0u64);
    for trial in 0..trials {
        let r = model.run(&mut trial_rng(seed, trial));
        if r.v_at_snapshot {
            conditioned += 1;
            kept += u64::from(r.v_infinity);
        }
    }
    let eps = model.eps_new_info;
    Ok([
        BoundReport::from_counts(
            "prop1.1",
            Relation::AtLeast,
            1.0 - eps,
            kept,
            conditioned,
            seed,
        )?,
        BoundReport::from_counts(
            "prop1.2",
            Relation::AtMost,
            eps,
            conditioned - kept,
            conditioned,
            seed,
        )?,
    ])
}

/// Long-run agreement of two debates over identical scenarios:
/// `Pr(v¹_∞ = v²_∞) >= 1 − ε¹ − ε²`.
pub fn check_identical_agreement(
    m1: &DebateModel,
    m2: &DebateModel,
    coupling: Coupling,
    trials: u64,
    seed: u64,
) -> Result<BoundReport, SimulationError> {
    require_trials(trials)?;
    if m1.initial_value != m2.initial_value {
        return Err(SimulationError::Conditioning(
            "identical scenarios must share their initial value",
        ));
    }
    let agree = (0..trials)
        .filter(|&trial| {
            let (a, b) = run_pair(m1, m2, coupling, &mut trial_rng(seed, trial));
            a.v_infinity == b.v_infinity
        })
        .count() as u64;
    let bound = agreement_lower_bound(m1.eps_new_info, m2.eps_new_info);
    BoundReport::from_counts("prop3", Relation::AtLeast, bound, agree, trials, seed)
}

/// The four paired-snapshot inequalities. Two arms are simulated with
/// `trials` trials each: the models as given, and the same models with the
/// second snapshot value negated, so both the agreeing and the disagreeing
/// snapshot cells are populated.
pub fn check_paired_snapshot_bounds(
    m1: &DebateModel,
    m2: &DebateModel,
    coupling: Coupling,
    trials: u64,
    seed: u64,
) -> Result<[BoundReport; 4], SimulationError> {
    require_trials(trials)?;
    let flipped = m2.with_initial_value(!m2.initial_value);
    // [snapshots agree, snapshots differ] x [limits agree, limits differ]
    let mut cells = [[0u64; 2]; 2];
    for (arm, second) in [*m2, flipped].iter().enumerate() {
        for trial in 0..trials {
            let stream = ((arm as u64) << 40) | trial;
            let (a, b) = run_pair(m1, second, coupling, &mut trial_rng(seed, stream));
            let snap = usize::from(a.v_at_snapshot != b.v_at_snapshot);
            let lim = usize::from(a.v_infinity != b.v_infinity);
            cells[snap][lim] += 1;
        }
    }
    let (e1, e2) = (m1.eps_new_info, m2.eps_new_info);
    let high = agreement_lower_bound(e1, e2);
    let low = e1 + e2;
    let equal_total = cells[0][0] + cells[0][1];
    let unequal_total = cells[1][0] + cells[1][1];
    Ok([
        BoundReport::from_counts(
            "prop5.1",
            Relation::AtLeast,
            high,
            cells[0][0],
            equal_total,
            seed,
        )?,
        BoundReport::from_counts(
            "prop5.2",
            Relation::AtMost,
            low,
            cells[0][1],
            equal_total,
            seed,
        )?,
        BoundReport::from_counts(
            "prop5.3",
            Relation::AtMost,
            low,
            cells[1][0],
            unequal_total,
            seed,
        )?,
        BoundReport::from_counts(
            "prop5.4",
            Relation::AtLeast,
            high,
            cells[1][1],
            unequal_total,
            seed,
        )?,
    ])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMismatch {
    pub schedule: Vec<usize>,
    pub claim: Literal,
    pub expected: BTreeSet<Label>,
    pub found: BTreeSet<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderInvarianceReport {
    pub arguments: usize,
    pub schedules: u64,
    pub claims: Vec<Literal>,
    pub saturation_time: Time,
    pub mismatches: Vec<OrderMismatch>,
}

impl OrderInvarianceReport {
    pub fn identical(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Every derivable conclusion and its negation.
fn derivable_claims(scenario: &Scenario) -> Vec<Literal> {
    let claims: BTreeSet<Literal> = derive_arguments(scenario)
        .into_iter()
        .flat_map(|a| [a.conclusion.negate(), a.conclusion])
        .collect();
    claims.into_iter().collect()
}

struct OrderChecker<'a> {
    scenario: &'a Scenario,
    claims: Vec<Literal>,
    reference: Vec<BTreeSet<Label>>,
    saturation_time: Time,
    schedules: u64,
    mismatches: Vec<OrderMismatch>,
}

impl<'a> OrderChecker<'a> {
    fn new(scenario: &'a Scenario) -> Result<Self, SimulationError> {
        let claims = derivable_claims(scenario);
        let (tr, s) = saturate(scenario, &SchedulePolicy::OnePerTick)?;
        let reference = claims.iter().map(|c| label(&tr, c, s).satisfied).collect();
        Ok(OrderChecker {
            scenario,
            claims,
            reference,
            saturation_time: s,
            schedules: 0,
            mismatches: Vec::new(),
        })
    }

    fn check(&mut self, order: &[usize]) -> Result<(), SimulationError> {
        let (tr, s) = saturate(self.scenario, &SchedulePolicy::Order(order.to_vec()))?;
        self.schedules += 1;
        for (claim, expected) in self.claims.iter().zip(&self.reference) {
            let found = label(&tr, claim, s).satisfied;
            if s != self.saturation_time || &found != expected {
                self.mismatches.push(OrderMismatch {
                    schedule: order.to_vec(),
                    claim: claim.clone(),
                    expected: expected.clone(),
                    found,
                });
            }
        }
        Ok(())
    }

    fn finish(self, arguments: usize) -> OrderInvarianceReport {
        OrderInvarianceReport {
            arguments,
            schedules: self.schedules,
            claims: self.claims,
            saturation_time: self.saturation_time,
            mismatches: self.mismatches,
        }
    }
}

/// Saturates `scenario` under `orders` random one-per-tick schedules and
/// compares the post-saturation labels of every derivable claim with the
/// canonical schedule.
pub fn check_order_invariance(
    scenario: &Scenario,
    orders: u64,
    seed: u64,
) -> Result<OrderInvarianceReport, SimulationError> {
    let n = derive_arguments(scenario).len();
    let mut checker = OrderChecker::new(scenario)?;
    let mut order: Vec<usize> = (0..n).collect();
    for i in 0..orders {
        order.shuffle(&mut trial_rng(seed, i));
        checker.check(&order)?;
    }
    Ok(checker.finish(n))
}

/// As [`check_order_invariance`], over every permutation of the derived
/// arguments.
pub fn check_order_invariance_exhaustive(
    scenario: &Scenario,
) -> Result<OrderInvarianceReport, SimulationError> {
    let n = derive_arguments(scenario).len();
    if n > MAX_EXHAUSTIVE_ARGUMENTS {
        return Err(SimulationError::TooManyArguments {
            count: n,
            max: MAX_EXHAUSTIVE_ARGUMENTS,
        });
    }
    let mut checker = OrderChecker::new(scenario)?;
    // Heap's algorithm, iterative form.
    let mut order: Vec<usize> = (0..n).collect();
    let mut c = alloc::vec![0usize; n];
    checker.check(&order)?;
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            checker.check(&order)?;
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(checker.finish(n))
}

#[cfg(test)]
mod tests;
