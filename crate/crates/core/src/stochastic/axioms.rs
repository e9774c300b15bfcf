//! Randomised exploration of the additivity-style support axioms on
//! ensembles whose debates contain only rebuttals.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::Rng;

use crate::agora::{attacks, saturate, AttackKind, InferenceRule, SchedulePolicy, Transcript};
use crate::ensemble::{ensemble_support, Ensemble, Scenario};
use crate::exact::Rational;
use crate::lang::{Atom, Literal};
use crate::rng::{trial_rng, TrialRng};

use super::SimulationError;

const CLAIM: &str = "theta";
const TAUTOLOGY: &str = "top";

fn lit(text: &str) -> Literal {
    Literal::parse(text).expect("static literal")
}

/// Shape of the random ensembles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomGenParams {
    pub max_scenarios: usize,
    pub side_atoms: usize,
    pub max_rules: usize,
    pub max_antecedents: usize,
}

impl Default for AxiomGenParams {
    fn default() -> Self {
        AxiomGenParams {
            max_scenarios: 4,
            side_atoms: 4,
            max_rules: 5,
            max_antecedents: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub trial: u64,
    pub support_claim: Rational,
    pub support_negation: Rational,
    pub rebuttal_only: bool,
    /// The offending ensemble, one scenario per line.
    pub witness: String,
}

/// Hand-built ensemble with undercuts, outside the rebuttal-only hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlCase {
    pub support_claim: Rational,
    pub support_negation: Rational,
    pub rebuttal_only: bool,
    pub violates: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub trials: u64,
    pub seed: u64,
    pub rebuttal_only_ensembles: u64,
    pub violations: Vec<AxiomViolation>,
    /// Trials where a claim accepted in every scenario had support below 1.
    pub tautology_failures: Vec<u64>,
    pub control: ControlCase,
}

impl AxiomReport {
    pub fn violations_within_hypothesis(&self) -> usize {
        self.violations.iter().filter(|v| v.rebuttal_only).count()
    }

    pub fn passed(&self) -> bool {
        self.violations_within_hypothesis() == 0 && self.tautology_failures.is_empty()
    }
}

struct Evaluation {
    claim: Rational,
    negation: Rational,
    tautology: Rational,
    rebuttal_only: bool,
    witness: String,
}

fn rebuttal_only(transcript: &Transcript) -> bool {
    let args: Vec<_> = transcript.entries().iter().map(|e| &e.argument).collect();
    args.iter().all(|a| {
        args.iter()
            .all(|b| !matches!(attacks(a, b), Some(AttackKind::Undercut(_))))
    })
}

fn evaluate(scenarios: Vec<Scenario>) -> Result<Evaluation, SimulationError> {
    let mut saturated = Vec::with_capacity(scenarios.len());
    let mut only_rebuttals = true;
    for sc in scenarios {
        let (tr, _) = saturate(&sc, &SchedulePolicy::AllAtOnce)?;
        only_rebuttals &= rebuttal_only(&tr);
        saturated.push(sc.with_transcript(tr));
    }
    let witness = saturated
        .iter()
        .map(|s| format!("{s}"))
        .collect::<Vec<_>>()
        .join("\n");
    let ensemble = Ensemble::new(saturated, Rational::new(1, 10))?;
    // Under the all-at-once schedule every argument is active from time 1.
    let m = |claim: &Literal| ensemble_support(&ensemble, claim, 1, None).map(|r| r.support);
    Ok(Evaluation {
        claim: m(&lit(CLAIM))?,
        negation: m(&lit(&format!("!{CLAIM}")))?,
        tautology: m(&lit(TAUTOLOGY))?,
        rebuttal_only: only_rebuttals,
        witness,
    })
}

fn random_scenario(index: usize, params: &AxiomGenParams, rng: &mut TrialRng) -> Scenario {
    let side: Vec<Literal> = (0..params.side_atoms)
        .map(|j| Literal::pos(Atom::new(&format!("p{j}")).expect("generated atom")))
        .collect();
    let mut assumptions: Vec<Literal> = side
        .iter()
        .filter(|_| rng.random_bool(0.5))
        .cloned()
        .collect();
    assumptions.push(lit(TAUTOLOGY));
    let rules = (0..rng.random_range(0..=params.max_rules))
        .map(|r| {
            let k = rng.random_range(0..=params.max_antecedents.min(side.len()));
            let antecedents: Vec<Literal> = sample(rng, side.len(), k)
                .into_iter()
                .map(|j| side[j].clone())
                .collect();
            let consequent = if rng.random_bool(0.5) {
                lit(CLAIM)
            } else {
                lit(&format!("!{CLAIM}"))
            };
            InferenceRule::new(&format!("r{r}"), antecedents, consequent, "strict")
        })
        .collect::<Vec<_>>();
    let weight = Rational::new(rng.random_range(1..=100u128), 100);
    Scenario::new(&format!("s{}", index + 1), assumptions, rules, weight, 0.0)
        .expect("generated scenario is valid")
}

/// Draws `trials` random ensembles in which only positive side atoms,
/// `top`, `theta` and `!theta` occur, and checks `m(theta) + m(!theta) <= 1`
/// exactly and `m(top) = 1`.
pub fn check_support_axioms(
    params: &AxiomGenParams,
    trials: u64,
    seed: u64,
) -> Result<AxiomReport, SimulationError> {
    let mut violations = Vec::new();
    let mut tautology_failures = Vec::new();
    let mut rebuttal_only_ensembles = 0;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let n = rng.random_range(1..=params.max_scenarios.max(1));
        let scenarios = (0..n)
            .map(|i| random_scenario(i, params, &mut rng))
            .collect();
        let ev = evaluate(scenarios)?;
        rebuttal_only_ensembles += u64::from(ev.rebuttal_only);
        if ev.claim + ev.negation > Rational::from_integer(1) {
            violations.push(AxiomViolation {
                trial,
                support_claim: ev.claim,
                support_negation: ev.negation,
                rebuttal_only: ev.rebuttal_only,
                witness: ev.witness,
            });
        }
        if ev.tautology != Rational::from_integer(1) {
            tautology_failures.push(trial);
        }
    }
    Ok(AxiomReport {
        trials,
        seed,
        rebuttal_only_ensembles,
        violations,
        tautology_failures,
        control: undercut_control()?,
    })
}

/// A single scenario where mutual undercuts let both `theta` and `!theta`
/// be defended.
pub fn undercut_control() -> Result<ControlCase, SimulationError> {
    let rule = |name: &str, ante: &str, cons: &str| {
        InferenceRule::new(name, [lit(ante)], lit(cons), "strict")
    };
    let sc = Scenario::new(
        "control",
        ["a", "b", "c", "e"].map(lit),
        [
            rule("r1", "a", CLAIM),
            rule("r2", "b", "!theta"),
            rule("r3", "c", "!b"),
            rule("r4", "e", "!a"),
        ],
        Rational::from_integer(1),
        0.0,
    )
    .expect("control scenario is valid");
    let ev = evaluate(alloc::vec![sc])?;
    Ok(ControlCase {
        violates: ev.claim + ev.negation > Rational::from_integer(1),
        support_claim: ev.claim,
        support_negation: ev.negation,
        rebuttal_only: ev.rebuttal_only,
        witness: ev.witness,
    })
}
