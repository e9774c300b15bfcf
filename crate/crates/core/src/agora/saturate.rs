//! Exhaustive argument generation from a scenario's assumptions and rules.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Argument, Move, Time, Transcript};
use crate::ensemble::Scenario;
use crate::lang::Literal;

/// When each derived argument is articulated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchedulePolicy {
    /// Canonical order, one argument per tick starting at `t = 1`.
    OnePerTick,
    /// Every argument at `t = 1`.
    AllAtOnce,
    /// One per tick, in the given permutation of the canonical order.
    Order(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SaturationError {
    #[error("schedule of length {given} is not a permutation of the {expected} derived arguments")]
    InvalidOrder { given: usize, expected: usize },
}

struct Derivation {
    conclusion: Literal,
    premises: BTreeSet<Literal>,
    rule_chain: Vec<String>,
    assumption: bool,
}

impl Derivation {
    /// Assumptions an argument contributes when used as a sub-argument.
    fn basis(&self) -> BTreeSet<Literal> {
        if self.assumption {
            BTreeSet::from([self.conclusion.clone()])
        } else {
            self.premises.clone()
        }
    }
}

fn forward_chain(scenario: &Scenario) -> Vec<Derivation> {
    let mut derived: Vec<Derivation> = Vec::new();
    let mut seen: BTreeSet<(Literal, BTreeSet<Literal>)> = BTreeSet::new();
    let mut by_conclusion: BTreeMap<Literal, Vec<usize>> = BTreeMap::new();

    for a in scenario.assumptions() {
        seen.insert((a.clone(), BTreeSet::new()));
        by_conclusion
            .entry(a.clone())
            .or_default()
            .push(derived.len());
        derived.push(Derivation {
            conclusion: a.clone(),
            premises: BTreeSet::new(),
            rule_chain: Vec::new(),
            assumption: true,
        });
    }

    loop {
        let snapshot = by_conclusion.clone();
        let mut fresh = Vec::new();
        for rule in scenario.rules() {
            let pools: Option<Vec<&Vec<usize>>> =
                rule.antecedents.iter().map(|a| snapshot.get(a)).collect();
            let Some(pools) = pools else { continue };

            // Odometer over one sub-argument per antecedent.
            let mut pick = alloc::vec![0usize; pools.len()];
            loop {
                let mut premises = BTreeSet::new();
                let mut chain: Vec<String> = Vec::new();
                for (pool, &k) in pools.iter().zip(&pick) {
                    let sub = &derived[pool[k]];
                    premises.extend(sub.basis());
                    for r in &sub.rule_chain {
                        if !chain.contains(r) {
                            chain.push(r.clone());
                        }
                    }
                }
                // Circular derivations (conclusion among own premises) are skipped.
                if !premises.contains(&rule.consequent)
                    && seen.insert((rule.consequent.clone(), premises.clone()))
                {
                    if !chain.contains(&rule.name) {
                        chain.push(rule.name.clone());
                    }
                    fresh.push(Derivation {
                        conclusion: rule.consequent.clone(),
                        premises,
                        rule_chain: chain,
                        assumption: false,
                    });
                }

                let mut slot = 0;
                while slot < pick.len() {
                    pick[slot] += 1;
                    if pick[slot] < pools[slot].len() {
                        break;
                    }
                    pick[slot] = 0;
                    slot += 1;
                }
                if slot == pick.len() {
                    break;
                }
            }
        }
        if fresh.is_empty() {
            return derived;
        }
        for d in fresh {
            by_conclusion
                .entry(d.conclusion.clone())
                .or_default()
                .push(derived.len());
            derived.push(d);
        }
    }
}

/// One argument per derivable `(conclusion, premises)` pair, in canonical
/// order (conclusion, then premises, then rule chain) with ids `A1, A2, ...`.
///
/// Each assumption yields a premise-free argument with an empty rule chain;
/// when it is used inside a longer derivation it contributes itself as a
/// premise.
pub fn derive_arguments(scenario: &Scenario) -> Vec<Argument> {
    let mut derived = forward_chain(scenario);
    derived.sort_by(|x, y| {
        (&x.conclusion, &x.premises, &x.rule_chain).cmp(&(
            &y.conclusion,
            &y.premises,
            &y.rule_chain,
        ))
    });
    derived
        .into_iter()
        .enumerate()
        .map(|(i, d)| Argument {
            id: format!("A{}", i + 1),
            conclusion: d.conclusion,
            premises: d.premises,
            rule_chain: d.rule_chain,
            strength: None,
            proponent: None,
        })
        .collect()
}

/// Articulates every derivable argument according to `policy` and returns the
/// transcript with its saturation time (0 when nothing is derivable).
pub fn saturate(
    scenario: &Scenario,
    policy: &SchedulePolicy,
) -> Result<(Transcript, Time), SaturationError> {
    let arguments = derive_arguments(scenario);
    let n = arguments.len();
    let timed: Vec<(Time, Argument)> = match policy {
        SchedulePolicy::AllAtOnce => arguments.into_iter().map(|a| (1, a)).collect(),
        SchedulePolicy::OnePerTick => arguments
            .into_iter()
            .enumerate()
            .map(|(i, a)| (i as Time + 1, a))
            .collect(),
        SchedulePolicy::Order(order) => {
            let mut used = alloc::vec![false; n];
            let valid = order.len() == n
                && order
                    .iter()
                    .all(|&i| i < n && !core::mem::replace(&mut used[i], true));
            if !valid {
                return Err(SaturationError::InvalidOrder {
                    given: order.len(),
                    expected: n,
                });
            }
            order
                .iter()
                .enumerate()
                .map(|(tick, &i)| (tick as Time + 1, arguments[i].clone()))
                .collect()
        }
    };
    let s = timed.iter().map(|(t, _)| *t).max().unwrap_or(0);
    let moves = timed
        .into_iter()
        .map(|(time, argument)| Move::Articulate { time, argument })
        .collect();
    let transcript = Transcript::new(moves).expect("saturation schedules are well-formed");
    Ok((transcript, s))
}

/// An argument in a hand-written transcript that cannot be re-derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unverified {
    pub argument_id: String,
    pub reason: String,
}

/// Checks that every argument of `transcript` is derivable from `scenario`:
/// its `(conclusion, premises)` pair must appear among the saturated
/// arguments and every rule it names must belong to the scenario.
pub fn verify_transcript(scenario: &Scenario, transcript: &Transcript) -> Vec<Unverified> {
    let derivable: BTreeSet<(Literal, BTreeSet<Literal>)> = derive_arguments(scenario)
        .into_iter()
        .map(|a| (a.conclusion, a.premises))
        .collect();
    let rule_names: BTreeSet<&str> = scenario.rules().iter().map(|r| r.name.as_str()).collect();

    let mut problems = Vec::new();
    for entry in transcript.entries() {
        let arg = &entry.argument;
        if let Some(unknown) = arg
            .rule_chain
            .iter()
            .find(|r| !rule_names.contains(r.as_str()))
        {
            problems.push(Unverified {
                argument_id: arg.id.clone(),
                reason: format!("rule {unknown:?} is not part of the scenario"),
            });
        } else if !derivable.contains(&(arg.conclusion.clone(), arg.premises.clone())) {
            problems.push(Unverified {
                argument_id: arg.id.clone(),
                reason: format!(
                    "conclusion {} is not derivable from the stated premises",
                    arg.conclusion
                ),
            });
        }
    }
    problems
}
