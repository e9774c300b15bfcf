//! Debate transcripts, attack relations and per-time uncertainty labels.
//!
//! A [`Transcript`] is the time-ordered record of articulation and retraction
//! moves of one debate. At any time `t` the active arguments are those
//! articulated at or before `t` and not yet retracted; labels and the 0/1
//! truth valuation of a claim are pure functions of that active set.

mod saturate;

pub use saturate::{
    derive_arguments, saturate, verify_transcript, SaturationError, SchedulePolicy, Unverified,
};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::lang::{consistent, Literal};

/// Discrete debate time.
pub type Time = u64;

/// A named, possibly non-deductive, rule of inference.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InferenceRule {
    pub name: String,
    pub antecedents: BTreeSet<Literal>,
    pub consequent: Literal,
    /// Free-form tag such as `deductive` or `analogical`.
    pub mode: String,
}

impl InferenceRule {
    pub fn new<I>(name: &str, antecedents: I, consequent: Literal, mode: &str) -> Self
    where
        I: IntoIterator<Item = Literal>,
    {
        InferenceRule {
            name: name.into(),
            antecedents: antecedents.into_iter().collect(),
            consequent,
            mode: mode.into(),
        }
    }
}

impl fmt::Display for InferenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.name)?;
        for (i, a) in self.antecedents.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, " -> {} [{}]", self.consequent, self.mode)
    }
}

/// The content of an articulated argument. Timing lives in [`Entry`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Argument {
    pub id: String,
    pub conclusion: Literal,
    /// The assumptions the argument rests on.
    pub premises: BTreeSet<Literal>,
    pub rule_chain: Vec<String>,
    /// Opaque commitment grade. Not consulted by label computation.
    pub strength: Option<String>,
    pub proponent: Option<String>,
}

impl Argument {
    pub fn new(id: &str, conclusion: Literal) -> Self {
        Argument {
            id: id.into(),
            conclusion,
            premises: BTreeSet::new(),
            rule_chain: Vec::new(),
            strength: None,
            proponent: None,
        }
    }

    pub fn with_premises<I: IntoIterator<Item = Literal>>(mut self, premises: I) -> Self {
        self.premises = premises.into_iter().collect();
        self
    }

    pub fn with_rules<I, S>(mut self, rules: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.rule_chain = rules.into_iter().map(Into::into).collect();
        self
    }

    /// Premises together with the conclusion are free of complementary pairs.
    pub fn is_consistent(&self) -> bool {
        consistent(
            self.premises
                .iter()
                .chain(core::iter::once(&self.conclusion)),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Articulate { time: Time, argument: Argument },
    Retract { time: Time, argument_id: String },
}

impl Move {
    pub fn time(&self) -> Time {
        match self {
            Move::Articulate { time, .. } | Move::Retract { time, .. } => *time,
        }
    }
}

/// An argument together with the interval during which it is active.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub argument: Argument,
    pub articulated_at: Time,
    /// Absent from active sets for every `t >= retracted_at`.
    pub retracted_at: Option<Time>,
}

impl Entry {
    pub fn is_active_at(&self, t: Time) -> bool {
        self.articulated_at <= t && self.retracted_at.map_or(true, |r| r > t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranscriptError {
    #[error("move {index}: time {time} is earlier than the preceding move at {previous}")]
    TimeDecreased {
        index: usize,
        time: Time,
        previous: Time,
    },
    #[error("move {index}: argument id {id:?} is articulated twice")]
    DuplicateId { index: usize, id: String },
    #[error("move {index}: retraction of unknown argument {id:?}")]
    UnknownArgument { index: usize, id: String },
    #[error("move {index}: argument {id:?} is already retracted")]
    AlreadyRetracted { index: usize, id: String },
    #[error("move {index}: argument {id:?} retracted at {time}, not after its articulation at {articulated_at}")]
    RetractedTooEarly {
        index: usize,
        id: String,
        time: Time,
        articulated_at: Time,
    },
}

/// Validated, immutable record of one debate.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Transcript {
    moves: Vec<Move>,
    entries: Vec<Entry>,
    horizon: Time,
}

impl Transcript {
    pub fn empty() -> Self {
        Transcript::default()
    }

    pub fn new(moves: Vec<Move>) -> Result<Self, TranscriptError> {
        let mut entries: Vec<Entry> = Vec::new();
        let mut index_of: BTreeMap<String, usize> = BTreeMap::new();
        let mut previous: Time = 0;
        for (index, mv) in moves.iter().enumerate() {
            let time = mv.time();
            if time < previous {
                return Err(TranscriptError::TimeDecreased {
                    index,
                    time,
                    previous,
                });
            }
            previous = time;
            match mv {
                Move::Articulate { argument, .. } => {
                    if index_of.contains_key(&argument.id) {
                        return Err(TranscriptError::DuplicateId {
                            index,
                            id: argument.id.clone(),
                        });
                    }
                    index_of.insert(argument.id.clone(), entries.len());
                    entries.push(Entry {
                        argument: argument.clone(),
                        articulated_at: time,
                        retracted_at: None,
                    });
                }
                Move::Retract { argument_id, .. } => {
                    let Some(&at) = index_of.get(argument_id) else {
                        return Err(TranscriptError::UnknownArgument {
                            index,
                            id: argument_id.clone(),
                        });
                    };
                    let entry = &mut entries[at];
                    if entry.retracted_at.is_some() {
                        return Err(TranscriptError::AlreadyRetracted {
                            index,
                            id: argument_id.clone(),
                        });
                    }
                    if time <= entry.articulated_at {
                        return Err(TranscriptError::RetractedTooEarly {
                            index,
                            id: argument_id.clone(),
                            time,
                            articulated_at: entry.articulated_at,
                        });
                    }
                    entry.retracted_at = Some(time);
                }
            }
        }
        Ok(Transcript {
            moves,
            entries,
            horizon: previous,
        })
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Latest move time, 0 for an empty transcript.
    pub fn horizon(&self) -> Time {
        self.horizon
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Arguments active at `t`, in articulation order.
    pub fn active_arguments(&self, t: Time) -> Vec<&Argument> {
        self.entries
            .iter()
            .filter(|e| e.is_active_at(t))
            .map(|e| &e.argument)
            .collect()
    }
}

/// How one argument attacks another.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AttackKind {
    /// The attacker concludes the negation of the target's conclusion.
    Rebuttal,
    /// The attacker concludes the negation of this premise of the target.
    Undercut(Literal),
}

/// Classifies the attack of `attacker` on `target`, if any. Rebuttal takes
/// precedence; an undercut reports the least premise it negates.
pub fn attacks(attacker: &Argument, target: &Argument) -> Option<AttackKind> {
    if attacker.conclusion.is_complement_of(&target.conclusion) {
        return Some(AttackKind::Rebuttal);
    }
    target
        .premises
        .iter()
        .find(|p| p.is_complement_of(&attacker.conclusion))
        .map(|p| AttackKind::Undercut(p.clone()))
}

/// Per-debate uncertainty labels, declared weakest first so that the derived
/// ordering ranks `Accepted` highest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Open,
    Supported,
    Plausible,
    Probable,
    Accepted,
}

impl Label {
    pub const ALL: [Label; 5] = [
        Label::Accepted,
        Label::Probable,
        Label::Plausible,
        Label::Supported,
        Label::Open,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Open => "Open",
            Label::Supported => "Supported",
            Label::Plausible => "Plausible",
            Label::Probable => "Probable",
            Label::Accepted => "Accepted",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelReport {
    pub claim: Literal,
    pub time: Time,
    pub satisfied: BTreeSet<Label>,
    pub headline: Label,
    /// Truth valuation `v_t`: true iff `Accepted` is satisfied.
    pub valuation: bool,
}

/// Labels satisfied by `claim` over a fixed set of active arguments.
///
/// * Supported: some argument concludes the claim.
/// * Plausible: some such argument has consistent premises and conclusion.
/// * Probable: Plausible, and no active argument attacks any argument for the
///   claim.
/// * Accepted: some argument `A` for the claim is well-defended: every active
///   attacker of `A` is itself attacked by an active argument other than `A`.
pub fn labels_over(active: &[&Argument], claim: &Literal) -> BTreeSet<Label> {
    let mut satisfied = BTreeSet::new();
    satisfied.insert(Label::Open);

    let support: Vec<usize> = (0..active.len())
        .filter(|&i| active[i].conclusion == *claim)
        .collect();
    if support.is_empty() {
        return satisfied;
    }
    satisfied.insert(Label::Supported);

    let plausible = support.iter().any(|&i| active[i].is_consistent());
    if plausible {
        satisfied.insert(Label::Plausible);
    }

    let attackers_of = |target: usize| {
        (0..active.len()).filter(move |&b| attacks(active[b], active[target]).is_some())
    };

    let unattacked = support.iter().all(|&a| attackers_of(a).next().is_none());
    if plausible && unattacked {
        satisfied.insert(Label::Probable);
    }

    let well_defended = support.iter().any(|&a| {
        attackers_of(a)
            .all(|b| (0..active.len()).any(|c| c != a && attacks(active[c], active[b]).is_some()))
    });
    if well_defended {
        satisfied.insert(Label::Accepted);
    }
    satisfied
}

pub fn label(transcript: &Transcript, claim: &Literal, t: Time) -> LabelReport {
    let active = transcript.active_arguments(t);
    let satisfied = labels_over(&active, claim);
    let headline = *satisfied.iter().next_back().unwrap_or(&Label::Open);
    LabelReport {
        claim: claim.clone(),
        time: t,
        valuation: satisfied.contains(&Label::Accepted),
        satisfied,
        headline,
    }
}

pub fn truth_valuation(transcript: &Transcript, claim: &Literal, t: Time) -> bool {
    label(transcript, claim, t).valuation
}

/// `v_1 .. v_{t_max}` for the claim.
pub fn timeline(transcript: &Transcript, claim: &Literal, t_max: Time) -> Vec<bool> {
    (1..=t_max)
        .map(|t| truth_valuation(transcript, claim, t))
        .collect()
}
