//! Scenarios, weighted ensembles, ensemble support and distinctness.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::agora::{
    label, saturate, InferenceRule, SaturationError, SchedulePolicy, Time, Transcript,
};
use crate::exact::{format_decimal, format_percent, is_unit_interval, to_f64, Rational};
use crate::lang::Literal;

/// Default `τ` separating "small" from "large" new-information bounds.
pub const DEFAULT_TAU: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScenarioError {
    #[error("scenario id must not be empty")]
    EmptyId,
    #[error("scenario {id}: weight {weight} outside [0, 1]")]
    WeightOutOfRange { id: String, weight: String },
    #[error("scenario {id}: new-information bound {eps} outside [0, 1]")]
    EpsOutOfRange { id: String, eps: f64 },
    #[error("scenario {id}: rule name {rule:?} used more than once")]
    DuplicateRule { id: String, rule: String },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnsembleError {
    #[error("an ensemble needs at least one scenario")]
    Empty,
    #[error("scenario id {0:?} appears more than once")]
    DuplicateScenario(String),
    #[error("total scenario weight is zero")]
    ZeroTotalWeight,
    #[error("scenario {0:?} has no transcript and no saturation policy was given")]
    MissingTranscript(String),
    #[error(transparent)]
    Parameter(#[from] ParameterError),
    #[error("scenario {id:?}: {source}")]
    Saturation { id: String, source: SaturationError },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParameterError {
    #[error("class epsilon {0} must lie strictly between 0 and 0.5")]
    ClassEpsilon(String),
    #[error("support {0} must lie in [0, 1]")]
    Support(String),
}

/// Assumptions plus inference rules equipping one debate.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    id: String,
    assumptions: BTreeSet<Literal>,
    rules: Vec<InferenceRule>,
    weight: Rational,
    eps_new_info: f64,
    transcript: Option<Transcript>,
}

impl Scenario {
    /// Rules are kept sorted by name. Assumptions need not be consistent.
    pub fn new<A, R>(
        id: &str,
        assumptions: A,
        rules: R,
        weight: Rational,
        eps_new_info: f64,
    ) -> Result<Self, ScenarioError>
    where
        A: IntoIterator<Item = Literal>,
        R: IntoIterator<Item = InferenceRule>,
    {
        if id.is_empty() {
            return Err(ScenarioError::EmptyId);
        }
        if !is_unit_interval(&weight) {
            return Err(ScenarioError::WeightOutOfRange {
                id: id.into(),
                weight: format_decimal(&weight, 18),
            });
        }
        if !(0.0..=1.0).contains(&eps_new_info) {
            return Err(ScenarioError::EpsOutOfRange {
                id: id.into(),
                eps: eps_new_info,
            });
        }
        let mut rules: Vec<InferenceRule> = rules.into_iter().collect();
        rules.sort_by(|a, b| a.name.cmp(&b.name));
        if let Some(w) = rules.windows(2).find(|w| w[0].name == w[1].name) {
            return Err(ScenarioError::DuplicateRule {
                id: id.into(),
                rule: w[0].name.clone(),
            });
        }
        Ok(Scenario {
            id: id.into(),
            assumptions: assumptions.into_iter().collect(),
            rules,
            weight,
            eps_new_info,
            transcript: None,
        })
    }

    pub fn with_transcript(mut self, transcript: Transcript) -> Self {
        self.transcript = Some(transcript);
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn assumptions(&self) -> &BTreeSet<Literal> {
        &self.assumptions
    }

    pub fn rules(&self) -> &[InferenceRule] {
        &self.rules
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn eps_new_info(&self) -> f64 {
        self.eps_new_info
    }

    pub fn transcript(&self) -> Option<&Transcript> {
        self.transcript.as_ref()
    }

    /// Rules compared by content; names are labels only.
    fn canonical_rules(&self) -> BTreeSet<(&BTreeSet<Literal>, &Literal, &str)> {
        self.rules
            .iter()
            .map(|r| (&r.antecedents, &r.consequent, r.mode.as_str()))
            .collect()
    }

    /// Identical assumptions and identical rules of inference.
    pub fn same_contents(&self, other: &Scenario) -> bool {
        self.assumptions == other.assumptions && self.canonical_rules() == other.canonical_rules()
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [weight {}, eps {}] assumptions {{",
            self.id,
            format_decimal(&self.weight, 18),
            self.eps_new_info
        )?;
        for (i, a) in self.assumptions.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("} rules {")?;
        for (i, r) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("}")
    }
}

fn check_class_epsilon(eps: &Rational) -> Result<(), ParameterError> {
    let half = Rational::new(1, 2);
    if eps.is_zero() || *eps >= half {
        return Err(ParameterError::ClassEpsilon(format_decimal(eps, 18)));
    }
    Ok(())
}

/// A finite collection of scenarios with weights and a class threshold `ε`.
/// Weights need not sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    scenarios: Vec<Scenario>,
    class_epsilon: Rational,
}

impl Ensemble {
    pub fn new(scenarios: Vec<Scenario>, class_epsilon: Rational) -> Result<Self, EnsembleError> {
        if scenarios.is_empty() {
            return Err(EnsembleError::Empty);
        }
        let mut ids = BTreeSet::new();
        for s in &scenarios {
            if !ids.insert(s.id.as_str()) {
                return Err(EnsembleError::DuplicateScenario(s.id.clone()));
            }
        }
        if scenarios.iter().all(|s| s.weight.is_zero()) {
            return Err(EnsembleError::ZeroTotalWeight);
        }
        check_class_epsilon(&class_epsilon)?;
        Ok(Ensemble {
            scenarios,
            class_epsilon,
        })
    }

    pub fn scenarios(&self) -> &[Scenario] {
        &self.scenarios
    }

    pub fn scenario(&self, id: &str) -> Option<&Scenario> {
        self.scenarios.iter().find(|s| s.id == id)
    }

    pub fn class_epsilon(&self) -> &Rational {
        &self.class_epsilon
    }

    pub fn total_weight(&self) -> Rational {
        self.scenarios.iter().map(|s| s.weight).sum()
    }
}

/// Cross-scenario support classes, declared weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SupportClass {
    Open,
    Possible,
    Probable,
    Certain,
    Inevitable,
}

impl SupportClass {
    /// Strongest first.
    pub const HIERARCHY: [SupportClass; 5] = [
        SupportClass::Inevitable,
        SupportClass::Certain,
        SupportClass::Probable,
        SupportClass::Possible,
        SupportClass::Open,
    ];

    /// Display name with the threshold folded in, e.g. `95%-Certain`.
    pub fn name_with(self, eps: &Rational) -> String {
        match self {
            SupportClass::Open => "Open".into(),
            SupportClass::Possible => format!("{}%-Possible", format_percent(eps)),
            SupportClass::Probable => "Probable".into(),
            SupportClass::Certain => {
                format!("{}%-Certain", format_percent(&(Rational::one() - eps)))
            }
            SupportClass::Inevitable => "Inevitable".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub classes: BTreeSet<SupportClass>,
    pub headline: SupportClass,
}

impl Classification {
    fn from_flags(possible: bool, probable: bool, certain: bool, inevitable: bool) -> Self {
        let mut classes = BTreeSet::from([SupportClass::Open]);
        for (flag, class) in [
            (possible, SupportClass::Possible),
            (probable, SupportClass::Probable),
            (certain, SupportClass::Certain),
            (inevitable, SupportClass::Inevitable),
        ] {
            if flag {
                classes.insert(class);
            }
        }
        let headline = *classes.iter().next_back().unwrap_or(&SupportClass::Open);
        Classification { classes, headline }
    }

    /// True iff the satisfied classes form a prefix of the hierarchy read from
    /// the weakest end, i.e. every class implies all weaker ones.
    pub fn is_hierarchy_prefix(&self) -> bool {
        let mut weakest_first = SupportClass::HIERARCHY.iter().rev();
        let held = weakest_first
            .by_ref()
            .take_while(|c| self.classes.contains(c))
            .count();
        held == self.classes.len()
    }
}

/// Exact classification of a support value against threshold `eps ∈ (0, ½)`.
pub fn classify_support(m: &Rational, eps: &Rational) -> Result<Classification, ParameterError> {
    check_class_epsilon(eps)?;
    if !is_unit_interval(m) {
        return Err(ParameterError::Support(format_decimal(m, 18)));
    }
    let one = Rational::one();
    Ok(Classification::from_flags(
        m >= eps,
        *m >= Rational::new(1, 2),
        *m >= one - eps,
        *m == one,
    ))
}

/// Floating-point variant for real-valued support; `Inevitable` requires
/// `m == 1.0` exactly.
pub fn classify_support_f64(m: f64, eps: f64) -> Result<Classification, ParameterError> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(ParameterError::ClassEpsilon(format!("{eps}")));
    }
    if !(0.0..=1.0).contains(&m) {
        return Err(ParameterError::Support(format!("{m}")));
    }
    Ok(Classification::from_flags(
        m >= eps,
        m >= 0.5,
        m >= 1.0 - eps,
        m == 1.0,
    ))
}

/// `Σ wᵢ·vᵢ / Σ wᵢ` over `(weight, valuation)` pairs.
pub fn weighted_support<'a, I>(pairs: I) -> Result<Rational, EnsembleError>
where
    I: IntoIterator<Item = (&'a Rational, bool)>,
{
    let (numer, denom) = pairs
        .into_iter()
        .fold((Rational::zero(), Rational::zero()), |(n, d), (w, v)| {
            (if v { n + w } else { n }, d + w)
        });
    if denom.is_zero() {
        return Err(EnsembleError::ZeroTotalWeight);
    }
    Ok(numer / denom)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioValuation {
    pub id: String,
    pub weight: Rational,
    pub valuation: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    pub claim: Literal,
    pub time: Time,
    pub support: Rational,
    pub per_scenario: Vec<ScenarioValuation>,
    pub classification: Classification,
    pub class_epsilon: Rational,
}

impl SupportReport {
    pub fn support_f64(&self) -> f64 {
        to_f64(&self.support)
    }

    pub fn class_names(&self) -> Vec<String> {
        self.classification
            .classes
            .iter()
            .map(|c| c.name_with(&self.class_epsilon))
            .collect()
    }
}

/// Ensemble support of `claim` at time `t`. Scenarios without an attached
/// transcript are saturated with `fallback`, or rejected when it is `None`.
pub fn ensemble_support(
    ensemble: &Ensemble,
    claim: &Literal,
    t: Time,
    fallback: Option<&SchedulePolicy>,
) -> Result<SupportReport, EnsembleError> {
    let mut per_scenario = Vec::with_capacity(ensemble.scenarios.len());
    for sc in &ensemble.scenarios {
        let valuation = match (&sc.transcript, fallback) {
            (Some(tr), _) => label(tr, claim, t).valuation,
            (None, Some(policy)) => {
                let (tr, _) = saturate(sc, policy).map_err(|source| EnsembleError::Saturation {
                    id: sc.id.clone(),
                    source,
                })?;
                label(&tr, claim, t).valuation
            }
            (None, None) => return Err(EnsembleError::MissingTranscript(sc.id.clone())),
        };
        per_scenario.push(ScenarioValuation {
            id: sc.id.clone(),
            weight: sc.weight,
            valuation,
        });
    }
    let support = weighted_support(per_scenario.iter().map(|p| (&p.weight, p.valuation)))?;
    let classification = classify_support(&support, &ensemble.class_epsilon)?;
    Ok(SupportReport {
        claim: claim.clone(),
        time: t,
        support,
        per_scenario,
        classification,
        class_epsilon: ensemble.class_epsilon,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distinctness {
    Distinct,
    NonDistinct,
}

/// Which branch of the decision rule produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistinctnessCase {
    /// Assumptions or rules differ.
    ContentsDiffer,
    /// Identical contents, both new-information bounds small.
    IdenticalLowRisk,
    /// Identical contents, at least one bound large.
    IdenticalHighRisk,
}

impl DistinctnessCase {
    pub fn code(self) -> &'static str {
        match self {
            DistinctnessCase::ContentsDiffer => "1",
            DistinctnessCase::IdenticalLowRisk => "2A",
            DistinctnessCase::IdenticalHighRisk => "2B",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistinctnessVerdict {
    pub pair: (String, String),
    pub verdict: Distinctness,
    pub case: DistinctnessCase,
    pub rationale: String,
    pub tau: f64,
}

/// Lower bound on the probability that two identical debates agree in the
/// long run, given new-information bounds `eps1`, `eps2`.
pub fn agreement_lower_bound(eps1: f64, eps2: f64) -> f64 {
    (1.0 - eps1 - eps2).max(0.0)
}

/// Scenario-pair decision rule. Contents are compared first and the
/// new-information bounds are consulted only for identical contents; the
/// debates' outcomes are never inspected.
pub fn distinctness(s1: &Scenario, s2: &Scenario, tau: f64) -> DistinctnessVerdict {
    let pair = (s1.id.clone(), s2.id.clone());
    if !s1.same_contents(s2) {
        let what = match (
            s1.assumptions == s2.assumptions,
            s1.canonical_rules() == s2.canonical_rules(),
        ) {
            (false, false) => "assumptions and inference rules differ",
            (false, true) => "assumptions differ",
            _ => "inference rules differ",
        };
        return DistinctnessVerdict {
            pair,
            verdict: Distinctness::Distinct,
            case: DistinctnessCase::ContentsDiffer,
            rationale: what.into(),
            tau,
        };
    }
    let (e1, e2) = (s1.eps_new_info, s2.eps_new_info);
    let bound = agreement_lower_bound(e1, e2);
    if e1.max(e2) <= tau {
        DistinctnessVerdict {
            pair,
            verdict: Distinctness::NonDistinct,
            case: DistinctnessCase::IdenticalLowRisk,
            rationale: format!(
                "identical contents; new-information bounds {e1} and {e2} are at most tau = {tau}; \
                 long-run agreement probability >= {bound}"
            ),
            tau,
        }
    } else {
        DistinctnessVerdict {
            pair,
            verdict: Distinctness::Distinct,
            case: DistinctnessCase::IdenticalHighRisk,
            rationale: format!(
                "identical contents, but new-information bound {} exceeds tau = {tau}; \
                 long-run agreement only guaranteed with probability >= {bound}",
                e1.max(e2)
            ),
            tau,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistinctnessAudit {
    pub verdicts: Vec<DistinctnessVerdict>,
    /// False when any pair is non-distinct.
    pub compliant: bool,
}

/// Verdicts for every unordered pair, in scenario-list order.
pub fn audit_distinctness(ensemble: &Ensemble, tau: f64) -> DistinctnessAudit {
    let sc = &ensemble.scenarios;
    let verdicts: Vec<DistinctnessVerdict> = (0..sc.len())
        .flat_map(|i| (i + 1..sc.len()).map(move |j| (i, j)))
        .map(|(i, j)| distinctness(&sc[i], &sc[j], tau))
        .collect();
    let compliant = verdicts.iter().all(|v| v.verdict == Distinctness::Distinct);
    DistinctnessAudit {
        verdicts,
        compliant,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agora::Argument;
    use crate::agora::Move;
    use crate::exact::parse_decimal;
    use proptest::prelude::*;

    fn lit(s: &str) -> Literal {
        Literal::parse(s).unwrap()
    }

    fn q(s: &str) -> Rational {
        parse_decimal(s).unwrap()
    }

    fn accepting(claim: &str) -> Transcript {
        Transcript::new(alloc::vec![Move::Articulate {
            time: 1,
            argument: Argument::new("A1", lit(claim)),
        }])
        .unwrap()
    }

    fn scenario(id: &str, assumptions: &[&str], weight: &str, eps: f64) -> Scenario {
        Scenario::new(id, assumptions.iter().map(|a| lit(a)), [], q(weight), eps).unwrap()
    }

    fn gmss() -> Ensemble {
        let s1 = scenario("s1", &["expand", "roam"], "0.7", 0.05)
            .with_transcript(accepting("demand_high"));
        let s2 =
            scenario("s2", &["expand", "!roam"], "0.7", 0.05).with_transcript(Transcript::empty());
        let s3 = scenario("s3", &["!expand", "roam"], "0.3", 0.05)
            .with_transcript(accepting("demand_high"));
        Ensemble::new(alloc::vec![s1, s2, s3], q("0.05")).unwrap()
    }

    #[test]
    fn gmss_support_is_ten_seventeenths() {
        let report = ensemble_support(&gmss(), &lit("demand_high"), 1, None).unwrap();
        assert_eq!(report.support, Rational::new(10, 17));
        assert!((report.support_f64() - 0.588235).abs() < 1e-6);
        assert_eq!(report.classification.headline, SupportClass::Probable);
        assert_eq!(
            report.class_names(),
            ["Open", "5%-Possible", "Probable"].map(String::from)
        );
    }

    #[test]
    fn all_or_nothing_support() {
        let w = [q("0.2"), q("0.9")];
        assert_eq!(
            weighted_support(w.iter().map(|x| (x, true))).unwrap(),
            Rational::one()
        );
        assert_eq!(
            weighted_support(w.iter().map(|x| (x, false))).unwrap(),
            Rational::zero()
        );
        let zero = [q("0"), q("0")];
        assert_eq!(
            weighted_support(zero.iter().map(|x| (x, true))),
            Err(EnsembleError::ZeroTotalWeight)
        );
    }

    #[test]
    fn missing_transcript_without_fallback_is_rejected() {
        let e = Ensemble::new(alloc::vec![scenario("s", &["a"], "1", 0.0)], q("0.1")).unwrap();
        assert_eq!(
            ensemble_support(&e, &lit("a"), 1, None),
            Err(EnsembleError::MissingTranscript("s".into()))
        );
        let r = ensemble_support(&e, &lit("a"), 1, Some(&SchedulePolicy::AllAtOnce)).unwrap();
        assert_eq!(r.support, Rational::one());
    }

    #[test]
    fn ensemble_validation() {
        assert_eq!(
            Ensemble::new(alloc::vec![], q("0.1")),
            Err(EnsembleError::Empty)
        );
        let dup = alloc::vec![
            scenario("s", &[], "1", 0.0),
            scenario("s", &["a"], "1", 0.0)
        ];
        assert_eq!(
            Ensemble::new(dup, q("0.1")),
            Err(EnsembleError::DuplicateScenario("s".into()))
        );
        let zero = alloc::vec![scenario("s", &[], "0", 0.0)];
        assert_eq!(
            Ensemble::new(zero, q("0.1")),
            Err(EnsembleError::ZeroTotalWeight)
        );
        for eps in ["0", "0.5", "0.7"] {
            assert!(Ensemble::new(alloc::vec![scenario("s", &[], "1", 0.0)], q(eps)).is_err());
        }
        assert!(matches!(
            Scenario::new("x", [], [], q("1.3"), 0.0),
            Err(ScenarioError::WeightOutOfRange { .. })
        ));
        assert!(matches!(
            Scenario::new("x", [], [], q("1"), 1.5),
            Err(ScenarioError::EpsOutOfRange { .. })
        ));
        let r = InferenceRule::new("r", [], lit("a"), "deductive");
        assert!(matches!(
            Scenario::new("x", [], [r.clone(), r], q("1"), 0.0),
            Err(ScenarioError::DuplicateRule { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let eps = q("0.05");
        let c = classify_support(&Rational::new(10, 17), &eps).unwrap();
        assert_eq!(
            c.classes,
            BTreeSet::from([
                SupportClass::Open,
                SupportClass::Possible,
                SupportClass::Probable
            ])
        );
        let c = classify_support(&Rational::one(), &eps).unwrap();
        assert_eq!(c.classes.len(), 5);
        assert_eq!(c.headline, SupportClass::Inevitable);
        let c = classify_support(&q("0.04"), &eps).unwrap();
        assert_eq!(c.classes, BTreeSet::from([SupportClass::Open]));
        // Boundaries are inclusive.
        let c = classify_support(&q("0.95"), &eps).unwrap();
        assert_eq!(c.headline, SupportClass::Certain);
        let c = classify_support(&q("0.05"), &eps).unwrap();
        assert_eq!(c.headline, SupportClass::Possible);
    }

    #[test]
    fn classify_rejects_bad_parameters() {
        assert!(classify_support(&q("0.5"), &q("0.5")).is_err());
        assert!(classify_support(&q("0.5"), &q("0")).is_err());
        assert!(classify_support(&Rational::new(3, 2), &q("0.1")).is_err());
        assert!(classify_support_f64(0.5, 0.0).is_err());
        assert!(classify_support_f64(0.5, 0.6).is_err());
        let c = classify_support_f64(0.588235, 0.05).unwrap();
        assert_eq!(c.headline, SupportClass::Probable);
        assert_eq!(
            classify_support_f64(1.0, 0.2).unwrap().headline,
            SupportClass::Inevitable
        );
    }

    #[test]
    fn class_names_fold_in_threshold() {
        let eps = q("0.05");
        assert_eq!(SupportClass::Possible.name_with(&eps), "5%-Possible");
        assert_eq!(SupportClass::Certain.name_with(&eps), "95%-Certain");
        assert_eq!(SupportClass::Certain.name_with(&q("0.25")), "75%-Certain");
    }

    #[test]
    fn agreement_bound_examples() {
        assert!((agreement_lower_bound(0.1, 0.2) - 0.7).abs() < 1e-12);
        assert_eq!(agreement_lower_bound(0.0, 0.0), 1.0);
        assert_eq!(agreement_lower_bound(0.8, 0.9), 0.0);
    }

    #[test]
    fn distinctness_cases() {
        let a = scenario("a", &["x"], "1", 0.01);
        let b = scenario("b", &["y"], "1", 0.02);
        let v = distinctness(&a, &b, DEFAULT_TAU);
        assert_eq!((v.verdict, v.case.code()), (Distinctness::Distinct, "1"));

        let a2 = scenario("a2", &["x"], "1", 0.02);
        let v = distinctness(&a, &a2, 0.1);
        assert_eq!(
            (v.verdict, v.case.code()),
            (Distinctness::NonDistinct, "2A")
        );

        let a3 = scenario("a3", &["x"], "1", 0.5);
        let v = distinctness(&a3, &a, 0.1);
        assert_eq!((v.verdict, v.case.code()), (Distinctness::Distinct, "2B"));
    }

    #[test]
    fn rule_names_do_not_affect_contents() {
        let r1 = InferenceRule::new("r1", [lit("a")], lit("b"), "deductive");
        let r2 = InferenceRule::new("other", [lit("a")], lit("b"), "deductive");
        let r3 = InferenceRule::new("r1", [lit("a")], lit("b"), "analogical");
        let s1 = Scenario::new("s1", [lit("a")], [r1], q("1"), 0.0).unwrap();
        let s2 = Scenario::new("s2", [lit("a")], [r2], q("1"), 0.0).unwrap();
        let s3 = Scenario::new("s3", [lit("a")], [r3], q("1"), 0.0).unwrap();
        assert!(s1.same_contents(&s2));
        assert!(!s1.same_contents(&s3));
        assert_eq!(
            distinctness(&s1, &s3, 0.1).rationale,
            "inference rules differ"
        );
    }

    #[test]
    fn audit_examples() {
        let audit = audit_distinctness(&gmss(), DEFAULT_TAU);
        assert_eq!(audit.verdicts.len(), 3);
        assert!(audit.compliant);
        assert!(audit
            .verdicts
            .iter()
            .all(|v| v.case == DistinctnessCase::ContentsDiffer));

        let dup = Ensemble::new(
            alloc::vec![
                scenario("a", &["x"], "1", 0.01),
                scenario("b", &["x"], "1", 0.01)
            ],
            q("0.1"),
        )
        .unwrap();
        let audit = audit_distinctness(&dup, DEFAULT_TAU);
        assert!(!audit.compliant);
        assert_eq!(audit.verdicts[0].verdict, Distinctness::NonDistinct);

        let single = Ensemble::new(alloc::vec![scenario("a", &[], "1", 0.0)], q("0.1")).unwrap();
        assert!(audit_distinctness(&single, DEFAULT_TAU).verdicts.is_empty());
    }

    fn arb_weights_and_vals() -> impl Strategy<Value = Vec<(u32, bool)>> {
        proptest::collection::vec((1u32..=1000, any::<bool>()), 1..10)
    }

    proptest! {
        #[test]
        fn support_is_scale_invariant(pairs in arb_weights_and_vals(), c in 1u128..50) {
            let w: Vec<Rational> = pairs.iter().map(|(n, _)| Rational::new(u128::from(*n), 1000)).collect();
            let scaled: Vec<Rational> = w.iter().map(|x| x * Rational::new(c, 100)).collect();
            let a = weighted_support(w.iter().zip(pairs.iter().map(|p| p.1))).unwrap();
            let b = weighted_support(scaled.iter().zip(pairs.iter().map(|p| p.1))).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn equal_weights_give_fraction_accepted(vals in proptest::collection::vec(any::<bool>(), 1..12)) {
            let w = Rational::new(3, 10);
            let m = weighted_support(vals.iter().map(|v| (&w, *v))).unwrap();
            let ones = vals.iter().filter(|v| **v).count() as u128;
            prop_assert_eq!(m, Rational::new(ones, vals.len() as u128));
        }

        #[test]
        fn support_is_monotone_in_valuations(pairs in arb_weights_and_vals(), flip in 0usize..10) {
            let w: Vec<Rational> = pairs.iter().map(|(n, _)| Rational::from_integer(u128::from(*n))).collect();
            let before: Vec<bool> = pairs.iter().map(|p| p.1).collect();
            let mut after = before.clone();
            let k = flip % after.len();
            after[k] = true;
            let a = weighted_support(w.iter().zip(before)).unwrap();
            let b = weighted_support(w.iter().zip(after)).unwrap();
            prop_assert!(b >= a);
        }

        #[test]
        fn classes_form_hierarchy_prefix(num in 0u128..=1000, eps_num in 1u128..500) {
            let c = classify_support(&Rational::new(num, 1000), &Rational::new(eps_num, 1000)).unwrap();
            prop_assert!(c.is_hierarchy_prefix());
        }

        #[test]
        fn distinctness_is_symmetric(
            a1 in proptest::collection::btree_set("[pq]", 0..3),
            a2 in proptest::collection::btree_set("[pq]", 0..3),
            e1 in 0.0f64..=1.0, e2 in 0.0f64..=1.0, tau in 0.01f64..0.99,
        ) {
            let s1 = Scenario::new("x", a1.iter().map(|a| lit(a)), [], q("1"), e1).unwrap();
            let s2 = Scenario::new("y", a2.iter().map(|a| lit(a)), [], q("1"), e2).unwrap();
            let v12 = distinctness(&s1, &s2, tau);
            let v21 = distinctness(&s2, &s1, tau);
            prop_assert_eq!(v12.verdict, v21.verdict);
            prop_assert_eq!(v12.case, v21.case);
        }

        #[test]
        fn differing_contents_ignore_eps(e1 in 0.0f64..=1.0, e2 in 0.0f64..=1.0) {
            let s1 = Scenario::new("x", [lit("p")], [], q("1"), e1).unwrap();
            let s2 = Scenario::new("y", [lit("q")], [], q("1"), e2).unwrap();
            let v = distinctness(&s1, &s2, 0.1);
            prop_assert_eq!(v.case, DistinctnessCase::ContentsDiffer);
            prop_assert_eq!(v.rationale, "assumptions differ");
        }
    }
}
