//! Report records, rendered either as text or as versioned JSON.

use std::fmt::Write;

use serde::Serialize;

use scenario_core::agora::{LabelReport, Time};
use scenario_core::ensemble::{DistinctnessVerdict, SupportReport};
use scenario_core::exact::{format_fixed, Rational};
use scenario_core::stochastic::{BoundReport, Relation};

use crate::format::FORMAT_VERSION;

/// Decimal places in rendered supports.
pub const SUPPORT_PLACES: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Structured,
}

pub trait Report: Serialize {
    fn text(&self) -> String;
}

pub fn render<R: Report>(report: &R, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => report.text(),
        OutputFormat::Structured => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactValue {
    pub numerator: String,
    pub denominator: String,
    pub decimal: String,
}

impl ExactValue {
    pub fn new(r: &Rational) -> Self {
        ExactValue {
            numerator: r.numer().to_string(),
            denominator: r.denom().to_string(),
            decimal: format_fixed(r, SUPPORT_PLACES),
        }
    }
}

impl std::fmt::Display for ExactValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.denominator == "1" {
            write!(f, "{} ({})", self.numerator, self.decimal)
        } else {
            write!(
                f,
                "{}/{} ({})",
                self.numerator, self.denominator, self.decimal
            )
        }
    }
}

fn join<I: IntoIterator<Item = S>, S: AsRef<str>>(items: I) -> String {
    items
        .into_iter()
        .map(|s| s.as_ref().to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, Serialize)]
pub struct PairVerdict {
    pub first: String,
    pub second: String,
    pub verdict: String,
    pub case: String,
    pub rationale: String,
}

impl From<&DistinctnessVerdict> for PairVerdict {
    fn from(v: &DistinctnessVerdict) -> Self {
        PairVerdict {
            first: v.pair.0.clone(),
            second: v.pair.1.clone(),
            verdict: format!("{:?}", v.verdict),
            case: v.case.code().into(),
            rationale: v.rationale.clone(),
        }
    }
}

impl PairVerdict {
    fn line(&self) -> String {
        format!(
            "{} / {}: {} (case {}): {}",
            self.first, self.second, self.verdict, self.case, self.rationale
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateReport {
    pub format_version: u32,
    pub file: String,
    pub scenarios: usize,
    pub transcripts: usize,
    pub total_weight: ExactValue,
    pub class_epsilon: ExactValue,
    pub tau: f64,
    pub distinctness: Vec<PairVerdict>,
    pub distinct: bool,
    pub diagnostics: Vec<String>,
    pub clean: bool,
}

impl Report for ValidateReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{}: {} scenarios, {} transcripts, total weight {}, class epsilon {}",
            self.file,
            self.scenarios,
            self.transcripts,
            self.total_weight,
            self.class_epsilon.decimal
        );
        for v in &self.distinctness {
            let _ = writeln!(s, "  {}", v.line());
        }
        let _ = writeln!(
            s,
            "distinctness (tau {}): {}",
            self.tau,
            if self.distinct {
                "all pairs Distinct"
            } else {
                "some pairs NonDistinct"
            }
        );
        for d in &self.diagnostics {
            let _ = writeln!(s, "error: {d}");
        }
        let _ = writeln!(s, "{}", if self.clean { "clean" } else { "not clean" });
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LabelOutput {
    pub format_version: u32,
    pub claim: String,
    pub time: Time,
    /// Weakest first.
    pub labels: Vec<String>,
    pub headline: String,
    pub valuation: u8,
}

impl From<&LabelReport> for LabelOutput {
    fn from(r: &LabelReport) -> Self {
        LabelOutput {
            format_version: FORMAT_VERSION,
            claim: r.claim.to_string(),
            time: r.time,
            labels: r.satisfied.iter().map(|l| l.as_str().to_string()).collect(),
            headline: r.headline.as_str().into(),
            valuation: u8::from(r.valuation),
        }
    }
}

impl Report for LabelOutput {
    fn text(&self) -> String {
        format!(
            "{} at t = {}: {} [{}], v = {}\n",
            self.claim,
            self.time,
            self.headline,
            join(&self.labels),
            self.valuation
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioLine {
    pub id: String,
    pub weight: ExactValue,
    pub valuation: u8,
}

#[derive(Debug, Clone, Serialize)]
pub struct SupportOutput {
    pub format_version: u32,
    pub claim: String,
    pub time: Time,
    pub support: ExactValue,
    pub class_epsilon: ExactValue,
    /// Weakest first.
    pub classes: Vec<String>,
    pub headline: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub per_scenario: Vec<ScenarioLine>,
}

impl SupportOutput {
    pub fn from_report(r: &SupportReport) -> Self {
        let classes = r.class_names();
        SupportOutput {
            format_version: FORMAT_VERSION,
            claim: r.claim.to_string(),
            time: r.time,
            support: ExactValue::new(&r.support),
            class_epsilon: ExactValue::new(&r.class_epsilon),
            headline: r.classification.headline.name_with(&r.class_epsilon),
            classes,
            per_scenario: r
                .per_scenario
                .iter()
                .map(|p| ScenarioLine {
                    id: p.id.clone(),
                    weight: ExactValue::new(&p.weight),
                    valuation: u8::from(p.valuation),
                })
                .collect(),
        }
    }
}

impl Report for SupportOutput {
    fn text(&self) -> String {
        let mut s = String::new();
        if !self.claim.is_empty() {
            let _ = writeln!(s, "claim {} at t = {}", self.claim, self.time);
            for p in &self.per_scenario {
                let _ = writeln!(
                    s,
                    "  {}: weight {}, v = {}",
                    p.id, p.weight.decimal, p.valuation
                );
            }
        }
        let _ = writeln!(s, "support {}", self.support);
        let _ = writeln!(s, "{} [{}]", self.headline, join(&self.classes));
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DistinctOutput {
    pub format_version: u32,
    pub tau: f64,
    pub verdicts: Vec<PairVerdict>,
    pub distinct: bool,
}

impl Report for DistinctOutput {
    fn text(&self) -> String {
        let mut s = String::new();
        for v in &self.verdicts {
            let _ = writeln!(s, "{}", v.line());
        }
        let _ = writeln!(
            s,
            "{}",
            if self.distinct {
                "all pairs Distinct"
            } else {
                "some pairs NonDistinct"
            }
        );
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TimelineOutput {
    pub format_version: u32,
    pub claim: String,
    pub values: Vec<u8>,
    pub series: Vec<crate::format::SeriesPoint>,
}

impl Report for TimelineOutput {
    fn text(&self) -> String {
        let mut s = format!("# {}\nt\tv\theadline\n", self.claim);
        for p in &self.series {
            let _ = writeln!(s, "{}\t{}\t{}", p.t, p.value, p.headline);
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateOutput {
    pub format_version: u32,
    pub claim: String,
    pub method: String,
    pub n: usize,
    pub estimate: f64,
}

impl Report for EstimateOutput {
    fn text(&self) -> String {
        format!(
            "{} over {} snapshots of {}: {}\n",
            self.method, self.n, self.claim, self.estimate
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SaturateOutput {
    pub format_version: u32,
    pub scenario: String,
    pub arguments: usize,
    pub saturation_time: Time,
    pub transcript: crate::format::TranscriptDoc,
}

impl Report for SaturateOutput {
    fn text(&self) -> String {
        let mut s = format!(
            "scenario {}: {} arguments, saturated at t = {}\n",
            self.scenario, self.arguments, self.saturation_time
        );
        for m in &self.transcript.moves {
            if let crate::format::MoveDoc::Articulate { t, argument } = m {
                let _ = writeln!(
                    s,
                    "  t = {t}: {} concludes {} from {{{}}} via [{}]",
                    argument.id,
                    argument.conclusion,
                    join(&argument.premises),
                    join(&argument.rule_chain)
                );
            }
        }
        s
    }
}

/// One checked inequality or property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimRecord {
    pub id: String,
    pub relation: String,
    pub bound: f64,
    pub frequency: f64,
    pub trials: u64,
    pub se: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl From<&BoundReport> for SimRecord {
    fn from(b: &BoundReport) -> Self {
        SimRecord {
            id: b.id.clone(),
            relation: relation(b.relation).into(),
            bound: b.bound,
            frequency: b.frequency,
            trials: b.trials,
            se: b.standard_error,
            pass: b.satisfied_within_3se,
            detail: None,
        }
    }
}

pub fn relation(r: Relation) -> &'static str {
    match r {
        Relation::AtLeast => ">=",
        Relation::AtMost => "<=",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulateOutput {
    pub format_version: u32,
    pub check: String,
    pub seed: u64,
    pub rng: String,
    pub records: Vec<SimRecord>,
    pub pass: bool,
}

impl Report for SimulateOutput {
    fn text(&self) -> String {
        let mut s = format!("{} (seed {})\n", self.check, self.seed);
        for r in &self.records {
            let _ = writeln!(
                s,
                "  {:<24} {:.6} {} {:.6} (se {:.6}, n = {}): {}",
                r.id,
                r.frequency,
                r.relation,
                r.bound,
                r.se,
                r.trials,
                if r.pass { "PASS" } else { "FAIL" }
            );
            if let Some(d) = &r.detail {
                for line in d.lines() {
                    let _ = writeln!(s, "      {line}");
                }
            }
        }
        let _ = writeln!(s, "{}", if self.pass { "PASS" } else { "FAIL" });
        s
    }
}
