//! On-disk JSON documents, all carrying `format_version: 1`.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use scenario_core::agora::{Argument, InferenceRule, Move, Time, Transcript};
use scenario_core::ensemble::{Ensemble, Scenario};
use scenario_core::exact::parse_decimal;
use scenario_core::lang::Literal;

pub const FORMAT_VERSION: u32 = 1;

fn current_version() -> u32 {
    FORMAT_VERSION
}

fn strict_mode() -> String {
    "strict".into()
}

/// Parses `text`, reporting the JSON path of the first offending element.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        anyhow!("at `{path}`: {}", e.into_inner())
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_json(&text).with_context(|| format!("invalid document {}", path.display()))
}

fn check_version(version: u32) -> Result<()> {
    if version != FORMAT_VERSION {
        bail!("at `format_version`: unsupported version {version}, expected {FORMAT_VERSION}");
    }
    Ok(())
}

fn literal(text: &str, at: &str) -> Result<Literal> {
    Literal::parse(text).map_err(|e| anyhow!("at `{at}`: {e}"))
}

fn literals(texts: &[String], at: &str) -> Result<Vec<Literal>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| literal(t, &format!("{at}[{i}]")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgumentDoc {
    pub id: String,
    pub conclusion: String,
    #[serde(default)]
    pub premises: Vec<String>,
    #[serde(default)]
    pub rule_chain: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strength: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proponent: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MoveDoc {
    Articulate { t: Time, argument: ArgumentDoc },
    Retract { t: Time, argument_id: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TranscriptDoc {
    #[serde(default = "current_version")]
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturation_time: Option<Time>,
    pub moves: Vec<MoveDoc>,
}

impl ArgumentDoc {
    fn to_argument(&self, at: &str) -> Result<Argument> {
        if self.id.is_empty() {
            bail!("at `{at}.id`: empty argument id");
        }
        let premises: BTreeSet<Literal> = literals(&self.premises, &format!("{at}.premises"))?
            .into_iter()
            .collect();
        Ok(Argument {
            id: self.id.clone(),
            conclusion: literal(&self.conclusion, &format!("{at}.conclusion"))?,
            premises,
            rule_chain: self.rule_chain.clone(),
            strength: self.strength.clone(),
            proponent: self.proponent.clone(),
        })
    }

    fn from_argument(a: &Argument) -> Self {
        ArgumentDoc {
            id: a.id.clone(),
            conclusion: a.conclusion.to_string(),
            premises: a.premises.iter().map(ToString::to_string).collect(),
            rule_chain: a.rule_chain.clone(),
            strength: a.strength.clone(),
            proponent: a.proponent.clone(),
        }
    }
}

impl TranscriptDoc {
    pub fn to_transcript(&self) -> Result<Transcript> {
        check_version(self.format_version)?;
        let moves = self
            .moves
            .iter()
            .enumerate()
            .map(|(i, m)| {
                Ok(match m {
                    MoveDoc::Articulate { t, argument } => Move::Articulate {
                        time: *t,
                        argument: argument.to_argument(&format!("moves[{i}].argument"))?,
                    },
                    MoveDoc::Retract { t, argument_id } => Move::Retract {
                        time: *t,
                        argument_id: argument_id.clone(),
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Transcript::new(moves).map_err(|e| anyhow!("at `moves`: {e}"))
    }

    pub fn from_transcript(
        tr: &Transcript,
        scenario: Option<&str>,
        saturation_time: Option<Time>,
    ) -> Self {
        let moves = tr
            .moves()
            .iter()
            .map(|m| match m {
                Move::Articulate { time, argument } => MoveDoc::Articulate {
                    t: *time,
                    argument: ArgumentDoc::from_argument(argument),
                },
                Move::Retract { time, argument_id } => MoveDoc::Retract {
                    t: *time,
                    argument_id: argument_id.clone(),
                },
            })
            .collect();
        TranscriptDoc {
            format_version: FORMAT_VERSION,
            scenario: scenario.map(Into::into),
            saturation_time,
            moves,
        }
    }
}

pub fn load_transcript(path: &Path) -> Result<Transcript> {
    let doc: TranscriptDoc = read_json(path)?;
    doc.to_transcript()
        .with_context(|| format!("invalid transcript {}", path.display()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDoc {
    pub name: String,
    #[serde(default)]
    pub antecedents: Vec<String>,
    pub consequent: String,
    #[serde(default = "strict_mode")]
    pub mode: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub id: String,
    /// Decimal string, parsed exactly.
    pub weight: String,
    #[serde(default)]
    pub eps_new_info: f64,
    #[serde(default)]
    pub assumptions: Vec<String>,
    #[serde(default)]
    pub rules: Vec<RuleDoc>,
    /// Relative paths resolve against the ensemble file's directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcript_path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleDoc {
    pub format_version: u32,
    /// Decimal string in (0, 1/2).
    pub class_epsilon: String,
    pub scenarios: Vec<ScenarioDoc>,
}

impl ScenarioDoc {
    fn to_scenario(&self, at: &str, base: &Path) -> Result<Scenario> {
        let weight = parse_decimal(&self.weight).map_err(|e| anyhow!("at `{at}.weight`: {e}"))?;
        let assumptions = literals(&self.assumptions, &format!("{at}.assumptions"))?;
        let rules = self
            .rules
            .iter()
            .enumerate()
            .map(|(j, r)| {
                let rat = format!("{at}.rules[{j}]");
                if r.name.is_empty() {
                    bail!("at `{rat}.name`: empty rule name");
                }
                let ante = literals(&r.antecedents, &format!("{rat}.antecedents"))?;
                let cons = literal(&r.consequent, &format!("{rat}.consequent"))?;
                Ok(InferenceRule::new(&r.name, ante, cons, &r.mode))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut scenario = Scenario::new(&self.id, assumptions, rules, weight, self.eps_new_info)
            .map_err(|e| anyhow!("at `{at}`: {e}"))?;
        if let Some(rel) = &self.transcript_path {
            let path = base.join(rel);
            let tr =
                load_transcript(&path).with_context(|| format!("at `{at}.transcript_path`"))?;
            scenario = scenario.with_transcript(tr);
        }
        Ok(scenario)
    }
}

impl EnsembleDoc {
    /// `base` is the directory that relative transcript paths resolve against.
    pub fn to_ensemble(&self, base: &Path) -> Result<Ensemble> {
        check_version(self.format_version)?;
        let eps =
            parse_decimal(&self.class_epsilon).map_err(|e| anyhow!("at `class_epsilon`: {e}"))?;
        let scenarios = self
            .scenarios
            .iter()
            .enumerate()
            .map(|(i, s)| s.to_scenario(&format!("scenarios[{i}]"), base))
            .collect::<Result<Vec<_>>>()?;
        Ensemble::new(scenarios, eps).map_err(|e| anyhow!("{e}"))
    }
}

pub fn load_ensemble(path: &Path) -> Result<Ensemble> {
    let doc: EnsembleDoc = read_json(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    doc.to_ensemble(base)
        .with_context(|| format!("invalid ensemble {}", path.display()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesPoint {
    pub t: Time,
    pub value: u8,
    pub headline: String,
}

/// Snapshot values `v_1 .. v_n` of one claim. `series` is informational and
/// written by the `timeline` command for plotting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimelineDoc {
    #[serde(default = "current_version")]
    pub format_version: u32,
    pub claim: String,
    pub values: Vec<u8>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<SeriesPoint>,
}

impl TimelineDoc {
    pub fn to_values(&self) -> Result<(Literal, Vec<bool>)> {
        check_version(self.format_version)?;
        let claim = literal(&self.claim, "claim")?;
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| match v {
                0 => Ok(false),
                1 => Ok(true),
                _ => bail!("at `values[{i}]`: {v} is not a truth value (0 or 1)"),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((claim, values))
    }
}

pub fn load_timeline(path: &Path) -> Result<(Literal, Vec<bool>)> {
    let doc: TimelineDoc = read_json(path)?;
    doc.to_values()
        .with_context(|| format!("invalid timeline {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcript_round_trip() {
        let text = r#"{"format_version": 1, "moves": [
            {"t": 1, "kind": "articulate", "argument": {"id": "A1", "conclusion": "p", "premises": ["q"], "rule_chain": ["r"]}},
            {"t": 2, "kind": "retract", "argument_id": "A1"}
        ]}"#;
        let doc: TranscriptDoc = parse_json(text).unwrap();
        let tr = doc.to_transcript().unwrap();
        assert_eq!(tr.moves().len(), 2);
        let back = TranscriptDoc::from_transcript(&tr, None, None);
        assert_eq!(back, doc);
    }

    #[test]
    fn path_in_schema_errors() {
        let text = r#"{"format_version": 1, "class_epsilon": "0.05", "scenarios": [
            {"id": "s1", "weight": "0.5"},
            {"id": "s2", "weight": 3}
        ]}"#;
        let err = parse_json::<EnsembleDoc>(text).unwrap_err().to_string();
        assert!(err.contains("scenarios[1].weight"), "{err}");
    }

    #[test]
    fn path_in_semantic_errors() {
        let text = r#"{"format_version": 1, "class_epsilon": "0.05", "scenarios": [
            {"id": "s1", "weight": "0.5", "rules": [{"name": "r", "antecedents": ["a", "!!b"], "consequent": "c"}]}
        ]}"#;
        let doc: EnsembleDoc = parse_json(text).unwrap();
        let err = doc.to_ensemble(Path::new(".")).unwrap_err().to_string();
        assert!(
            err.contains("scenarios[0].rules[0].antecedents[1]"),
            "{err}"
        );
    }

    #[test]
    fn rejects_unknown_fields_and_versions() {
        let err = parse_json::<ScenarioDoc>(r#"{"id": "s", "weight": "1", "transcript_pth": "x"}"#)
            .unwrap_err();
        assert!(err.to_string().contains("transcript_pth"));
        let doc = TimelineDoc {
            format_version: 2,
            claim: "p".into(),
            values: vec![1],
            series: vec![],
        };
        assert!(doc.to_values().is_err());
    }

    #[test]
    fn timeline_values_must_be_bits() {
        let doc: TimelineDoc = parse_json(r#"{"claim": "p", "values": [0, 1, 2]}"#).unwrap();
        let err = doc.to_values().unwrap_err().to_string();
        assert!(err.contains("values[2]"), "{err}");
    }
}
