//! Command-line arguments and dispatch onto the core crate.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use scenario_core::agora::{
    label, saturate, timeline, verify_transcript, InferenceRule, SchedulePolicy, Time, Transcript,
};
use scenario_core::ensemble::{
    audit_distinctness, classify_support, distinctness, ensemble_support, Ensemble, Scenario,
    SupportReport, DEFAULT_TAU,
};
use scenario_core::estimate::{
    check_snapshot_dominance, estimate, is_non_decreasing, ConvergentGenerator, EstimatorSpec,
    TrimVariant,
};
use scenario_core::exact::{parse_decimal, Rational};
use scenario_core::lang::Literal;
use scenario_core::rng::ALGORITHM;
use scenario_core::stochastic::{
    check_identical_agreement, check_order_invariance, check_order_invariance_exhaustive,
    check_paired_snapshot_bounds, check_snapshot_bounds, check_support_axioms, standard_error,
    AxiomGenParams, Coupling, DebateModel, SE_TOLERANCE,
};

use crate::format::{
    load_ensemble, load_timeline, load_transcript, SeriesPoint, TranscriptDoc, FORMAT_VERSION,
};
use crate::report::{
    render, DistinctOutput, EstimateOutput, ExactValue, LabelOutput, OutputFormat, PairVerdict,
    SaturateOutput, SimRecord, SimulateOutput, SupportOutput, TimelineOutput, ValidateReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "scenario",
    version,
    about = "Debate labels, scenario ensemble support and bound checks"
)]
pub struct Cli {
    /// Seed for every randomised command.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Re-derive transcript arguments from their scenario and reject any that do not verify.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Refuse ensembles containing a non-distinct pair of scenarios.
    #[arg(long, global = true)]
    pub strict_distinct: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an ensemble file and audit scenario distinctness.
    Validate {
        ensemble: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TAU)]
        tau: f64,
    },
    /// Derive and articulate every argument of one scenario.
    Saturate {
        ensemble: PathBuf,
        #[command(flatten)]
        pick: ScenarioPick,
        /// one-per-tick, all-at-once, or order:<i>,<j>,...
        #[arg(long, default_value = "one-per-tick", value_parser = parse_schedule)]
        schedule: SchedulePolicy,
        /// Also write the transcript document here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Labels and truth valuation of a claim at one time.
    Label {
        transcript: PathBuf,
        #[arg(long)]
        claim: Literal,
        #[arg(long, short)]
        time: Time,
        #[command(flatten)]
        context: StrictContext,
    },
    /// Truth valuations v_1 .. v_T of a claim.
    Timeline {
        transcript: PathBuf,
        #[arg(long)]
        claim: Literal,
        /// Last time; defaults to the transcript's final move.
        #[arg(long)]
        t_max: Option<Time>,
        #[command(flatten)]
        context: StrictContext,
    },
    /// Weighted ensemble support of a claim.
    Support(SupportArgs),
    /// Support classes of a claim, or of a bare support value with --support.
    Classify {
        #[command(flatten)]
        ensemble: OptionalSupportArgs,
        /// Classify this decimal support value instead of reading an ensemble.
        #[arg(long, conflicts_with_all = ["ensemble", "claim"])]
        support: Option<String>,
        /// Class threshold; overrides the ensemble's.
        #[arg(long)]
        eps: Option<String>,
    },
    /// Distinctness verdicts for scenario pairs.
    Distinct {
        ensemble: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TAU)]
        tau: f64,
        /// Only this pair of scenario ids.
        #[arg(long, num_args = 2, value_names = ["FIRST", "SECOND"])]
        pair: Option<Vec<String>>,
    },
    /// Estimate a long-run value from a snapshot timeline.
    Estimate {
        timeline: PathBuf,
        /// last, mean, mode or trimmed:<lower>,<upper>
        #[arg(long, default_value = "last")]
        method: EstimatorSpec,
        /// Trimmed-mean variant: sorted (default) or positional
        #[arg(long)]
        trim_variant: Option<TrimVariant>,
    },
    /// Empirical checks of the probability bounds.
    #[command(subcommand)]
    Simulate(SimCheck),
}

#[derive(Debug, Args)]
pub struct ScenarioPick {
    /// Scenario id; optional when the ensemble has one scenario.
    #[arg(long)]
    pub scenario: Option<String>,
}

#[derive(Debug, Args)]
pub struct StrictContext {
    /// Ensemble holding the scenario that --strict verifies against.
    #[arg(long)]
    pub ensemble: Option<PathBuf>,
    #[arg(long)]
    pub scenario: Option<String>,
}

#[derive(Debug, Args)]
pub struct SupportArgs {
    pub ensemble: PathBuf,
    #[arg(long)]
    pub claim: Literal,
    /// Defaults to the latest time any scenario's transcript reaches.
    #[arg(long, short)]
    pub time: Option<Time>,
    /// Schedule for scenarios without a transcript.
    #[arg(long, default_value = "one-per-tick", value_parser = parse_schedule)]
    pub schedule: SchedulePolicy,
    #[arg(long, default_value_t = DEFAULT_TAU)]
    pub tau: f64,
}

#[derive(Debug, Args)]
pub struct OptionalSupportArgs {
    pub ensemble: Option<PathBuf>,
    #[arg(long)]
    pub claim: Option<Literal>,
    #[arg(long, short)]
    pub time: Option<Time>,
    #[arg(long, default_value = "one-per-tick", value_parser = parse_schedule)]
    pub schedule: SchedulePolicy,
    #[arg(long, default_value_t = DEFAULT_TAU)]
    pub tau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CouplingArg {
    Independent,
    Comonotone,
    Both,
}

impl CouplingArg {
    fn couplings(self) -> Vec<Coupling> {
        match self {
            CouplingArg::Independent => vec![Coupling::Independent],
            CouplingArg::Comonotone => vec![Coupling::Comonotone],
            CouplingArg::Both => vec![Coupling::Independent, Coupling::Comonotone],
        }
    }
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, default_value_t = 0.05)]
    pub eps1: f64,
    #[arg(long, default_value_t = 0.05)]
    pub eps2: f64,
    /// Actual new-information probabilities; default to the bounds.
    #[arg(long)]
    pub actual1: Option<f64>,
    #[arg(long)]
    pub actual2: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub flip: f64,
    #[arg(long, value_enum, default_value_t = CouplingArg::Both)]
    pub coupling: CouplingArg,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
}

#[derive(Debug, Subcommand)]
pub enum SimCheck {
    /// Snapshot-to-limit bounds for one debate.
    Prop1 {
        /// New-information bounds; one run each.
        #[arg(long, value_delimiter = ',', default_value = "0.1")]
        eps: Vec<f64>,
        /// Actual new-information probability; defaults to the bound.
        #[arg(long)]
        actual: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        flip: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Articulation-order invariance of post-saturation labels.
    Prop2 {
        /// Scenario source; a built-in three-assumption, four-rule scenario otherwise.
        #[arg(long)]
        ensemble: Option<PathBuf>,
        #[arg(long)]
        scenario: Option<String>,
        /// Random one-per-tick orders to try.
        #[arg(long, default_value_t = 500)]
        orders: u64,
        /// Enumerate every order instead.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Long-run agreement of two identical debates.
    Prop3(PairArgs),
    /// The final snapshot against rival estimators on convergent sequences.
    Prop4 {
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
        lengths: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "mean,mode")]
        rivals: Vec<EstimatorSpec>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0.05)]
        hazard: f64,
        #[arg(long, default_value_t = 0.5)]
        noise: f64,
        #[arg(long, default_value_t = 0.5)]
        limit: f64,
        /// Required dominance frequency at the longest length.
        #[arg(long, default_value_t = 0.99)]
        threshold: f64,
    },
    /// The four paired-snapshot inequalities.
    Prop5(PairArgs),
    /// m(theta) + m(!theta) <= 1 on random rebuttal-only ensembles.
    Axioms {
        #[arg(long, default_value_t = 1_000)]
        trials: u64,
        #[arg(long, default_value_t = 4)]
        max_scenarios: usize,
        #[arg(long, default_value_t = 4)]
        side_atoms: usize,
        #[arg(long, default_value_t = 5)]
        max_rules: usize,
        #[arg(long, default_value_t = 2)]
        max_antecedents: usize,
    },
}

pub fn parse_schedule(text: &str) -> Result<SchedulePolicy, String> {
    match text {
        "one-per-tick" => Ok(SchedulePolicy::OnePerTick),
        "all-at-once" => Ok(SchedulePolicy::AllAtOnce),
        _ => {
            let list = text
                .strip_prefix("order:")
                .ok_or_else(|| format!("unknown schedule {text:?}; expected one-per-tick, all-at-once or order:<i>,<j>,..."))?;
            list.split(',')
                .map(|i| {
                    i.trim()
                        .parse::<usize>()
                        .map_err(|e| format!("bad index {i:?} in {text:?}: {e}"))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(SchedulePolicy::Order)
        }
    }
}

/// Rendered output and whether the command's checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            success: true,
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate { ensemble, tau } => validate(cli, ensemble, *tau),
        Command::Saturate {
            ensemble,
            pick,
            schedule,
            output,
        } => run_saturate(
            cli,
            ensemble,
            pick.scenario.as_deref(),
            schedule,
            output.as_deref(),
        ),
        Command::Label {
            transcript,
            claim,
            time,
            context,
        } => {
            let tr = open_transcript(cli, transcript, context)?;
            Ok(Outcome::ok(render(
                &LabelOutput::from(&label(&tr, claim, *time)),
                cli.format,
            )))
        }
        Command::Timeline {
            transcript,
            claim,
            t_max,
            context,
        } => {
            let tr = open_transcript(cli, transcript, context)?;
            let t_max = t_max.unwrap_or_else(|| tr.horizon().max(1));
            let values = timeline(&tr, claim, t_max);
            let series = (1..=t_max)
                .zip(&values)
                .map(|(t, &v)| SeriesPoint {
                    t,
                    value: u8::from(v),
                    headline: label(&tr, claim, t).headline.as_str().into(),
                })
                .collect();
            let out = TimelineOutput {
                format_version: FORMAT_VERSION,
                claim: claim.to_string(),
                values: values.iter().map(|&v| u8::from(v)).collect(),
                series,
            };
            Ok(Outcome::ok(render(&out, cli.format)))
        }
        Command::Support(args) => {
            let report = support(
                cli,
                &args.ensemble,
                &args.claim,
                args.time,
                &args.schedule,
                args.tau,
                None,
            )?;
            Ok(Outcome::ok(render(
                &SupportOutput::from_report(&report),
                cli.format,
            )))
        }
        Command::Classify {
            ensemble,
            support: value,
            eps,
        } => classify(cli, ensemble, value.as_deref(), eps.as_deref()),
        Command::Distinct {
            ensemble,
            tau,
            pair,
        } => run_distinct(cli, ensemble, *tau, pair.as_deref()),
        Command::Estimate {
            timeline,
            method,
            trim_variant,
        } => {
            let (claim, values) = load_timeline(timeline)?;
            let spec = match trim_variant {
                Some(v) => method.with_variant(*v),
                None => *method,
            };
            let value = estimate(&values, &spec)
                .with_context(|| format!("estimating from {}", timeline.display()))?;
            let out = EstimateOutput {
                format_version: FORMAT_VERSION,
                claim: claim.to_string(),
                method: spec.to_string(),
                n: values.len(),
                estimate: value,
            };
            Ok(Outcome::ok(render(&out, cli.format)))
        }
        Command::Simulate(check) => simulate(cli, check),
    }
}

fn pick_scenario<'a>(ensemble: &'a Ensemble, id: Option<&str>) -> Result<&'a Scenario> {
    match id {
        Some(id) => ensemble
            .scenario(id)
            .ok_or_else(|| anyhow!("no scenario with id {id:?}")),
        None => match ensemble.scenarios() {
            [only] => Ok(only),
            all => bail!(
                "the ensemble has {} scenarios; choose one with --scenario",
                all.len()
            ),
        },
    }
}

fn unverified_diagnostics(scenario: &Scenario, tr: &Transcript) -> Vec<String> {
    verify_transcript(scenario, tr)
        .into_iter()
        .map(|u| {
            format!(
                "scenario {}: argument {}: {}",
                scenario.id(),
                u.argument_id,
                u.reason
            )
        })
        .collect()
}

fn open_transcript(cli: &Cli, path: &Path, context: &StrictContext) -> Result<Transcript> {
    let tr = load_transcript(path)?;
    if cli.strict {
        let ens_path = context.ensemble.as_deref().ok_or_else(|| {
            anyhow!(
                "--strict needs --ensemble (and --scenario) to verify {}",
                path.display()
            )
        })?;
        let ensemble = load_ensemble(ens_path)?;
        let scenario = pick_scenario(&ensemble, context.scenario.as_deref())?;
        let problems = unverified_diagnostics(scenario, &tr);
        if !problems.is_empty() {
            bail!(
                "{} does not verify:\n  {}",
                path.display(),
                problems.join("\n  ")
            );
        }
    }
    Ok(tr)
}

/// Loads an ensemble and applies the strict flags.
fn open_ensemble(cli: &Cli, path: &Path, tau: f64) -> Result<Ensemble> {
    let ensemble = load_ensemble(path)?;
    if cli.strict {
        let problems: Vec<String> = ensemble
            .scenarios()
            .iter()
            .filter_map(|s| s.transcript().map(|tr| unverified_diagnostics(s, tr)))
            .flatten()
            .collect();
        if !problems.is_empty() {
            bail!(
                "{} has unverifiable arguments:\n  {}",
                path.display(),
                problems.join("\n  ")
            );
        }
    }
    if cli.strict_distinct {
        let audit = audit_distinctness(&ensemble, tau);
        if let Some(v) = audit
            .verdicts
            .iter()
            .find(|v| v.verdict == scenario_core::ensemble::Distinctness::NonDistinct)
        {
            bail!(
                "{}: scenarios {} and {} are not distinct ({})",
                path.display(),
                v.pair.0,
                v.pair.1,
                v.rationale
            );
        }
    }
    Ok(ensemble)
}

fn check_tau(tau: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&tau) {
        bail!("--tau {tau} outside [0, 1]");
    }
    Ok(())
}

fn validate(cli: &Cli, path: &Path, tau: f64) -> Result<Outcome> {
    check_tau(tau)?;
    let ensemble = load_ensemble(path)?;
    let mut diagnostics = Vec::new();
    if cli.strict {
        for s in ensemble.scenarios() {
            if let Some(tr) = s.transcript() {
                diagnostics.extend(unverified_diagnostics(s, tr));
            }
        }
    }
    let audit = audit_distinctness(&ensemble, tau);
    if cli.strict_distinct && !audit.compliant {
        diagnostics.extend(
            audit
                .verdicts
                .iter()
                .filter(|v| v.verdict == scenario_core::ensemble::Distinctness::NonDistinct)
                .map(|v| format!("scenarios {} and {} are not distinct", v.pair.0, v.pair.1)),
        );
    }
    let report = ValidateReport {
        format_version: FORMAT_VERSION,
        file: path.display().to_string(),
        scenarios: ensemble.scenarios().len(),
        transcripts: ensemble
            .scenarios()
            .iter()
            .filter(|s| s.transcript().is_some())
            .count(),
        total_weight: ExactValue::new(&ensemble.total_weight()),
        class_epsilon: ExactValue::new(ensemble.class_epsilon()),
        tau,
        distinctness: audit.verdicts.iter().map(PairVerdict::from).collect(),
        distinct: audit.compliant,
        clean: diagnostics.is_empty(),
        diagnostics,
    };
    Ok(Outcome {
        success: report.clean,
        output: render(&report, cli.format),
    })
}

fn run_saturate(
    cli: &Cli,
    path: &Path,
    scenario: Option<&str>,
    schedule: &SchedulePolicy,
    output: Option<&Path>,
) -> Result<Outcome> {
    let ensemble = load_ensemble(path)?;
    let sc = pick_scenario(&ensemble, scenario)?;
    let (tr, s) =
        saturate(sc, schedule).with_context(|| format!("saturating scenario {}", sc.id()))?;
    let doc = TranscriptDoc::from_transcript(&tr, Some(sc.id()), Some(s));
    if let Some(out) = output {
        let mut text = serde_json::to_string_pretty(&doc)?;
        text.push('\n');
        fs::write(out, text).with_context(|| format!("cannot write {}", out.display()))?;
    }
    let report = SaturateOutput {
        format_version: FORMAT_VERSION,
        scenario: sc.id().into(),
        arguments: tr.entries().len(),
        saturation_time: s,
        transcript: doc,
    };
    Ok(Outcome::ok(render(&report, cli.format)))
}

/// The latest time any scenario's debate reaches.
fn default_time(ensemble: &Ensemble, schedule: &SchedulePolicy) -> Result<Time> {
    let mut t = 1;
    for s in ensemble.scenarios() {
        let h = match s.transcript() {
            Some(tr) => tr.horizon(),
            None => {
                saturate(s, schedule)
                    .with_context(|| format!("saturating scenario {}", s.id()))?
                    .1
            }
        };
        t = t.max(h);
    }
    Ok(t)
}

fn support(
    cli: &Cli,
    path: &Path,
    claim: &Literal,
    time: Option<Time>,
    schedule: &SchedulePolicy,
    tau: f64,
    eps: Option<Rational>,
) -> Result<SupportReport> {
    check_tau(tau)?;
    let mut ensemble = open_ensemble(cli, path, tau)?;
    if let Some(eps) = eps {
        ensemble =
            Ensemble::new(ensemble.scenarios().to_vec(), eps).map_err(|e| anyhow!("--eps: {e}"))?;
    }
    let t = match time {
        Some(t) => t,
        None => default_time(&ensemble, schedule)?,
    };
    ensemble_support(&ensemble, claim, t, Some(schedule))
        .with_context(|| format!("support of {claim} in {}", path.display()))
}

fn classify(
    cli: &Cli,
    args: &OptionalSupportArgs,
    value: Option<&str>,
    eps: Option<&str>,
) -> Result<Outcome> {
    let eps = eps
        .map(|e| parse_decimal(e).map_err(|err| anyhow!("--eps {e:?}: {err}")))
        .transpose()?;
    let out = match value {
        Some(v) => {
            let m = parse_decimal(v).map_err(|err| anyhow!("--support {v:?}: {err}"))?;
            let eps = eps.ok_or_else(|| anyhow!("--support needs --eps"))?;
            let classification = classify_support(&m, &eps).map_err(|e| anyhow!("{e}"))?;
            SupportOutput {
                format_version: FORMAT_VERSION,
                claim: String::new(),
                time: 0,
                support: ExactValue::new(&m),
                class_epsilon: ExactValue::new(&eps),
                headline: classification.headline.name_with(&eps),
                classes: classification
                    .classes
                    .iter()
                    .map(|c| c.name_with(&eps))
                    .collect(),
                per_scenario: Vec::new(),
            }
        }
        None => {
            let path = args
                .ensemble
                .as_deref()
                .ok_or_else(|| anyhow!("classify needs an ensemble file or --support"))?;
            let claim = args
                .claim
                .as_ref()
                .ok_or_else(|| anyhow!("classify needs --claim"))?;
            let report = support(cli, path, claim, args.time, &args.schedule, args.tau, eps)?;
            SupportOutput::from_report(&report)
        }
    };
    Ok(Outcome::ok(render(&out, cli.format)))
}

fn run_distinct(cli: &Cli, path: &Path, tau: f64, pair: Option<&[String]>) -> Result<Outcome> {
    check_tau(tau)?;
    let ensemble = load_ensemble(path)?;
    let verdicts = match pair {
        Some([a, b]) => {
            let find = |id: &str| {
                ensemble
                    .scenario(id)
                    .ok_or_else(|| anyhow!("no scenario with id {id:?}"))
            };
            vec![distinctness(find(a)?, find(b)?, tau)]
        }
        Some(_) => bail!("--pair takes two scenario ids"),
        None => audit_distinctness(&ensemble, tau).verdicts,
    };
    let distinct = verdicts
        .iter()
        .all(|v| v.verdict == scenario_core::ensemble::Distinctness::Distinct);
    let out = DistinctOutput {
        format_version: FORMAT_VERSION,
        tau,
        verdicts: verdicts.iter().map(PairVerdict::from).collect(),
        distinct,
    };
    Ok(Outcome {
        success: distinct || !cli.strict_distinct,
        output: render(&out, cli.format),
    })
}

/// Three assumptions, four rules, seven arguments with rebuttals, undercuts
/// and a two-step chain.
pub fn order_fixture() -> Scenario {
    let lit = |s: &str| Literal::from_str(s).expect("fixture literal");
    let rule = |name: &str, ante: &[&str], cons: &str| {
        InferenceRule::new(name, ante.iter().map(|a| lit(a)), lit(cons), "strict")
    };
    Scenario::new(
        "order-fixture",
        ["a", "b", "c"].map(lit),
        [
            rule("r1", &["a"], "d"),
            rule("r2", &["b"], "!d"),
            rule("r3", &["c"], "!b"),
            rule("r4", &["d"], "e"),
        ],
        Rational::from_integer(1),
        0.0,
    )
    .expect("fixture scenario")
}

fn record(
    id: &str,
    relation: &str,
    bound: f64,
    frequency: f64,
    trials: u64,
    se: f64,
    pass: bool,
) -> SimRecord {
    SimRecord {
        id: id.into(),
        relation: relation.into(),
        bound,
        frequency,
        trials,
        se,
        pass,
        detail: None,
    }
}

fn with_detail(record: SimRecord, detail: Option<String>) -> SimRecord {
    SimRecord { detail, ..record }
}

fn coupling_name(c: Coupling) -> &'static str {
    match c {
        Coupling::Independent => "independent",
        Coupling::Comonotone => "comonotone",
    }
}

fn pair_models(p: &PairArgs) -> Result<(DebateModel, DebateModel)> {
    let m1 = DebateModel::forced_flip(p.eps1, true)?
        .with_actual_prob(p.actual1.unwrap_or(p.eps1))?
        .with_flip_prob(p.flip)?;
    let m2 = DebateModel::forced_flip(p.eps2, true)?
        .with_actual_prob(p.actual2.unwrap_or(p.eps2))?
        .with_flip_prob(p.flip)?;
    Ok((m1, m2))
}

pub fn simulate(cli: &Cli, check: &SimCheck) -> Result<Outcome> {
    let seed = cli.seed;
    let (name, records) = match check {
        SimCheck::Prop1 {
            eps,
            actual,
            flip,
            trials,
        } => {
            let mut records = Vec::new();
            for &e in eps {
                let a = actual.unwrap_or(e);
                let model = DebateModel::forced_flip(e, true)?
                    .with_actual_prob(a)?
                    .with_flip_prob(*flip)?;
                let detail = format!("eps = {e}, actual = {a}, flip = {flip}");
                for b in check_snapshot_bounds(&model, *trials, seed)? {
                    records.push(SimRecord {
                        detail: Some(detail.clone()),
                        ..SimRecord::from(&b)
                    });
                }
            }
            ("prop1", records)
        }
        SimCheck::Prop2 {
            ensemble,
            scenario,
            orders,
            exhaustive,
        } => {
            let sc = match ensemble {
                Some(path) => pick_scenario(&load_ensemble(path)?, scenario.as_deref())?.clone(),
                None => order_fixture(),
            };
            let report = if *exhaustive {
                check_order_invariance_exhaustive(&sc)?
            } else {
                check_order_invariance(&sc, *orders, seed)?
            };
            let identical = report.schedules
                - report
                    .mismatches
                    .iter()
                    .map(|m| &m.schedule)
                    .collect::<std::collections::BTreeSet<_>>()
                    .len() as u64;
            let detail = report.mismatches.first().map(|m| {
                format!(
                    "order {:?}: {} labelled {:?}, expected {:?}",
                    m.schedule, m.claim, m.found, m.expected
                )
            });
            let rec = record(
                "prop2",
                "==",
                1.0,
                identical as f64 / report.schedules.max(1) as f64,
                report.schedules,
                0.0,
                report.identical(),
            );
            let rec = with_detail(
                rec,
                detail.or_else(|| {
                    Some(format!(
                        "{} arguments, {} claims, saturation at t = {}",
                        report.arguments,
                        report.claims.len(),
                        report.saturation_time
                    ))
                }),
            );
            ("prop2", vec![rec])
        }
        SimCheck::Prop3(p) => {
            let (m1, m2) = pair_models(p)?;
            let mut records = Vec::new();
            for c in p.coupling.couplings() {
                let b = check_identical_agreement(&m1, &m2, c, p.trials, seed)?;
                records.push(SimRecord {
                    detail: Some(format!(
                        "eps = ({}, {}), {} coupling",
                        p.eps1,
                        p.eps2,
                        coupling_name(c)
                    )),
                    ..SimRecord::from(&b)
                });
            }
            ("prop3", records)
        }
        SimCheck::Prop4 {
            lengths,
            rivals,
            trials,
            hazard,
            noise,
            limit,
            threshold,
        } => {
            let gen = ConvergentGenerator::new(*hazard, *noise, *limit)?;
            let mut records = Vec::new();
            for rival in rivals {
                let rows = check_snapshot_dominance(&gen, rival, lengths, *trials, seed)?;
                let mut prev: Option<&scenario_core::estimate::DominanceRow> = None;
                for row in &rows {
                    let (bound, pass) = match prev {
                        Some(p) => (p.frequency, is_non_decreasing(&[*p, *row], SE_TOLERANCE)),
                        None => (0.0, true),
                    };
                    records.push(record(
                        &format!("prop4.{rival}.n{}", row.n),
                        ">=",
                        bound,
                        row.frequency,
                        row.trials,
                        row.standard_error,
                        pass,
                    ));
                    prev = Some(row);
                }
                if let Some(last) = rows.iter().max_by_key(|r| r.n) {
                    let rec = record(
                        &format!("prop4.{rival}.limit"),
                        ">=",
                        *threshold,
                        last.frequency,
                        last.trials,
                        last.standard_error,
                        last.frequency >= threshold - SE_TOLERANCE * last.standard_error,
                    );
                    records.push(with_detail(rec, Some(format!("n = {}", last.n))));
                }
            }
            ("prop4", records)
        }
        SimCheck::Prop5(p) => {
            let (m1, m2) = pair_models(p)?;
            let mut records = Vec::new();
            for c in p.coupling.couplings() {
                for b in check_paired_snapshot_bounds(&m1, &m2, c, p.trials, seed)? {
                    records.push(SimRecord {
                        detail: Some(format!(
                            "eps = ({}, {}), {} coupling",
                            p.eps1,
                            p.eps2,
                            coupling_name(c)
                        )),
                        ..SimRecord::from(&b)
                    });
                }
            }
            ("prop5", records)
        }
        SimCheck::Axioms {
            trials,
            max_scenarios,
            side_atoms,
            max_rules,
            max_antecedents,
        } => {
            let params = AxiomGenParams {
                max_scenarios: *max_scenarios,
                side_atoms: *side_atoms,
                max_rules: *max_rules,
                max_antecedents: *max_antecedents,
            };
            let report = check_support_axioms(&params, *trials, seed)?;
            let n = report.rebuttal_only_ensembles;
            let bad = report.violations_within_hypothesis() as u64;
            let rate = if n == 0 { 0.0 } else { bad as f64 / n as f64 };
            let witness = report.violations.iter().find(|v| v.rebuttal_only).map(|v| {
                format!(
                    "trial {}: m(theta) = {}, m(!theta) = {}\n{}",
                    v.trial,
                    ExactValue::new(&v.support_claim),
                    ExactValue::new(&v.support_negation),
                    v.witness
                )
            });
            let c = &report.control;
            let t_fail = report.tautology_failures.len() as u64;
            let records = vec![
                with_detail(
                    record(
                        "axioms.additivity",
                        "<=",
                        0.0,
                        rate,
                        n,
                        standard_error(rate, n),
                        bad == 0,
                    ),
                    witness,
                ),
                record(
                    "axioms.certain_claim",
                    "==",
                    0.0,
                    t_fail as f64 / (*trials).max(1) as f64,
                    *trials,
                    0.0,
                    t_fail == 0,
                ),
                with_detail(
                    record(
                        "axioms.undercut_control",
                        "==",
                        1.0,
                        f64::from(u8::from(c.violates && !c.rebuttal_only)),
                        1,
                        0.0,
                        !c.rebuttal_only,
                    ),
                    Some(format!(
                        "outside the rebuttal-only hypothesis; m(theta) + m(!theta) = {}\n{}",
                        ExactValue::new(&(c.support_claim + c.support_negation)),
                        c.witness
                    )),
                ),
            ];
            ("axioms", records)
        }
    };
    let pass = records.iter().all(|r| r.pass);
    let out = SimulateOutput {
        format_version: FORMAT_VERSION,
        check: format!("simulate {name}"),
        seed,
        rng: ALGORITHM.into(),
        records,
        pass,
    };
    Ok(Outcome {
        success: pass,
        output: render(&out, cli.format),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use scenario_core::agora::derive_arguments;

    #[test]
    fn schedules_parse() {
        assert_eq!(
            parse_schedule("one-per-tick"),
            Ok(SchedulePolicy::OnePerTick)
        );
        assert_eq!(parse_schedule("all-at-once"), Ok(SchedulePolicy::AllAtOnce));
        assert_eq!(
            parse_schedule("order:2, 0,1"),
            Ok(SchedulePolicy::Order(vec![2, 0, 1]))
        );
        assert!(parse_schedule("order:a").is_err());
        assert!(parse_schedule("random").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn order_fixture_has_seven_arguments() {
        assert_eq!(derive_arguments(&order_fixture()).len(), 7);
    }
}
