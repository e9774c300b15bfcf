//! Estimators of a debate's long-run truth value from a finite snapshot
//! sequence, and a harness comparing the final snapshot with rival
//! estimators.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::lang::Literal;
use crate::rng::{trial_rng, TrialRng};
use crate::stochastic::standard_error;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EstimateError {
    #[error("snapshot sequence is empty")]
    EmptySequence,
    #[error(
        "trim percentages {lower}% and {upper}% must each lie in [0, 100) and sum to less than 100"
    )]
    TrimPercent { lower: f64, upper: f64 },
    #[error("trimming removes all {0} observations")]
    TrimmedAway(usize),
    #[error("unknown estimator {0:?}; expected last, mean, mode or trimmed:<lower>,<upper>")]
    UnknownMethod(String),
    #[error("unknown trim variant {0:?}; expected sorted or positional")]
    UnknownVariant(String),
    #[error("generator parameter {name} = {value} out of range")]
    Generator { name: &'static str, value: f64 },
    #[error("sequence lengths must be positive and trials non-zero")]
    EmptyRun,
}

/// Observed `v_1 .. v_n` for one claim in one debate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapshotSequence {
    values: Vec<bool>,
    pub claim: Literal,
    pub source: String,
}

impl SnapshotSequence {
    pub fn new(values: Vec<bool>, claim: Literal, source: &str) -> Result<Self, EstimateError> {
        if values.is_empty() {
            return Err(EstimateError::EmptySequence);
        }
        Ok(SnapshotSequence {
            values,
            claim,
            source: source.to_string(),
        })
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn estimate(&self, spec: &EstimatorSpec) -> Result<f64, EstimateError> {
        estimate(&self.values, spec)
    }
}

/// Which observations a trimmed mean deletes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TrimVariant {
    /// Rank ascending, delete the lowest and highest fractions.
    #[default]
    Sorted,
    /// Delete the earliest and latest fractions in time order.
    Positional,
}

impl FromStr for TrimVariant {
    type Err = EstimateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sorted" => Ok(TrimVariant::Sorted),
            "positional" => Ok(TrimVariant::Positional),
            other => Err(EstimateError::UnknownVariant(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EstimatorSpec {
    Last,
    Mean,
    Trimmed {
        lower_pct: f64,
        upper_pct: f64,
        variant: TrimVariant,
    },
    /// Majority value; ties go to the final observation.
    Mode,
}

impl EstimatorSpec {
    pub fn trimmed(
        lower_pct: f64,
        upper_pct: f64,
        variant: TrimVariant,
    ) -> Result<Self, EstimateError> {
        let ok = |p: f64| (0.0..100.0).contains(&p);
        if !(ok(lower_pct) && ok(upper_pct) && lower_pct + upper_pct < 100.0) {
            return Err(EstimateError::TrimPercent {
                lower: lower_pct,
                upper: upper_pct,
            });
        }
        Ok(EstimatorSpec::Trimmed {
            lower_pct,
            upper_pct,
            variant,
        })
    }

    /// Replaces the trim variant; other estimators are returned unchanged.
    pub fn with_variant(self, variant: TrimVariant) -> Self {
        match self {
            EstimatorSpec::Trimmed {
                lower_pct,
                upper_pct,
                ..
            } => EstimatorSpec::Trimmed {
                lower_pct,
                upper_pct,
                variant,
            },
            other => other,
        }
    }
}

impl FromStr for EstimatorSpec {
    type Err = EstimateError;

    /// `last`, `mean`, `mode` or `trimmed:<lower>,<upper>` (sorted variant).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || EstimateError::UnknownMethod(s.to_string());
        match s.trim() {
            "last" => Ok(EstimatorSpec::Last),
            "mean" => Ok(EstimatorSpec::Mean),
            "mode" => Ok(EstimatorSpec::Mode),
            other => {
                let args = other.strip_prefix("trimmed:").ok_or_else(unknown)?;
                let (lo, hi) = args.split_once(',').ok_or_else(unknown)?;
                let lo: f64 = lo.trim().parse().map_err(|_| unknown())?;
                let hi: f64 = hi.trim().parse().map_err(|_| unknown())?;
                EstimatorSpec::trimmed(lo, hi, TrimVariant::Sorted)
            }
        }
    }
}

impl fmt::Display for EstimatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatorSpec::Last => f.write_str("last"),
            EstimatorSpec::Mean => f.write_str("mean"),
            EstimatorSpec::Mode => f.write_str("mode"),
            EstimatorSpec::Trimmed {
                lower_pct,
                upper_pct,
                variant,
            } => {
                let v = match variant {
                    TrimVariant::Sorted => "sorted",
                    TrimVariant::Positional => "positional",
                };
                write!(f, "trimmed:{lower_pct},{upper_pct} ({v})")
            }
        }
    }
}

/// `floor(pct·n/100)`. The 1e-9 nudge absorbs representation error in
/// percentages such as `100·(n−1)/n`; it never rounds up a value that is
/// genuinely below an integer by more than that.
fn trim_count(pct: f64, n: usize) -> usize {
    libm::floor(pct * n as f64 / 100.0 + 1e-9) as usize
}

fn mean_of(values: impl Iterator<Item = bool>) -> f64 {
    let (ones, n) = values.fold((0usize, 0usize), |(o, n), v| (o + usize::from(v), n + 1));
    ones as f64 / n as f64
}

pub fn estimate(values: &[bool], spec: &EstimatorSpec) -> Result<f64, EstimateError> {
    let n = values.len();
    let Some(&last) = values.last() else {
        return Err(EstimateError::EmptySequence);
    };
    match *spec {
        EstimatorSpec::Last => Ok(f64::from(u8::from(last))),
        EstimatorSpec::Mean => Ok(mean_of(values.iter().copied())),
        EstimatorSpec::Mode => {
            let ones = values.iter().filter(|v| **v).count();
            let zeros = n - ones;
            let mode = match ones.cmp(&zeros) {
                core::cmp::Ordering::Greater => true,
                core::cmp::Ordering::Less => false,
                core::cmp::Ordering::Equal => last,
            };
            Ok(f64::from(u8::from(mode)))
        }
        EstimatorSpec::Trimmed {
            lower_pct,
            upper_pct,
            variant,
        } => {
            let lo = trim_count(lower_pct, n);
            let hi = trim_count(upper_pct, n);
            if lo + hi >= n {
                return Err(EstimateError::TrimmedAway(n));
            }
            match variant {
                TrimVariant::Positional => Ok(mean_of(values[lo..n - hi].iter().copied())),
                TrimVariant::Sorted => {
                    // For 0/1 data the sorted order is all zeros then all ones.
                    let zeros = values.iter().filter(|v| !**v).count();
                    let kept = lo..n - hi;
                    let kept_ones = kept.filter(|&rank| rank >= zeros).count();
                    Ok(kept_ones as f64 / (n - lo - hi) as f64)
                }
            }
        }
    }
}

/// Sequences that oscillate, then settle on a limit forever.
///
/// Each trial draws the limit `v_∞ ~ Bernoulli(limit_p)`. Until the
/// oscillation ends, observations are `Bernoulli(noise_p)`; at every tick it
/// ends with probability `hazard`, after which all observations equal `v_∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergentGenerator {
    pub hazard: f64,
    pub noise_p: f64,
    pub limit_p: f64,
}

impl Default for ConvergentGenerator {
    fn default() -> Self {
        ConvergentGenerator {
            hazard: 0.05,
            noise_p: 0.5,
            limit_p: 0.5,
        }
    }
}

impl ConvergentGenerator {
    pub fn new(hazard: f64, noise_p: f64, limit_p: f64) -> Result<Self, EstimateError> {
        if !(hazard > 0.0 && hazard <= 1.0) {
            return Err(EstimateError::Generator {
                name: "hazard",
                value: hazard,
            });
        }
        for (name, value) in [("noise_p", noise_p), ("limit_p", limit_p)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(EstimateError::Generator { name, value });
            }
        }
        Ok(ConvergentGenerator {
            hazard,
            noise_p,
            limit_p,
        })
    }

    /// Constant sequences: the limit from the first observation on.
    pub fn constant(limit_p: f64) -> Self {
        ConvergentGenerator {
            hazard: 1.0,
            noise_p: 0.5,
            limit_p,
        }
    }

    /// Returns `(v_1 .. v_n, v_∞)`.
    pub fn sample(&self, n: usize, rng: &mut TrialRng) -> (Vec<bool>, bool) {
        let limit = rng.random_bool(self.limit_p);
        let mut settled = false;
        let values = (0..n)
            .map(|_| {
                if !settled {
                    settled = rng.random_bool(self.hazard);
                }
                if settled {
                    limit
                } else {
                    rng.random_bool(self.noise_p)
                }
            })
            .collect();
        (values, limit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceRow {
    pub n: usize,
    /// Empirical `Pr(|last − v_∞| <= |rival − v_∞|)`.
    pub frequency: f64,
    pub standard_error: f64,
    pub trials: u64,
}

/// For each length `n`, the fraction of trials in which the final snapshot is
/// at least as close to the limit as `rival`. Every trial draws one sequence
/// of the longest length and evaluates all prefixes, so rows share random
/// numbers.
pub fn check_snapshot_dominance(
    generator: &ConvergentGenerator,
    rival: &EstimatorSpec,
    lengths: &[usize],
    trials: u64,
    seed: u64,
) -> Result<Vec<DominanceRow>, EstimateError> {
    let max_n = lengths.iter().copied().max().unwrap_or(0);
    if trials == 0 || lengths.is_empty() || lengths.contains(&0) {
        return Err(EstimateError::EmptyRun);
    }
    let mut wins = alloc::vec![0u64; lengths.len()];
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let (values, limit) = generator.sample(max_n, &mut rng);
        let target = f64::from(u8::from(limit));
        for (slot, &n) in lengths.iter().enumerate() {
            let prefix = &values[..n];
            let last = estimate(prefix, &EstimatorSpec::Last)?;
            let other = estimate(prefix, rival)?;
            if libm::fabs(last - target) <= libm::fabs(other - target) {
                wins[slot] += 1;
            }
        }
    }
    Ok(lengths
        .iter()
        .zip(wins)
        .map(|(&n, w)| {
            let frequency = w as f64 / trials as f64;
            DominanceRow {
                n,
                frequency,
                standard_error: standard_error(frequency, trials),
                trials,
            }
        })
        .collect())
}

/// True when each row's frequency is no lower than its predecessor's, up to
/// `k` combined standard errors.
pub fn is_non_decreasing(rows: &[DominanceRow], k: f64) -> bool {
    rows.windows(2).all(|w| {
        let se = libm::sqrt(
            w[0].standard_error * w[0].standard_error + w[1].standard_error * w[1].standard_error,
        );
        w[1].frequency >= w[0].frequency - k * se
    })
}
