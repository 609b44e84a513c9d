//! Per-expert scoring pipeline and per-study aggregation.
//!
//! For each expert and calibration variable, the realization is pushed
//! through the expert's interpolated CDF (`v = F(y)`), transformed to
//! `z = (1 − 2v)²`, and the z-values are summed. Under the hypothesis that
//! realizations come from the expert's distributions the pit values are iid
//! uniform, so the sum is distributed as a sum of squared uniforms and its
//! exact CDF converts it into a statistical-accuracy score. The Classical
//! Model chi-square SA, location bias, and MAPE are computed side by side.
//!
//! The SA convention deserves a note: evaluating the exact CDF at the z-sum
//! (`cdf`) gives overconfident experts — whose pits pile near 0 and 1 and
//! push the sum high — values near 1. The default `survival` convention
//! (`1 − Fₙ`) assigns them values near 0, comparable with the Classical
//! Model's p-value semantics. Both are uniform on [0,1] under the null, as
//! is the folded `two_sided` variant; all three are exposed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classical_model::{self, CmError, InterQuantileSample};
use crate::expert_cdf::{self, CdfError};
use crate::scores::{self, ScoreError};
use crate::sqsum::{SqSumDistribution, SqSumError};
use crate::stats::{self, StatsError};
use crate::study_io::{IngestionDiagnostics, StudyRecord};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("pit value {0} outside [0, 1]")]
    PitOutOfRange(f64),
    #[error("need at least one pit value")]
    EmptyPits,
    #[error("forecast/realization lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("log geometric mean needs at least one value")]
    EmptyValues,
    #[error("study has no variables or no experts")]
    EmptyStudy,
    #[error(
        "scoring requires the three-quantile elicitation format (5%/50%/95%), got levels {0:?}"
    )]
    UnsupportedLevels(Vec<f64>),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Score(#[from] ScoreError),
    #[error(transparent)]
    Cdf(#[from] CdfError),
    #[error(transparent)]
    Cm(#[from] CmError),
    #[error(transparent)]
    SqSum(#[from] SqSumError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

/// How the exact-distribution value `Fₙ(Σz)` becomes a statistical-accuracy
/// score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SaConvention {
    /// `1 − Fₙ(Σz)`: low for overconfident experts, aligned with the
    /// Classical Model's p-value semantics. The default.
    #[default]
    Survival,
    /// `Fₙ(Σz)` itself.
    Cdf,
    /// `2·min(Fₙ, 1 − Fₙ)`: penalizes both tails.
    TwoSided,
}

impl SaConvention {
    pub fn as_str(&self) -> &'static str {
        match self {
            SaConvention::Survival => "survival",
            SaConvention::Cdf => "cdf",
            SaConvention::TwoSided => "two-sided",
        }
    }

    pub fn parse(s: &str) -> Option<SaConvention> {
        match s {
            "survival" => Some(SaConvention::Survival),
            "cdf" => Some(SaConvention::Cdf),
            "two-sided" | "two_sided" => Some(SaConvention::TwoSided),
            _ => None,
        }
    }
}

/// Everything a scoring run depends on; embedded in the report so results
/// are reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoringConfig {
    /// Intrinsic-range overshoot fraction per side.
    pub overshoot: f64,
    /// SA convention for the CRPS-based score.
    pub convention: SaConvention,
    /// Whether the realization participates in the intrinsic range.
    pub include_realization_in_range: bool,
    /// Realizations with |r| below this make MAPE unstable.
    pub mape_epsilon: f64,
    /// MAPE at or above this value is flagged unstable.
    pub mape_instability_threshold: f64,
    /// Floor applied before taking logs in the geometric means.
    pub log_geomean_floor: f64,
    /// Series truncation tolerance for the exact distribution.
    pub sqsum_truncation_tol: f64,
    /// Series term budget for the exact distribution.
    pub sqsum_max_terms: usize,
}

impl Default for ScoringConfig {
    fn default() -> Self {
        ScoringConfig {
            overshoot: 0.10,
            convention: SaConvention::Survival,
            include_realization_in_range: true,
            mape_epsilon: 1e-9,
            mape_instability_threshold: 2.0,
            log_geomean_floor: 1e-300,
            sqsum_truncation_tol: crate::sqsum::DEFAULT_TRUNCATION_TOL,
            sqsum_max_terms: crate::sqsum::DEFAULT_MAX_TERMS,
        }
    }
}

impl ScoringConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if !self.overshoot.is_finite() || self.overshoot < 0.0 {
            return Err(PipelineError::InvalidConfig(format!(
                "overshoot must be ≥ 0, got {}",
                self.overshoot
            )));
        }
        if !(self.mape_epsilon > 0.0) {
            return Err(PipelineError::InvalidConfig("mape_epsilon must be > 0".into()));
        }
        if !(self.mape_instability_threshold > 0.0) {
            return Err(PipelineError::InvalidConfig(
                "mape_instability_threshold must be > 0".into(),
            ));
        }
        if !(self.log_geomean_floor > 0.0) {
            return Err(PipelineError::InvalidConfig("log_geomean_floor must be > 0".into()));
        }
        if !(self.sqsum_truncation_tol > 0.0) || self.sqsum_max_terms == 0 {
            return Err(PipelineError::InvalidConfig("invalid series truncation control".into()));
        }
        Ok(())
    }

    /// Apply a study file's embedded overrides on top of this configuration.
    pub fn apply_study_overrides(&mut self, overrides: &crate::study_io::StudyOverrides) {
        if let Some(o) = overrides.overshoot {
            self.overshoot = o;
        }
        if let Some(c) = overrides.convention {
            self.convention = c;
        }
    }
}

/// Statistical accuracy of a pit vector under the scale-invariant CRPS test:
/// `z = (1 − 2v)²` per pit, `T = Σz`, then `Fₙ(T)` read through the chosen
/// convention. Uniform on [0,1] under the uniformity null for every
/// convention.
pub fn crps_sa(pits: &[f64], convention: SaConvention) -> Result<f64, PipelineError> {
    let dist = SqSumDistribution::new(pits.len().max(1))?;
    crps_sa_with_dist(pits, convention, &dist)
}

/// As [`crps_sa`] with a caller-provided distribution evaluator, so one
/// study's experts share the precomputed series.
pub fn crps_sa_with_dist(
    pits: &[f64],
    convention: SaConvention,
    dist: &SqSumDistribution,
) -> Result<f64, PipelineError> {
    if pits.is_empty() {
        return Err(PipelineError::EmptyPits);
    }
    debug_assert_eq!(dist.n(), pits.len());
    let t = z_sum(pits)?;
    let f = dist.cdf(t);
    Ok(apply_convention(f, convention))
}

fn apply_convention(f: f64, convention: SaConvention) -> f64 {
    match convention {
        SaConvention::Survival => 1.0 - f,
        SaConvention::Cdf => f,
        SaConvention::TwoSided => 2.0 * f.min(1.0 - f),
    }
}

/// Sum of transformed pits `Σ (1 − 2vᵢ)²`.
pub fn z_sum(pits: &[f64]) -> Result<f64, PipelineError> {
    let mut t = 0.0;
    for &v in pits {
        if !(0.0..=1.0).contains(&v) {
            return Err(PipelineError::PitOutOfRange(v));
        }
        t += scores::z_transform(v)?;
    }
    Ok(t)
}

/// Location bias: |percent of realizations above the assessed medians − 50|.
/// A realization exactly on the median counts as "not above" (the same tie
/// rule as the inter-quantile binning).
pub fn location_bias(medians: &[f64], realizations: &[f64]) -> Result<f64, PipelineError> {
    if medians.len() != realizations.len() {
        return Err(PipelineError::LengthMismatch(medians.len(), realizations.len()));
    }
    if medians.is_empty() {
        return Err(PipelineError::EmptyPits);
    }
    let above = medians.iter().zip(realizations).filter(|(m, y)| y > m).count();
    Ok(location_bias_from_counts(above, medians.len()))
}

/// Bias from a precomputed "realizations above median" count.
pub fn location_bias_from_counts(above: usize, n: usize) -> f64 {
    (100.0 * above as f64 / n as f64 - 50.0).abs()
}

/// MAPE result: the raw value (possibly non-finite when a realization is
/// exactly zero) and the instability flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapeOutcome {
    pub value: f64,
    pub unstable: bool,
    /// Terms dropped because |realization| < epsilon; only ever non-zero
    /// when exclusion is explicitly requested.
    pub excluded_terms: u32,
}

/// Mean absolute percentage error of point forecasts (medians) against
/// realizations, with the default stability screen.
pub fn mape(forecasts: &[f64], realizations: &[f64]) -> Result<(f64, bool), PipelineError> {
    let config = ScoringConfig::default();
    let out = mape_with(
        forecasts,
        realizations,
        config.mape_epsilon,
        config.mape_instability_threshold,
        false,
    )?;
    Ok((out.value, out.unstable))
}

/// MAPE with explicit stability controls. A term with `|realization| <
/// epsilon` marks the result unstable; it is excluded from the mean only
/// when `exclude_near_zero` is set, and the exclusion is counted — never
/// silent.
pub fn mape_with(
    forecasts: &[f64],
    realizations: &[f64],
    epsilon: f64,
    instability_threshold: f64,
    exclude_near_zero: bool,
) -> Result<MapeOutcome, PipelineError> {
    if forecasts.len() != realizations.len() {
        return Err(PipelineError::LengthMismatch(forecasts.len(), realizations.len()));
    }
    if forecasts.is_empty() {
        return Err(PipelineError::EmptyPits);
    }
    let mut unstable = false;
    let mut excluded = 0u32;
    let mut sum = 0.0;
    let mut used = 0usize;
    for (x, r) in forecasts.iter().zip(realizations) {
        if r.abs() < epsilon {
            unstable = true;
            if exclude_near_zero {
                excluded += 1;
                continue;
            }
        }
        sum += ((x - r) / r).abs();
        used += 1;
    }
    let value = if used > 0 { sum / used as f64 } else { f64::NAN };
    if value >= instability_threshold || !value.is_finite() {
        unstable = true;
    }
    Ok(MapeOutcome { value, unstable, excluded_terms: excluded })
}

/// Log geometric mean `(1/n)·Σ ln vᵢ` with values floored at 1e-300.
pub fn log_geomean(values: &[f64]) -> Result<f64, PipelineError> {
    log_geomean_with_floor(values, 1e-300).map(|(v, _)| v)
}

/// Log geometric mean with an explicit floor; also reports how many values
/// needed flooring.
pub fn log_geomean_with_floor(values: &[f64], floor: f64) -> Result<(f64, u32), PipelineError> {
    if values.is_empty() {
        return Err(PipelineError::EmptyValues);
    }
    let mut floored = 0u32;
    let mut sum = 0.0;
    for &v in values {
        let clipped = if v < floor {
            floored += 1;
            floor
        } else {
            v
        };
        sum += clipped.ln();
    }
    Ok((sum / values.len() as f64, floored))
}

pub use crate::stats::{pearson, spearman};

/// Scorecard for one expert across a study's calibration variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpertScoreCard {
    pub expert_id: String,
    pub n_vars: usize,
    /// Realized quantiles, in the study's variable order.
    pub pit_values: Vec<f64>,
    pub z_sum: f64,
    pub crps_sa: f64,
    pub crps_sa_convention: SaConvention,
    pub cm_sa: f64,
    pub inter_quantile_counts: [u32; 4],
    /// |% of realizations above the medians − 50|, in percentage points.
    pub location_bias: f64,
    /// `None` when the raw value is non-finite (a realization of exactly 0).
    pub mape: Option<f64>,
    pub mape_unstable: bool,
    /// Pits clamped to 0/1 because the realization fell outside the support.
    pub clamped_pits: u32,
}

/// Spearman and Pearson correlation of one score pair over the study's
/// experts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationPair {
    pub spearman: f64,
    pub pearson: f64,
    pub experts: usize,
}

/// Correlations between the score columns; `None` when undefined (fewer than
/// two experts, zero variance, or no stable MAPE values).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Correlations {
    pub crps_sa_vs_cm_sa: Option<CorrelationPair>,
    pub crps_sa_vs_mape: Option<CorrelationPair>,
    pub cm_sa_vs_mape: Option<CorrelationPair>,
}

/// One row of the rank-ordered SA plot series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaRankRow {
    pub rank: usize,
    pub expert_id: String,
    pub crps_sa: f64,
    pub cm_sa: f64,
}

/// Number of bins in the pit histogram (5% each).
pub const PIT_HISTOGRAM_BINS: usize = 20;

/// Full study-level results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub study_id: String,
    pub config: ScoringConfig,
    /// One card per complete expert, sorted by expert id.
    pub experts: Vec<ExpertScoreCard>,
    pub log_geomean_crps_sa: f64,
    pub log_geomean_cm_sa: f64,
    pub floored_crps_sa: u32,
    pub floored_cm_sa: u32,
    pub correlations: Correlations,
    /// Experts ordered by ascending CRPS SA, for rank plots.
    pub sa_by_rank: Vec<SaRankRow>,
    /// Counts of all pit values over 5% bins, for calibration histograms.
    pub pit_histogram: Vec<u32>,
    pub diagnostics: IngestionDiagnostics,
}

/// Score a whole study: one scorecard per complete expert plus the
/// study-level aggregates and plot series.
///
/// Experts missing any variable are excluded with a logged reason (they are
/// also dropped at ingestion; the check here covers hand-built records).
/// `ingestion` carries drops and warnings from loading and is extended with
/// scoring-time diagnostics.
pub fn score_study(
    study: &StudyRecord,
    config: &ScoringConfig,
    ingestion: IngestionDiagnostics,
) -> Result<ScoreReport, PipelineError> {
    config.validate()?;
    if study.variables.is_empty() {
        return Err(PipelineError::EmptyStudy);
    }
    if study.quantile_levels != [0.05, 0.5, 0.95] {
        return Err(PipelineError::UnsupportedLevels(study.quantile_levels.clone()));
    }
    let mut diagnostics = ingestion;
    let expert_ids = study.expert_ids();
    if expert_ids.is_empty() {
        return Err(PipelineError::EmptyStudy);
    }
    // log experts present in some variables but not all (hand-built records)
    let mut partial: std::collections::BTreeSet<String> = std::collections::BTreeSet::new();
    for v in &study.variables {
        for e in v.assessments.keys() {
            if !expert_ids.contains(e) {
                partial.insert(e.clone());
            }
        }
    }
    for e in partial {
        diagnostics.dropped_experts.push(crate::study_io::DroppedExpert {
            expert_id: e,
            reason: "incomplete".into(),
            detail: "not assessed in every variable".into(),
        });
    }

    // per-variable interpolation shared by all experts
    let n_vars = study.variables.len();
    let mut pits: std::collections::BTreeMap<&str, Vec<f64>> = Default::default();
    let mut clamps: std::collections::BTreeMap<&str, u32> = Default::default();
    let mut bins: std::collections::BTreeMap<&str, [u32; 4]> = Default::default();
    let mut medians: std::collections::BTreeMap<&str, Vec<f64>> = Default::default();
    let mut realizations = Vec::with_capacity(n_vars);
    for v in &study.variables {
        let assessments: Vec<&crate::expert_cdf::QuantileAssessment> =
            expert_ids.iter().map(|e| &v.assessments[e]).collect();
        let realization = config.include_realization_in_range.then_some(v.realization);
        let range = expert_cdf::intrinsic_range(&assessments, realization, config.overshoot)?;
        if range.zero_span_expanded {
            diagnostics.warnings.push(format!(
                "variable '{}': zero-span inputs; intrinsic range expanded by epsilon",
                v.variable_id
            ));
        }
        realizations.push(v.realization);
        for (expert, q) in expert_ids.iter().zip(&assessments) {
            let cdf = expert_cdf::build_cdf(q, &range)?;
            let (pit, clamped) = cdf.pit_flagged(v.realization);
            pits.entry(expert).or_default().push(pit);
            if clamped {
                *clamps.entry(expert).or_default() += 1;
            }
            let bin = classical_model::bin_realization(q, v.realization);
            bins.entry(expert).or_default()[bin] += 1;
            medians
                .entry(expert)
                .or_default()
                .push(q.median().expect("0.5 is among the levels"));
        }
    }
    diagnostics.clamped_pits = clamps.values().sum();

    let dist =
        SqSumDistribution::with_params(n_vars, config.sqsum_truncation_tol, config.sqsum_max_terms)?;
    let experts: Result<Vec<ExpertScoreCard>, PipelineError> = expert_ids
        .par_iter()
        .map(|expert| {
            let pit_values = pits[expert.as_str()].clone();
            let t = z_sum(&pit_values)?;
            let sa = apply_convention(dist.cdf(t), config.convention);
            let sample = InterQuantileSample::new(bins[expert.as_str()])?;
            let cm = classical_model::cm_sa(&sample)?;
            let bias = location_bias(&medians[expert.as_str()], &realizations)?;
            let mape_out = mape_with(
                &medians[expert.as_str()],
                &realizations,
                config.mape_epsilon,
                config.mape_instability_threshold,
                false,
            )?;
            Ok(ExpertScoreCard {
                expert_id: expert.clone(),
                n_vars,
                pit_values,
                z_sum: t,
                crps_sa: sa,
                crps_sa_convention: config.convention,
                cm_sa: cm,
                inter_quantile_counts: sample.counts(),
                location_bias: bias,
                mape: mape_out.value.is_finite().then_some(mape_out.value),
                mape_unstable: mape_out.unstable,
                clamped_pits: clamps.get(expert.as_str()).copied().unwrap_or(0),
            })
        })
        .collect();
    let experts = experts?;

    let crps_col: Vec<f64> = experts.iter().map(|e| e.crps_sa).collect();
    let cm_col: Vec<f64> = experts.iter().map(|e| e.cm_sa).collect();
    let (lg_crps, floored_crps) = log_geomean_with_floor(&crps_col, config.log_geomean_floor)?;
    let (lg_cm, floored_cm) = log_geomean_with_floor(&cm_col, config.log_geomean_floor)?;

    let correlations = Correlations {
        crps_sa_vs_cm_sa: correlation_pair(&crps_col, &cm_col),
        crps_sa_vs_mape: mape_correlation(&experts, |e| e.crps_sa),
        cm_sa_vs_mape: mape_correlation(&experts, |e| e.cm_sa),
    };

    let mut order: Vec<usize> = (0..experts.len()).collect();
    order.sort_by(|&a, &b| {
        experts[a]
            .crps_sa
            .partial_cmp(&experts[b].crps_sa)
            .unwrap()
            .then_with(|| experts[a].expert_id.cmp(&experts[b].expert_id))
    });
    let sa_by_rank = order
        .iter()
        .enumerate()
        .map(|(rank, &i)| SaRankRow {
            rank: rank + 1,
            expert_id: experts[i].expert_id.clone(),
            crps_sa: experts[i].crps_sa,
            cm_sa: experts[i].cm_sa,
        })
        .collect();

    let mut pit_histogram = vec![0u32; PIT_HISTOGRAM_BINS];
    for e in &experts {
        for &v in &e.pit_values {
            let bin = ((v * PIT_HISTOGRAM_BINS as f64) as usize).min(PIT_HISTOGRAM_BINS - 1);
            pit_histogram[bin] += 1;
        }
    }

    Ok(ScoreReport {
        study_id: study.study_id.clone(),
        config: config.clone(),
        experts,
        log_geomean_crps_sa: lg_crps,
        log_geomean_cm_sa: lg_cm,
        floored_crps_sa: floored_crps,
        floored_cm_sa: floored_cm,
        correlations,
        sa_by_rank,
        pit_histogram,
        diagnostics,
    })
}

fn correlation_pair(xs: &[f64], ys: &[f64]) -> Option<CorrelationPair> {
    if xs.len() < 2 {
        return None;
    }
    let spearman = stats::spearman(xs, ys).ok()?;
    let pearson = stats::pearson(xs, ys).ok()?;
    Some(CorrelationPair { spearman, pearson, experts: xs.len() })
}

fn mape_correlation<F: Fn(&ExpertScoreCard) -> f64>(
    experts: &[ExpertScoreCard],
    sa: F,
) -> Option<CorrelationPair> {
    let pairs: Vec<(f64, f64)> = experts
        .iter()
        .filter(|e| !e.mape_unstable)
        .filter_map(|e| e.mape.map(|m| (sa(e), m)))
        .collect();
    let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    correlation_pair(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crps_sa_perfectly_centered_pits() {
        let pits = vec![0.5; 7];
        assert_eq!(crps_sa(&pits, SaConvention::Cdf).unwrap(), 0.0);
        assert_eq!(crps_sa(&pits, SaConvention::Survival).unwrap(), 1.0);
    }

    #[test]
    fn crps_sa_maximal_overconfidence() {
        let pits: Vec<f64> = (0..10).map(|i| if i % 2 == 0 { 0.0 } else { 1.0 }).collect();
        let sa = crps_sa(&pits, SaConvention::Survival).unwrap();
        assert!(sa < 1e-12, "sa = {sa}");
    }

    #[test]
    fn crps_sa_single_variable_matches_sqrt_law() {
        // z = (1 − 0.5)² = 0.25, F₁(0.25) = 0.5
        let sa = crps_sa(&[0.25], SaConvention::Cdf).unwrap();
        assert!((sa - 0.5).abs() < 1e-12);
        let surv = crps_sa(&[0.25], SaConvention::Survival).unwrap();
        assert!((surv - 0.5).abs() < 1e-12);
    }

    #[test]
    fn crps_sa_location_bias_blindness() {
        // 2n copies of 0.4 score identically to n of 0.4 plus n of 0.6
        let n = 5;
        let doubled: Vec<f64> = vec![0.4; 2 * n];
        let mixed: Vec<f64> =
            (0..2 * n).map(|i| if i < n { 0.4 } else { 0.6 }).collect();
        let a = crps_sa(&doubled, SaConvention::Survival).unwrap();
        let b = crps_sa(&mixed, SaConvention::Survival).unwrap();
        assert_eq!(a.to_bits(), b.to_bits(), "{a} vs {b}");
    }

    #[test]
    fn crps_sa_mirrored_pits_bitwise_equal() {
        // dyadic pits have exactly representable complements
        let pits: Vec<f64> = vec![0.125, 0.25, 0.375, 0.5, 0.75];
        let mirrored: Vec<f64> = pits.iter().map(|v| 1.0 - v).collect();
        for conv in [SaConvention::Survival, SaConvention::Cdf, SaConvention::TwoSided] {
            let a = crps_sa(&pits, conv).unwrap();
            let b = crps_sa(&mirrored, conv).unwrap();
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn crps_sa_rejects_bad_pits() {
        assert!(matches!(crps_sa(&[], SaConvention::Survival), Err(PipelineError::EmptyPits)));
        assert!(matches!(
            crps_sa(&[0.5, 1.2], SaConvention::Survival),
            Err(PipelineError::PitOutOfRange(_))
        ));
    }

    #[test]
    fn two_sided_folds_both_tails() {
        let low = crps_sa(&[0.5; 6], SaConvention::TwoSided).unwrap();
        assert_eq!(low, 0.0);
        let high: Vec<f64> = vec![0.0; 6];
        assert!(crps_sa(&high, SaConvention::TwoSided).unwrap() < 1e-9);
    }

    #[test]
    fn location_bias_examples() {
        let medians = vec![0.0; 10];
        let half: Vec<f64> = (0..10).map(|i| if i < 5 { 1.0 } else { -1.0 }).collect();
        assert_eq!(location_bias(&medians, &half).unwrap(), 0.0);
        let all_above = vec![1.0; 10];
        assert_eq!(location_bias(&medians, &all_above).unwrap(), 50.0);
        let seven: Vec<f64> = (0..10).map(|i| if i < 7 { 1.0 } else { -1.0 }).collect();
        assert!((location_bias(&medians, &seven).unwrap() - 20.0).abs() < 1e-12);
    }

    #[test]
    fn location_bias_tie_counts_as_not_above() {
        let medians = vec![2.0, 2.0];
        let ys = vec![2.0, 3.0];
        // one above of two → |50 − 50| = 0
        assert_eq!(location_bias(&medians, &ys).unwrap(), 0.0);
    }

    #[test]
    fn mape_examples() {
        assert_eq!(mape(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), (0.0, false));
        assert_eq!(mape(&[2.0], &[1.0]).unwrap(), (1.0, false));
        let (v, unstable) = mape(&[1.0, 1.0], &[2.0, 0.5]).unwrap();
        assert!((v - 0.75).abs() < 1e-15);
        assert!(!unstable);
    }

    #[test]
    fn mape_instability_paths() {
        // mean at or above the screen
        let (v, unstable) = mape(&[3.0], &[1.0]).unwrap();
        assert_eq!(v, 2.0);
        assert!(unstable);
        // zero realization: value still returned (infinite), flagged
        let (v, unstable) = mape(&[1.0], &[0.0]).unwrap();
        assert!(v.is_infinite());
        assert!(unstable);
        // exclusion only on request, and counted
        let out = mape_with(&[1.0, 2.0], &[0.0, 2.0], 1e-9, 2.0, true).unwrap();
        assert_eq!(out.excluded_terms, 1);
        assert_eq!(out.value, 0.0);
        assert!(out.unstable);
    }

    #[test]
    fn log_geomean_examples() {
        assert_eq!(log_geomean(&[1.0, 1.0, 1.0]).unwrap(), 0.0);
        let (v, floored) = log_geomean_with_floor(&[1.0, 0.0], 1e-300).unwrap();
        assert_eq!(floored, 1);
        assert!((v - (-300.0 * std::f64::consts::LN_10 / 2.0)).abs() / v.abs() < 0.01);
        assert!(log_geomean(&[]).is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = ScoringConfig::default();
        assert!(c.validate().is_ok());
        c.overshoot = -1.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn convention_parsing_roundtrip() {
        for conv in [SaConvention::Survival, SaConvention::Cdf, SaConvention::TwoSided] {
            assert_eq!(SaConvention::parse(conv.as_str()), Some(conv));
        }
        assert_eq!(SaConvention::parse("bogus"), None);
    }
}
