//! Seeded synthetic studies with controlled calibration defects.
//!
//! Each variable carries a "true" distribution whose 5%/50%/95% quantiles
//! come from the standard normal. An expert with profile `(concentration c,
//! shift δ)` states the distorted quantiles `δ + c·z_p`: `c = 1, δ = 0` is a
//! calibrated expert, `c < 1` overconfident, `c > 1` underconfident, `δ ≠ 0`
//! location-biased.
//!
//! Realizations are drawn from the minimally informative piecewise-linear
//! distribution through the true quantiles, built on the same intrinsic
//! range the scorer derives from the assessments (realization excluded).
//! For a calibrated expert the stated knots and support then coincide with
//! the truth, so the scored pit values are exactly the generator's uniform
//! draws — the uniformity of the resulting SA scores validates the whole
//! interpolate–transform–convolve chain with nothing owed to asymptotics.
//! Score synthetic studies with `include_realization_in_range = false` and
//! the same overshoot to preserve that exactness.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::expert_cdf::{self, CdfError, QuantileAssessment};
use crate::study_io::{CalibrationVariable, StudyRecord};

#[derive(Debug, Error)]
pub enum SyntheticError {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),
    #[error(transparent)]
    Cdf(#[from] CdfError),
}

/// Overshoot fraction baked into generated studies; score them with the same
/// value (it is also the scoring default).
pub const SYNTHETIC_OVERSHOOT: f64 = 0.10;

/// Calibration-defect taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Calibrated,
    Overconfident,
    Underconfident,
    LocationBiased,
}

impl ProfileKind {
    pub fn slug(&self) -> &'static str {
        match self {
            ProfileKind::Calibrated => "calibrated",
            ProfileKind::Overconfident => "overconfident",
            ProfileKind::Underconfident => "underconfident",
            ProfileKind::LocationBiased => "location-biased",
        }
    }

    pub fn parse(s: &str) -> Option<ProfileKind> {
        match s {
            "calibrated" => Some(ProfileKind::Calibrated),
            "overconfident" => Some(ProfileKind::Overconfident),
            "underconfident" => Some(ProfileKind::Underconfident),
            "location-biased" | "location_biased" => Some(ProfileKind::LocationBiased),
            _ => None,
        }
    }
}

/// How one expert distorts the true quantiles: stated quantile at level p is
/// `shift + concentration · (true p-quantile)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpertProfile {
    pub kind: ProfileKind,
    /// Quantile-width multiplier; < 1 narrows (overconfidence).
    pub concentration: f64,
    /// Median displacement in true-scale standard units.
    pub shift: f64,
    /// Mixed into the study stream so otherwise-identical configurations can
    /// be decorrelated.
    pub seed: u64,
}

impl ExpertProfile {
    pub fn calibrated() -> Self {
        ExpertProfile { kind: ProfileKind::Calibrated, concentration: 1.0, shift: 0.0, seed: 0 }
    }

    pub fn overconfident(concentration: f64) -> Self {
        ExpertProfile { kind: ProfileKind::Overconfident, concentration, shift: 0.0, seed: 0 }
    }

    pub fn underconfident(concentration: f64) -> Self {
        ExpertProfile { kind: ProfileKind::Underconfident, concentration, shift: 0.0, seed: 0 }
    }

    pub fn location_biased(shift: f64) -> Self {
        ExpertProfile { kind: ProfileKind::LocationBiased, concentration: 1.0, shift, seed: 0 }
    }

    pub fn validate(&self) -> Result<(), SyntheticError> {
        if !(self.concentration > 0.0) || !self.concentration.is_finite() {
            return Err(SyntheticError::InvalidProfile(format!(
                "concentration must be > 0, got {}",
                self.concentration
            )));
        }
        if !self.shift.is_finite() {
            return Err(SyntheticError::InvalidProfile("shift must be finite".into()));
        }
        if self.kind == ProfileKind::Calibrated && (self.concentration != 1.0 || self.shift != 0.0)
        {
            return Err(SyntheticError::InvalidProfile(
                "calibrated profile requires concentration = 1 and shift = 0".into(),
            ));
        }
        Ok(())
    }
}

/// Per-study trace of what the generator drew, for validation harnesses:
/// `true_percentiles[i][j]` is the uniform draw behind variable `i` — the
/// pit a calibrated expert must score (index `j` is the variable draw; one
/// per variable).
#[derive(Debug, Clone)]
pub struct GenerationTrace {
    pub true_percentiles: Vec<f64>,
    pub expert_ids: Vec<String>,
    pub profiles: Vec<ExpertProfile>,
}

/// Generate a synthetic study. Experts cycle through `profiles`; everything
/// is deterministic given `seed` and the profiles.
pub fn generate_study(
    n_experts: usize,
    n_vars: usize,
    profiles: &[ExpertProfile],
    seed: u64,
) -> Result<StudyRecord, SyntheticError> {
    generate_study_traced(n_experts, n_vars, profiles, seed).map(|(record, _)| record)
}

/// As [`generate_study`], also returning the generation trace.
pub fn generate_study_traced(
    n_experts: usize,
    n_vars: usize,
    profiles: &[ExpertProfile],
    seed: u64,
) -> Result<(StudyRecord, GenerationTrace), SyntheticError> {
    if n_experts == 0 {
        return Err(SyntheticError::InvalidDimensions("need at least one expert".into()));
    }
    if !(1..=100).contains(&n_vars) {
        return Err(SyntheticError::InvalidDimensions(format!(
            "n_vars must be in 1..=100 (studies in the field run 7–21), got {n_vars}"
        )));
    }
    if profiles.is_empty() {
        return Err(SyntheticError::InvalidDimensions("need at least one profile".into()));
    }
    for p in profiles {
        p.validate()?;
    }

    let levels = [0.05, 0.5, 0.95];
    let true_quantiles: Vec<f64> = levels.iter().map(|&p| normal_quantile(p)).collect();
    let truth = QuantileAssessment::new(levels.to_vec(), true_quantiles.clone())?;

    let assigned: Vec<ExpertProfile> =
        (0..n_experts).map(|j| profiles[j % profiles.len()]).collect();
    let expert_ids: Vec<String> = assigned
        .iter()
        .enumerate()
        .map(|(j, p)| format!("e{:03}-{}", j + 1, p.kind.slug()))
        .collect();

    let mut assessments: Vec<QuantileAssessment> = Vec::with_capacity(n_experts);
    for p in &assigned {
        let values: Vec<f64> =
            true_quantiles.iter().map(|&z| p.shift + p.concentration * z).collect();
        assessments.push(QuantileAssessment::new(levels.to_vec(), values)?);
    }

    // same support the scorer derives with the realization excluded; the
    // truth knots are in the union so every realization stays inside it
    let mut range_inputs: Vec<&QuantileAssessment> = assessments.iter().collect();
    range_inputs.push(&truth);
    let range = expert_cdf::intrinsic_range(&range_inputs, None, SYNTHETIC_OVERSHOOT)?;
    let truth_cdf = expert_cdf::build_cdf(&truth, &range)?;

    let mut stream_seed = seed;
    for (i, p) in assigned.iter().enumerate() {
        stream_seed = stream_seed.wrapping_add(p.seed.rotate_left((i % 64) as u32));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);

    let mut variables = Vec::with_capacity(n_vars);
    let mut true_percentiles = Vec::with_capacity(n_vars);
    for i in 0..n_vars {
        let v: f64 = rng.random();
        let y = truth_cdf.inverse(v)?;
        true_percentiles.push(v);
        let mut map = std::collections::BTreeMap::new();
        for (id, q) in expert_ids.iter().zip(&assessments) {
            map.insert(id.clone(), q.clone());
        }
        variables.push(CalibrationVariable {
            variable_id: format!("v{:03}", i + 1),
            realization: y,
            unit: String::new(),
            assessments: map,
        });
    }

    let record = StudyRecord {
        study_id: format!("synthetic-{seed}"),
        quantile_levels: levels.to_vec(),
        variables,
        overrides: None,
    };
    let trace = GenerationTrace { true_percentiles, expert_ids, profiles: assigned };
    Ok((record, trace))
}

/// Standard normal quantile function (Acklam's rational approximation,
/// relative error below 1.2e-9 — plenty: it only positions knots, and scale
/// invariance makes the SA scores indifferent to the exact true law).
pub fn normal_quantile(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "quantile level must be in (0,1), got {p}");
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{self, SaConvention, ScoringConfig};
    use crate::study_io::IngestionDiagnostics;

    fn scoring_config() -> ScoringConfig {
        ScoringConfig {
            include_realization_in_range: false,
            overshoot: SYNTHETIC_OVERSHOOT,
            ..ScoringConfig::default()
        }
    }

    #[test]
    fn normal_quantiles_reference_values() {
        assert!((normal_quantile(0.5)).abs() < 1e-12);
        assert!((normal_quantile(0.95) - 1.6448536269514722).abs() < 1e-8);
        assert!((normal_quantile(0.05) + 1.6448536269514722).abs() < 1e-8);
        assert!((normal_quantile(0.975) - 1.959963984540054).abs() < 1e-8);
    }

    #[test]
    fn generation_is_deterministic() {
        let p = [ExpertProfile::calibrated(), ExpertProfile::overconfident(0.5)];
        let a = generate_study(4, 10, &p, 42).unwrap();
        let b = generate_study(4, 10, &p, 42).unwrap();
        assert_eq!(a, b);
        let c = generate_study(4, 10, &p, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn invalid_inputs_rejected() {
        let p = [ExpertProfile::calibrated()];
        assert!(generate_study(0, 10, &p, 1).is_err());
        assert!(generate_study(2, 0, &p, 1).is_err());
        assert!(generate_study(2, 10, &[], 1).is_err());
        assert!(generate_study(2, 10, &[ExpertProfile::overconfident(0.0)], 1).is_err());
        let bad = ExpertProfile { concentration: 0.5, ..ExpertProfile::calibrated() };
        assert!(generate_study(2, 10, &[bad], 1).is_err());
    }

    #[test]
    fn calibrated_expert_pits_equal_the_uniform_draws() {
        // The scored pits of a calibrated expert reproduce the generator's
        // uniform draws exactly (same knots, same support).
        let (study, trace) =
            generate_study_traced(1, 20, &[ExpertProfile::calibrated()], 7).unwrap();
        let report =
            pipeline::score_study(&study, &scoring_config(), IngestionDiagnostics::default())
                .unwrap();
        let card = &report.experts[0];
        for (pit, v) in card.pit_values.iter().zip(&trace.true_percentiles) {
            assert!((pit - v).abs() < 1e-12, "{pit} vs {v}");
        }
        assert_eq!(card.clamped_pits, 0);
    }

    #[test]
    fn overconfident_pits_pile_near_the_edges() {
        let (study, _) =
            generate_study_traced(1, 60, &[ExpertProfile::overconfident(0.2)], 11).unwrap();
        let report =
            pipeline::score_study(&study, &scoring_config(), IngestionDiagnostics::default())
                .unwrap();
        let pits = &report.experts[0].pit_values;
        let edge = pits.iter().filter(|v| **v < 0.1 || **v > 0.9).count();
        let middle = pits.iter().filter(|v| **v > 0.4 && **v < 0.6).count();
        assert!(edge > 2 * middle, "edge {edge}, middle {middle}");
    }

    #[test]
    fn mirrored_study_flips_bias_but_not_the_sa_scores() {
        // Geometric mirror: negate every quantile and realization. Pits
        // complement, so the z-symmetry leaves CRPS SA (and CM SA, whose
        // bins just reverse) unchanged while the realizations move to the
        // other side of the medians.
        let plus = generate_study(1, 15, &[ExpertProfile::location_biased(1.2)], 5).unwrap();
        let mut minus = plus.clone();
        for v in &mut minus.variables {
            v.realization = -v.realization;
            for q in v.assessments.values_mut() {
                let mirrored: Vec<f64> = q.values().iter().rev().map(|x| -x).collect();
                *q = QuantileAssessment::new(q.levels().to_vec(), mirrored).unwrap();
            }
        }
        let cfg = scoring_config();
        let rp = pipeline::score_study(&plus, &cfg, IngestionDiagnostics::default()).unwrap();
        let rm = pipeline::score_study(&minus, &cfg, IngestionDiagnostics::default()).unwrap();
        let (cp, cm) = (&rp.experts[0], &rm.experts[0]);
        for (a, b) in cp.pit_values.iter().zip(&cm.pit_values) {
            assert!((a + b - 1.0).abs() < 1e-12, "{a} vs {b}");
        }
        assert!((cp.crps_sa - cm.crps_sa).abs() < 1e-9);
        assert!((cp.cm_sa - cm.cm_sa).abs() < 1e-12);
        // a 1.2-sigma displaced median leaves most realizations on one side
        assert!(cp.location_bias > 20.0, "bias = {}", cp.location_bias);
        assert!((cp.location_bias - cm.location_bias).abs() < 1e-9);
    }

    #[test]
    fn calibrated_sa_is_roughly_uniform_over_replications() {
        // smoke-scale version of the acceptance criterion
        let mut sas = Vec::new();
        for seed in 0..200 {
            let study = generate_study(1, 10, &[ExpertProfile::calibrated()], seed).unwrap();
            let report =
                pipeline::score_study(&study, &scoring_config(), IngestionDiagnostics::default())
                    .unwrap();
            sas.push(report.experts[0].crps_sa);
        }
        let d = crate::stats::ks_statistic(&sas, |x| x.clamp(0.0, 1.0)).unwrap();
        // 1% critical value for 200 samples is ~0.115
        assert!(d < 0.115, "KS distance {d}");
    }

    #[test]
    fn profile_kind_parsing() {
        for kind in [
            ProfileKind::Calibrated,
            ProfileKind::Overconfident,
            ProfileKind::Underconfident,
            ProfileKind::LocationBiased,
        ] {
            assert_eq!(ProfileKind::parse(kind.slug()), Some(kind));
        }
        assert_eq!(ProfileKind::parse("nope"), None);
    }
}
