//! Piecewise-linear expert CDFs interpolated from assessed quantiles.
//!
//! An expert states a few quantiles of a continuous quantity. To score the
//! realization through the probability integral transform, the quantiles are
//! completed into a full CDF that is minimally informative relative to a
//! uniform background: the density is constant between adjacent knots. The
//! support is the variable's intrinsic range — the span of every expert's
//! quantiles (plus, by default, the realization) extended by an overshoot
//! fraction on each side.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CdfError {
    #[error("quantile levels must be strictly increasing probabilities in (0, 1): {0}")]
    InvalidLevels(String),
    #[error("quantile values must be strictly increasing, got {0:?}")]
    NonIncreasingValues(Vec<f64>),
    #[error("levels and values have different lengths ({levels} vs {values})")]
    LengthMismatch { levels: usize, values: usize },
    #[error("non-finite input: {0}")]
    NonFinite(f64),
    #[error("need at least one assessment to build an intrinsic range")]
    NoAssessments,
    #[error("overshoot must be ≥ 0, got {0}")]
    NegativeOvershoot(f64),
    #[error("quantile value {value} outside the open intrinsic range ({low}, {high})")]
    QuantileOutsideRange { value: f64, low: f64, high: f64 },
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
}

/// An expert's quantile assessment for one variable: levels like
/// `(0.05, 0.5, 0.95)` and the corresponding strictly increasing values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantileAssessment {
    levels: Vec<f64>,
    values: Vec<f64>,
}

impl QuantileAssessment {
    /// Ties or non-increasing values are rejected at ingestion rather than
    /// repaired: a silently widened assessment would corrupt scores.
    pub fn new(levels: Vec<f64>, values: Vec<f64>) -> Result<Self, CdfError> {
        if levels.len() != values.len() {
            return Err(CdfError::LengthMismatch { levels: levels.len(), values: values.len() });
        }
        if levels.is_empty() {
            return Err(CdfError::InvalidLevels("empty".into()));
        }
        let mut prev = 0.0;
        for &p in &levels {
            if !p.is_finite() || p <= prev || p >= 1.0 {
                return Err(CdfError::InvalidLevels(format!("{levels:?}")));
            }
            prev = p;
        }
        for w in values.windows(2) {
            if !(w[1] > w[0]) {
                return Err(CdfError::NonIncreasingValues(values.clone()));
            }
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CdfError::NonIncreasingValues(values));
        }
        Ok(QuantileAssessment { levels, values })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The assessed median, when 0.5 is among the levels.
    pub fn median(&self) -> Option<f64> {
        self.levels.iter().position(|&p| p == 0.5).map(|i| self.values[i])
    }
}

/// The support assigned to interpolated CDFs for one variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntrinsicRange {
    pub low: f64,
    pub high: f64,
    pub overshoot: f64,
    /// Set when all inputs coincided and the range was expanded by epsilon.
    pub zero_span_expanded: bool,
}

/// Epsilon used to expand a degenerate (zero-span) intrinsic range.
pub const ZERO_SPAN_EPSILON: f64 = 1e-6;

/// Compute a variable's intrinsic range: the span of every assessment's
/// quantiles plus the realization (when supplied), extended by
/// `overshoot · span` on each side.
///
/// A zero span (all inputs identical) is expanded by
/// [`ZERO_SPAN_EPSILON`]·max(1, |value|) and reported through
/// `zero_span_expanded`.
pub fn intrinsic_range(
    assessments: &[&QuantileAssessment],
    realization: Option<f64>,
    overshoot: f64,
) -> Result<IntrinsicRange, CdfError> {
    if assessments.is_empty() {
        return Err(CdfError::NoAssessments);
    }
    if !overshoot.is_finite() || overshoot < 0.0 {
        return Err(CdfError::NegativeOvershoot(overshoot));
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for a in assessments {
        min = min.min(a.values[0]);
        max = max.max(a.values[a.values.len() - 1]);
    }
    if let Some(y) = realization {
        if !y.is_finite() {
            return Err(CdfError::NonFinite(y));
        }
        min = min.min(y);
        max = max.max(y);
    }
    let span = max - min;
    if span == 0.0 {
        let eps = ZERO_SPAN_EPSILON * min.abs().max(1.0);
        return Ok(IntrinsicRange {
            low: min - eps,
            high: max + eps,
            overshoot,
            zero_span_expanded: true,
        });
    }
    Ok(IntrinsicRange {
        low: min - overshoot * span,
        high: max + overshoot * span,
        overshoot,
        zero_span_expanded: false,
    })
}

/// A continuous, strictly increasing piecewise-linear CDF given by its knots
/// `(x, p)`, running from `(support_low, 0)` to `(support_high, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseLinearCdf {
    knots: Vec<(f64, f64)>,
}

/// Interpolate an assessment into the minimally informative CDF on the given
/// range: knots at `(low, 0)`, each `(value_j, level_j)`, `(high, 1)`, linear
/// in between (constant density within each panel).
///
/// Every assessed value must lie strictly inside the open range; the range
/// construction in [`intrinsic_range`] guarantees that whenever
/// `overshoot > 0`.
pub fn build_cdf(
    q: &QuantileAssessment,
    range: &IntrinsicRange,
) -> Result<PiecewiseLinearCdf, CdfError> {
    let mut knots = Vec::with_capacity(q.levels.len() + 2);
    knots.push((range.low, 0.0));
    for (&x, &p) in q.values.iter().zip(&q.levels) {
        if x <= range.low || x >= range.high {
            return Err(CdfError::QuantileOutsideRange {
                value: x,
                low: range.low,
                high: range.high,
            });
        }
        knots.push((x, p));
    }
    knots.push((range.high, 1.0));
    Ok(PiecewiseLinearCdf { knots })
}

impl PiecewiseLinearCdf {
    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn support_low(&self) -> f64 {
        self.knots[0].0
    }

    pub fn support_high(&self) -> f64 {
        self.knots[self.knots.len() - 1].0
    }

    /// The probability integral transform `F(y)`, clamped to 0/1 outside the
    /// support. The companion flag in [`Self::pit_flagged`] reports clamping.
    pub fn pit(&self, y: f64) -> f64 {
        self.pit_flagged(y).0
    }

    /// `F(y)` together with an out-of-support flag. Realizations the expert's
    /// interpolated distribution excludes are legal inputs: they score as the
    /// extreme quantiles 0 or 1.
    pub fn pit_flagged(&self, y: f64) -> (f64, bool) {
        if y <= self.support_low() {
            return (0.0, y < self.support_low());
        }
        if y >= self.support_high() {
            return (1.0, y > self.support_high());
        }
        let idx = self.knots.partition_point(|&(x, _)| x <= y);
        let (x0, p0) = self.knots[idx - 1];
        let (x1, p1) = self.knots[idx];
        (p0 + (p1 - p0) * (y - x0) / (x1 - x0), false)
    }

    /// Quantile function, the exact inverse of [`Self::pit`] on the support.
    pub fn inverse(&self, p: f64) -> Result<f64, CdfError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(CdfError::InvalidProbability(p));
        }
        if p == 0.0 {
            return Ok(self.support_low());
        }
        if p == 1.0 {
            return Ok(self.support_high());
        }
        let idx = self.knots.partition_point(|&(_, q)| q <= p);
        let (x0, p0) = self.knots[idx - 1];
        let (x1, p1) = self.knots[idx];
        Ok(x0 + (x1 - x0) * (p - p0) / (p1 - p0))
    }
}
