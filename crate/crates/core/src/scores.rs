//! Closed-form scoring rules for probabilistic forecasts of a single
//! variable: the probability interval score, CRPS of uniform forecasts and
//! its expectations, the scale-invariant CRPS with its null distribution,
//! and the quadratic score for binary events.
//!
//! Every closed form here is checked in the tests against
//! [`crps_quadrature`], the adaptive-quadrature oracle for the defining
//! integral `∫ [F(x) − 1{x≥y}]² dx`.

use thiserror::Error;

use crate::quadrature::{self, QuadratureError};

#[derive(Debug, Error)]
pub enum ScoreError {
    #[error("non-finite input: {0}")]
    NonFinite(f64),
    #[error("invalid interval [{lower}, {upper}]")]
    InvalidInterval { lower: f64, upper: f64 },
    #[error("argument {value} outside domain {domain}")]
    OutOfDomain { value: f64, domain: &'static str },
    #[error("null density is singular at the lower range end 1/12")]
    DensitySingularity,
    #[error("quadrature failure: {0}")]
    Quadrature(#[from] QuadratureError),
    #[error("binned table invalid: {0}")]
    InvalidTable(String),
}

/// An uncertainty interval `[lower, upper]`. Degenerate intervals
/// (`lower == upper`) are allowed; they carry zero sharpness penalty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lower: f64,
    upper: f64,
}

impl Interval {
    pub fn new(lower: f64, upper: f64) -> Result<Self, ScoreError> {
        if !lower.is_finite() || !upper.is_finite() || lower > upper {
            return Err(ScoreError::InvalidInterval { lower, upper });
        }
        Ok(Interval { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// A uniform forecast `X ~ U[low, high]`, `low < high` strictly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformForecast {
    low: f64,
    high: f64,
}

impl UniformForecast {
    pub fn new(low: f64, high: f64) -> Result<Self, ScoreError> {
        if !low.is_finite() || !high.is_finite() || low >= high {
            return Err(ScoreError::InvalidInterval { lower: low, upper: high });
        }
        Ok(UniformForecast { low, high })
    }

    pub fn low(&self) -> f64 {
        self.low
    }

    pub fn high(&self) -> f64 {
        self.high
    }

    /// The forecast CDF.
    pub fn cdf(&self, x: f64) -> f64 {
        ((x - self.low) / (self.high - self.low)).clamp(0.0, 1.0)
    }
}

/// The scale-invariant score of a single realized quantile: `v`, the CRPS
/// against the uniform reference forecast, and its affine transform `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformedScore {
    pub v: f64,
    pub crps: f64,
    pub z: f64,
}

impl TransformedScore {
    pub fn from_quantile(v: f64) -> Result<Self, ScoreError> {
        Ok(TransformedScore { v, crps: crps_scale_invariant(v)?, z: z_transform(v)? })
    }
}

/// Moments of the scale-invariant CRPS under the uniformity null.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullMoments {
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
}

impl NullMoments {
    pub const fn reference() -> Self {
        NullMoments {
            mean: 1.0 / 6.0,
            second_moment: 1.0 / 30.0,
            variance: 1.0 / 180.0,
        }
    }
}

fn check_finite(x: f64) -> Result<f64, ScoreError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(ScoreError::NonFinite(x))
    }
}

/// Probability interval score of a `(1 − alpha)` uncertainty interval:
/// interval width plus a miss penalty of slope `2/alpha`.
pub fn pis(interval: Interval, alpha: f64, y: f64) -> Result<f64, ScoreError> {
    check_finite(y)?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(ScoreError::OutOfDomain { value: alpha, domain: "(0, 1]" });
    }
    let below = (interval.lower - y).max(0.0);
    let above = (y - interval.upper).max(0.0);
    Ok(interval.width() + (2.0 / alpha) * (below + above))
}

/// Expected PIS for a realization uniform on `[0, 1]`:
/// `U − L + (1/alpha)·(L² + (U−1)²)`.
pub fn expected_pis_uniform(interval: Interval, alpha: f64) -> Result<f64, ScoreError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(ScoreError::OutOfDomain { value: alpha, domain: "(0, 1]" });
    }
    if interval.lower < 0.0 || interval.upper > 1.0 {
        return Err(ScoreError::InvalidInterval {
            lower: interval.lower,
            upper: interval.upper,
        });
    }
    let l = interval.lower;
    let u = interval.upper;
    Ok(u - l + (l * l + (u - 1.0) * (u - 1.0)) / alpha)
}

/// CRPS of a uniform forecast against realization `y`, in closed form:
///
/// - `y < L`:        `L − y + (H−L)/3`
/// - `L ≤ y ≤ H`:    `[(y−L)³ − (y−H)³] / (3(H−L)²)`
/// - `y > H`:        `y − H + (H−L)/3`
///
/// Boundary realizations resolve to the middle branch; the branches agree
/// there, which the tests pin down.
pub fn crps_uniform(f: UniformForecast, y: f64) -> Result<f64, ScoreError> {
    check_finite(y)?;
    let (l, h) = (f.low, f.high);
    let w = h - l;
    let value = if y < l {
        l - y + w / 3.0
    } else if y > h {
        y - h + w / 3.0
    } else {
        ((y - l).powi(3) - (y - h).powi(3)) / (3.0 * w * w)
    };
    Ok(value)
}

/// Default absolute tolerance of the CRPS quadrature oracle.
pub const CRPS_QUADRATURE_TOL: f64 = 1e-10;

/// Quadrature oracle for the CRPS integral `∫ [F(x) − 1{x≥y}]² dx`.
///
/// `support` must bracket where `cdf` rises from 0 to 1; the integration
/// range is extended to cover `y` when the realization falls outside it.
/// This is the single source of truth the closed forms are verified against.
pub fn crps_quadrature<F: Fn(f64) -> f64>(
    cdf: F,
    y: f64,
    support: Interval,
) -> Result<f64, ScoreError> {
    crps_quadrature_with_tol(cdf, y, support, CRPS_QUADRATURE_TOL)
}

pub fn crps_quadrature_with_tol<F: Fn(f64) -> f64>(
    cdf: F,
    y: f64,
    support: Interval,
    tol: f64,
) -> Result<f64, ScoreError> {
    check_finite(y)?;
    let a = support.lower.min(y);
    let b = support.upper.max(y);
    // Split at the indicator jump and the support edges so each piece is
    // smooth; the integrand is discontinuous at y.
    let mut cuts = vec![a, y, support.lower, support.upper, b];
    cuts.retain(|c| *c >= a && *c <= b);
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.dedup();
    let pieces = cuts.len().saturating_sub(1).max(1);
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (p, q) = (w[0], w[1]);
        if p == q {
            continue;
        }
        let indicator = if 0.5 * (p + q) >= y { 1.0 } else { 0.0 };
        total += quadrature::adaptive(
            |x| {
                let d = cdf(x) - indicator;
                d * d
            },
            p,
            q,
            tol / pieces as f64,
        )?;
    }
    Ok(total)
}

/// Expected CRPS of `X ~ U[0, H]` against `Y ~ U[0, 1]`:
/// `H²/6 + H(1−H)/3 + (1−H)²/2`. Minimized (value 1/6) only at `H = 1`.
pub fn expected_crps_u0h(h: f64) -> Result<f64, ScoreError> {
    if !(h > 0.0 && h <= 1.0) {
        return Err(ScoreError::OutOfDomain { value: h, domain: "(0, 1]" });
    }
    Ok(h * h / 6.0 + h * (1.0 - h) / 3.0 + (1.0 - h) * (1.0 - h) / 2.0)
}

/// Expected CRPS of the symmetric forecast `X ~ U[1−H, H]` against
/// `Y ~ U[0, 1]`, `H ∈ [0.5, 1)`:
/// `(H−L)²/6 + 2(H−L)(1−H)/3 + (1−H)²` with `L = 1−H`.
///
/// Coincides with [`expected_crps_u0h`] at every `H`, which the tests assert.
pub fn expected_crps_symmetric(h: f64) -> Result<f64, ScoreError> {
    if !(0.5..1.0).contains(&h) {
        return Err(ScoreError::OutOfDomain { value: h, domain: "[0.5, 1)" });
    }
    let w = h - (1.0 - h);
    let tail = 1.0 - h;
    Ok(w * w / 6.0 + 2.0 * w * tail / 3.0 + tail * tail)
}

/// Scale-invariant CRPS of realized quantile `v` against the uniform
/// reference forecast: `v³/3 − (v−1)³/3`, with range `[1/12, 1/3]`.
pub fn crps_scale_invariant(v: f64) -> Result<f64, ScoreError> {
    if !(0.0..=1.0).contains(&v) {
        return Err(ScoreError::OutOfDomain { value: v, domain: "[0, 1]" });
    }
    Ok((v.powi(3) - (v - 1.0).powi(3)) / 3.0)
}

/// The transform `Z = 4·CRPS − 1/3`, algebraically `(1 − 2v)²`, with range
/// `[0, 1]` and the symmetry `z(v) = z(1 − v)`.
pub fn z_transform(v: f64) -> Result<f64, ScoreError> {
    if !(0.0..=1.0).contains(&v) {
        return Err(ScoreError::OutOfDomain { value: v, domain: "[0, 1]" });
    }
    let w = 1.0 - 2.0 * v;
    Ok(w * w)
}

const CRPS_NULL_LOW: f64 = 1.0 / 12.0;
const CRPS_NULL_HIGH: f64 = 1.0 / 3.0;

/// CDF of the scale-invariant CRPS under the uniformity null:
/// `P(CRPS ≤ x) = √(4x − 1/3)`, clamped to 0 below 1/12 and 1 above 1/3.
pub fn null_cdf(x: f64) -> f64 {
    if x <= CRPS_NULL_LOW {
        return if x.is_nan() { f64::NAN } else { 0.0 };
    }
    if x >= CRPS_NULL_HIGH {
        return 1.0;
    }
    (4.0 * x - 1.0 / 3.0).sqrt()
}

/// Density of the scale-invariant CRPS under the null:
/// `2 / √(4x − 1/3)` on `(1/12, 1/3]`, zero outside the support.
///
/// The density diverges as `x ↓ 1/12`; evaluating there is an error rather
/// than a large finite value.
pub fn null_pdf(x: f64) -> Result<f64, ScoreError> {
    check_finite(x)?;
    if x < CRPS_NULL_LOW || x > CRPS_NULL_HIGH {
        return Ok(0.0);
    }
    let radicand = 4.0 * x - 1.0 / 3.0;
    if radicand <= 0.0 {
        return Err(ScoreError::DensitySingularity);
    }
    Ok(2.0 / radicand.sqrt())
}

/// Quadratic score for a binary event: `2r − r² − (1−r)²` when the event
/// occurs, with `r` and `1−r` interchanged otherwise. Positively sensed on
/// `[−1, 1]`.
pub fn quadratic_score(r: f64, event: bool) -> Result<f64, ScoreError> {
    if !(0.0..=1.0).contains(&r) {
        return Err(ScoreError::OutOfDomain { value: r, domain: "[0, 1]" });
    }
    let p = if event { r } else { 1.0 - r };
    Ok(2.0 * p - p * p - (1.0 - p) * (1.0 - p))
}

/// A probability bin of binary-event forecasts: the assessed probability,
/// how many forecasts were placed in the bin, and how many saw the event.
#[derive(Debug, Clone, Copy)]
pub struct ForecastBin {
    pub probability: f64,
    pub assessed: u64,
    pub occurred: u64,
}

/// Average quadratic score over a binned forecast table.
pub fn quadratic_score_binned_average(bins: &[ForecastBin]) -> Result<f64, ScoreError> {
    let total: u64 = bins.iter().map(|b| b.assessed).sum();
    if total == 0 {
        return Err(ScoreError::InvalidTable("no forecasts in any bin".into()));
    }
    let mut sum = 0.0;
    for bin in bins {
        if bin.occurred > bin.assessed {
            return Err(ScoreError::InvalidTable(format!(
                "bin {} has more occurrences ({}) than forecasts ({})",
                bin.probability, bin.occurred, bin.assessed
            )));
        }
        let hit = quadratic_score(bin.probability, true)?;
        let miss = quadratic_score(bin.probability, false)?;
        sum += bin.occurred as f64 * hit + (bin.assessed - bin.occurred) as f64 * miss;
    }
    Ok(sum / total as f64)
}
