//! Scoring of expert probabilistic forecasts against known realizations.
//!
//! The library centers on a scale-invariant version of the Continuous Ranked
//! Probability Score (CRPS): realizations are pushed through each expert's
//! assessed CDF (probability integral transform), scored against a uniform
//! reference forecast, and aggregated with the exact distribution of a sum of
//! squared uniform random variables. That exact distribution — evaluated
//! through a Fresnel-integral Fourier series — turns the aggregate score into
//! a statistical-accuracy (SA) p-value without any asymptotic approximation.
//!
//! Alongside the CRPS-based test the crate provides the Classical Model's
//! chi-square statistical accuracy, the probability interval score, MAPE and
//! location-bias diagnostics, study ingestion/report serialization, and a
//! synthetic study generator used to validate both tests end to end.
//!
//! Modules map onto the stages of the computation:
//!
//! - [`scores`]: closed-form scoring rules and the null distribution of the
//!   scale-invariant CRPS for a single variable.
//! - [`fresnel`]: Fresnel integrals `C(x) = ∫₀ˣ cos(t²) dt`, `S(x) = ∫₀ˣ sin(t²) dt`.
//! - [`sqsum`]: exact CDF of `U₁² + … + Uₙ²` plus two independent oracles.
//! - [`expert_cdf`]: minimally-informative piecewise-linear CDFs from assessed
//!   quantiles, and the probability integral transform.
//! - [`classical_model`]: inter-quantile hit counts, Shannon relative
//!   information, chi-square survival function.
//! - [`pipeline`]: per-expert scorecards and per-study reports.
//! - [`study_io`]: JSON/CSV ingestion and deterministic report files.
//! - [`synthetic`]: seeded studies with controlled calibration defects.
//! - [`acceptance`]: the end-to-end validation suite backing `selftest`.

pub mod acceptance;
pub mod classical_model;
mod dd;
pub mod expert_cdf;
pub mod fresnel;
pub mod pipeline;
pub mod quadrature;
pub mod scores;
pub mod sqsum;
pub mod stats;
pub mod study_io;
pub mod synthetic;

pub use expert_cdf::{IntrinsicRange, PiecewiseLinearCdf, QuantileAssessment};
pub use pipeline::{ExpertScoreCard, SaConvention, ScoreReport, ScoringConfig};
pub use study_io::StudyRecord;

pub use scores::{Interval, UniformForecast};
pub use sqsum::SqSumDistribution;

