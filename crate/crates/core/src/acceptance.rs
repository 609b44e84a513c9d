//! End-to-end validation suite.
//!
//! Every criterion pins its tolerances in code and reports one pass/fail
//! line; the `acceptance` integration test asserts them all and the CLI
//! exposes the same suite as `selftest`. Monte Carlo criteria run with fixed
//! seeds so the suite is deterministic.

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classical_model::{self, InterQuantileSample};
use crate::pipeline::{self, SaConvention, ScoringConfig};
use crate::quadrature;
use crate::scores::{self, ForecastBin, Interval, UniformForecast};
use crate::sqsum::{self, EcdfOracle, SqSumDistribution};
use crate::stats;
use crate::study_io::{self, IngestionDiagnostics, StudyFormat};
use crate::synthetic::{self, ExpertProfile};

/// Result of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionOutcome {
    /// One-line rendering used by the CLI and the test harness.
    pub fn summary_line(&self) -> String {
        format!(
            "[{:>2}/11] {}  {} ({} ms) — {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_millis(),
            self.detail
        )
    }
}

/// Run the full suite in criterion order.
pub fn run_all() -> Vec<CriterionOutcome> {
    (1..=11).map(run_criterion).collect()
}

/// Run a single criterion by number (1–11).
pub fn run_criterion(id: u32) -> CriterionOutcome {
    let (name, budget, body): (&'static str, Option<Duration>, Body) = match id {
        1 => ("pis-expectations", Some(Duration::from_secs(1)), c1_pis),
        2 => ("expected-crps", Some(Duration::from_secs(10)), c2_expected_crps),
        3 => ("scale-invariant-crps", Some(Duration::from_secs(30)), c3_scale_invariant),
        4 => ("sqsum-exact-law", Some(Duration::from_secs(120)), c4_exact_law),
        5 => ("quadratic-score-table", None, c5_quadratic_table),
        6 => ("cm-test", None, c6_cm_test),
        7 => ("h0-uniformity", None, c7_h0_uniformity),
        8 => ("location-bias-insensitivity", None, c8_bias_insensitivity),
        9 => ("scale-invariance", None, c9_scale_invariance),
        10 => ("synthetic-substitution", None, c10_synthetic),
        11 => ("golden-fixture", None, c11_golden_fixture),
        other => panic!("criterion {other} does not exist"),
    };
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok((p, d)) => (p, d),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(limit) = budget {
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!(
                "; runtime {:?} exceeded budget {:?}",
                elapsed, limit
            ));
        }
    }
    CriterionOutcome { id, name, passed, detail, elapsed }
}

type Body = fn() -> Result<(bool, String), Box<dyn std::error::Error>>;

struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks { failures: Vec::new(), notes: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn close(&mut self, got: f64, want: f64, tol: f64, label: &str) {
        if !((got - want).abs() <= tol) {
            self.failures.push(format!("{label}: got {got}, want {want} ± {tol:e}"));
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn finish(self, ok_detail: &str) -> Result<(bool, String), Box<dyn std::error::Error>> {
        if self.failures.is_empty() {
            let mut d = ok_detail.to_string();
            if !self.notes.is_empty() {
                d.push_str("; ");
                d.push_str(&self.notes.join("; "));
            }
            Ok((true, d))
        } else {
            Ok((false, self.failures.join(" | ")))
        }
    }
}

// criterion 1: closed-form PIS expectations and their quadrature check
fn c1_pis() -> Result<(bool, String), Box<dyn std::error::Error>> {
    let mut c = Checks::new();
    let cases = [
        (0.05, 0.95, 0.1, 0.95),
        (0.10, 0.90, 0.2, 0.90),
        (0.49, 0.51, 0.98, 0.51),
        (0.50, 0.50, 0.6, 0.5 / 0.6),
    ];
    for (l, u, alpha, want) in cases {
        let interval = Interval::new(l, u)?;
        let closed = scores::expected_pis_uniform(interval, alpha)?;
        c.close(closed, want, 1e-9, &format!("expected PIS [{l},{u}] alpha {alpha}"));
        let mut quad = 0.0;
        for (a, b) in [(0.0, l), (l, u), (u, 1.0)] {
            if a < b {
                quad +=
                    quadrature::adaptive(|y| scores::pis(interval, alpha, y).unwrap(), a, b, 1e-11)?;
            }
        }
        c.close(closed, quad, 1e-8, &format!("PIS quadrature [{l},{u}] alpha {alpha}"));
    }
    c.finish("four closed forms at 1e-9 and quadrature agreement at 1e-8")
}

// criterion 2: expected CRPS closed forms, their coincidence, and the
// double-integral oracle
fn c2_expected_crps() -> Result<(bool, String), Box<dyn std::error::Error>> {
    let mut c = Checks::new();
    let e07 = scores::expected_crps_u0h(0.7)?;
    let s07 = scores::expected_crps_symmetric(0.7)?;
    // the published value 0.1966 is the exact 0.196666… truncated (not
    // rounded) to four decimals, so compare at printed precision
    c.expect((e07 * 1e4).floor() / 1e4 == 0.1966, || {
        format!("E[CRPS] for U[0, 0.7] = {e07} does not print as 0.1966")
    });
    c.close(e07, 0.1966, 1e-4, "E[CRPS] for U[0, 0.7] vs printed 0.1966");
    c.close(e07, s07, 1e-12, "U[0, 0.7] vs U[0.3, 0.7] coincidence");
    c.close(scores::expected_crps_u0h(1.0)?, 1.0 / 6.0, 1e-12, "E[CRPS] at H = 1");
    c.close(scores::expected_crps_u0h(0.5)?, 0.25, 1e-12, "E[CRPS] at H = 0.5");

    // double-integral oracle: outer integral over the uniform realization of
    // the quadrature-evaluated CRPS
    let double_quad = |low: f64, high: f64| -> Result<f64, Box<dyn std::error::Error>> {
        let f = UniformForecast::new(low, high)?;
        let support = Interval::new(low, high)?;
        let mut total = 0.0;
        for (a, b) in [(0.0, low), (low, high), (high, 1.0)] {
            if a < b {
                total += quadrature::adaptive(
                    |y| {
                        scores::crps_quadrature_with_tol(|x| f.cdf(x), y, support, 1e-10).unwrap()
                    },
                    a,
                    b,
                    2e-8,
                )?;
            }
        }
        Ok(total)
    };
    c.close(double_quad(0.0, 0.7)?, e07, 1e-6, "2-D quadrature, U[0, 0.7]");
    c.close(double_quad(0.3, 0.7)?, s07, 1e-6, "2-D quadrature, U[0.3, 0.7]");
    c.close(double_quad(0.0, 1.0)?, 1.0 / 6.0, 1e-6, "2-D quadrature, U[0, 1]");
    c.close(double_quad(0.0, 0.5)?, 0.25, 1e-6, "2-D quadrature, U[0, 0.5]");
    c.finish("closed forms, the U[0,H]/U[1−H,H] coincidence, and 2-D quadrature at 1e-6")
}

// criterion 3: range, moments, and null CDF of the scale-invariant score
fn c3_scale_invariant() -> Result<(bool, String), Box<dyn std::error::Error>> {
    let mut c = Checks::new();
    c.close(scores::crps_scale_invariant(0.5)?, 1.0 / 12.0, 1e-15, "minimum at v = 0.5");
    c.close(scores::crps_scale_invariant(0.0)?, 1.0 / 3.0, 1e-15, "maximum at v = 0");
    c.close(scores::crps_scale_invariant(1.0)?, 1.0 / 3.0, 1e-15, "maximum at v = 1");

    let n = 1_000_000usize;
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        let v: f64 = rng.random();
        samples.push(scores::crps_scale_invariant(v)?);
    }
    let nf = n as f64;
    let mean = samples.iter().sum::<f64>() / nf;
    let m2 = samples.iter().map(|x| x * x).sum::<f64>() / nf;
    let var = m2 - mean * mean;
    let sd = var.sqrt();
    let se_mean = sd / nf.sqrt();
    let sd_sq = {
        let mm = samples.iter().map(|x| (x * x - m2).powi(2)).sum::<f64>() / nf;
        mm.sqrt()
    };
    let se_m2 = sd_sq / nf.sqrt();
    let sd_var = {
        let mm = samples.iter().map(|x| ((x - mean).powi(2) - var).powi(2)).sum::<f64>() / nf;
        mm.sqrt()
    };
    let se_var = sd_var / nf.sqrt();
    c.close(mean, 1.0 / 6.0, 3.0 * se_mean, "sample mean vs 1/6 (3 SE)");
    c.close(m2, 1.0 / 30.0, 3.0 * se_m2, "sample second moment vs 1/30 (3 SE)");
    c.close(var, 1.0 / 180.0, 3.0 * se_var, "sample variance vs 1/180 (3 SE)");

    let ks = stats::ks_statistic(&samples, scores::null_cdf)?;
    c.expect(ks < 0.002, || format!("KS distance of samples vs null CDF: {ks} ≥ 0.002"));
    c.note(format!("KS(samples, √(4x−1/3)) = {ks:.5}"));
    c.finish("range attained; 1e6-draw moments within 3 SE; null CDF KS < 0.002")
}

// criterion 4: the exact convolution law against both oracles
fn c4_exact_law() -> Result<(bool, String), Box<dyn std::error::Error>> {
    let mut c = Checks::new();

    // n = 1 short-circuit: √s to 1e-10
    let d1 = SqSumDistribution::new(1)?;
    for i in 1..50 {
        let s = i as f64 / 50.0;
        c.close(d1.cdf(s), s.sqrt(), 1e-10, &format!("F₁({s})"));
    }

    // n = 2 quarter disk for s ≤ 1 at 1e-6
    let d2 = SqSumDistribution::new(2)?;
    for i in 1..=20 {
        let s = i as f64 / 20.0;
        c.close(
            d2.cdf(s),
            std::f64::consts::PI * s / 4.0,
            1e-6,
            &format!("quarter-disk F₂({s})"),
        );
    }

    let tables = sqsum::convolution_tables(10, 20_000)?;
    for n in [2usize, 5, 10] {
        let dist = SqSumDistribution::new(n)?;
        let ecdf = EcdfOracle::new(n, 100_000, 9000 + n as u64)?;
        let band = sqsum::dkw_epsilon(100_000, 0.01);
        let mut worst_mc = 0.0f64;
        for i in 1..50 {
            let s = n as f64 * i as f64 / 50.0;
            worst_mc = worst_mc.max((dist.cdf(s) - ecdf.eval(s)).abs());
        }
        c.expect(worst_mc < band, || {
            format!("n = {n}: Monte Carlo gap {worst_mc:.5} outside DKW band {band:.5}")
        });

        let table = &tables[n - 1];
        let mut worst_conv = 0.0f64;
        for i in 0..=50 {
            let s = n as f64 * (0.05 + 0.90 * i as f64 / 50.0);
            worst_conv = worst_conv.max((dist.cdf(s) - table.eval(s)).abs());
        }
        c.expect(worst_conv < 1e-4, || {
            format!("n = {n}: convolution-oracle gap {worst_conv:.2e} ≥ 1e-4")
        });
        c.note(format!("n = {n}: MC gap {worst_mc:.4}/{band:.4}, conv gap {worst_conv:.1e}"));
    }
    c.finish("series within DKW(99%) of 1e5-draw ECDFs and within 1e-4 of self-convolution")
}

// criterion 5: the didactic rain table
fn c5_quadratic_table() -> Result<(bool, String), Box<dyn std::error::Error>> {
    let mut c = Checks::new();
    let probs: Vec<f64> = (0..10).map(|i| 0.05 + 0.1 * i as f64).collect();
    let perfectly_calibrated: Vec<ForecastBin> = probs
        .iter()
        .map(|&p| ForecastBin {
            probability: p,
            assessed: 100,
            occurred: (p * 100.0).round() as u64,
        })
        .collect();
    let sharp_but_inaccurate: Vec<ForecastBin> = probs
        .iter()
        .map(|&p| ForecastBin {
            probability: p,
            assessed: 100,
            occurred: if p > 0.5 { 100 } else { 0 },
        })
        .collect();
    let avg1 = scores::quadratic_score_binned_average(&perfectly_calibrated)?;
    let avg2 = scores::quadratic_score_binned_average(&sharp_but_inaccurate)?;
    c.close(avg1, 0.67, 0.005 + 1e-12, "calibrated expert average");
    c.close(avg2, 0.84, 0.005 + 1e-12, "sharp expert average");
    c.expect(avg2 > avg1, || "sharp expert must outscore the calibrated one".into());
    c.finish(&format!("averages {avg1:.3} and {avg2:.3} reproduce 0.67/0.84 at ±0.005"))
}

// criterion 6: Classical Model hand compositions and the chi-square oracle
fn c6_cm_test() -> Result<(bool, String), Box<dyn std::error::Error>> {
    let mut c = Checks::new();
    let perfect = InterQuantileSample::new([1, 9, 9, 1])?;
    c.close(classical_model::cm_sa(&perfect)?, 1.0, 0.0, "SA at s = p");

    let inner = InterQuantileSample::new([0, 5, 5, 0])?;
    c.close(classical_model::cm_sa(&inner)?, 0.5506, 1e-3, "counts (0,5,5,0)");

    let extreme = InterQuantileSample::new([10, 0, 0, 0])?;
    c.expect(classical_model::cm_sa(&extreme)? < 1e-12, || {
        format!("extreme overconfidence SA = {}", classical_model::cm_sa(&extreme).unwrap())
    });

    let density = |x: f64| x.sqrt() * (-x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut x = 0.1;
    let mut worst = 0.0f64;
    while x <= 50.0 {
        let tail = quadrature::adaptive(density, x, x + 300.0, 1e-12)?;
        worst = worst.max((classical_model::chi2_sf(x, 3)? - tail).abs());
        x += 1.66;
    }
    c.expect(worst < 1e-8, || format!("chi2 survival vs quadrature: worst gap {worst:.2e}"));
    c.finish(&format!("hand compositions at 1e-3 and chi-square oracle gap {worst:.1e}"))
}

// criterion 7: uniformity of both SA scores under the null
fn c7_h0_uniformity() -> Result<(bool, String), Box<dyn std::error::Error>> {
    let mut c = Checks::new();
    let config = ScoringConfig {
        include_realization_in_range: false,
        overshoot: synthetic::SYNTHETIC_OVERSHOOT,
        ..ScoringConfig::default()
    };
    let replications = 1000usize;
    let mut crps_col = Vec::with_capacity(replications);
    let mut cm_col = Vec::with_capacity(replications);
    for seed in 0..replications as u64 {
        let study = synthetic::generate_study(1, 10, &[ExpertProfile::calibrated()], seed)?;
        let report = pipeline::score_study(&study, &config, IngestionDiagnostics::default())?;
        crps_col.push(report.experts[0].crps_sa);
        cm_col.push(report.experts[0].cm_sa);
    }
    let uniform = |x: f64| x.clamp(0.0, 1.0);
    let crps_ks = stats::ks_statistic(&crps_col, uniform)?;
    let cm_ks = stats::ks_statistic(&cm_col, uniform)?;
    let critical = stats::ks_critical_value(replications, 0.01);
    c.expect(crps_ks < critical, || {
        format!("CRPS SA uniformity: KS {crps_ks:.4} ≥ 1% critical value {critical:.4}")
    });
    // The chi-square SA is asymptotic and visibly discrete at n = 10; its
    // deviation is documented rather than bounded.
    c.note(format!(
        "CRPS SA KS = {crps_ks:.4} (1% critical {critical:.4}); CM SA KS = {cm_ks:.3} — \
         the documented discreteness of the asymptotic chi-square at n = 10"
    ));
    c.finish("CRPS SA uniform at the 1% level over 1000 calibrated replications")
}

// criterion 8: location-bias insensitivity, bitwise
fn c8_bias_insensitivity() -> Result<(bool, String), Box<dyn std::error::Error>> {
    let mut c = Checks::new();
    // pit vectors whose complements are exactly representable
    let vectors: Vec<Vec<f64>> = vec![
        vec![0.25, 0.5, 0.75],
        vec![0.4, 0.4, 0.4, 0.4],
        vec![0.125, 0.375, 0.625, 0.9375],
        (1..=16).map(|i| i as f64 / 17.0 * 0.5 + 0.25).collect(),
    ];
    for pits in &vectors {
        let mirrored: Vec<f64> = pits.iter().map(|v| 1.0 - v).collect();
        for conv in [SaConvention::Survival, SaConvention::Cdf, SaConvention::TwoSided] {
            let a = pipeline::crps_sa(pits, conv)?;
            let b = pipeline::crps_sa(&mirrored, conv)?;
            c.expect(a.to_bits() == b.to_bits(), || {
                format!("mirror changed SA for {pits:?} under {conv:?}: {a} vs {b}")
            });
        }
    }
    // 2n observations of 0.4 score the same as n of 0.4 plus n of 0.6
    for n in [1usize, 5, 10] {
        let doubled = vec![0.4; 2 * n];
        let mixed: Vec<f64> = (0..2 * n).map(|i| if i < n { 0.4 } else { 0.6 }).collect();
        let a = pipeline::crps_sa(&doubled, SaConvention::Survival)?;
        let b = pipeline::crps_sa(&mixed, SaConvention::Survival)?;
        c.expect(a.to_bits() == b.to_bits(), || {
            format!("2n×0.4 vs n×0.4 + n×0.6 differ at n = {n}: {a} vs {b}")
        });
    }
    c.finish("mirrored pit vectors and the 0.4/0.6 doubling example score bitwise-identically")
}

// criterion 9: joint unit rescaling changes nothing
fn c9_scale_invariance() -> Result<(bool, String), Box<dyn std::error::Error>> {
    let mut c = Checks::new();
    let (study, diag) = study_io::load_study_str(TOY_STUDY_JSON, StudyFormat::Json)?;
    let mut rescaled = study.clone();
    for v in &mut rescaled.variables {
        v.realization *= 100.0;
        for q in v.assessments.values_mut() {
            let scaled: Vec<f64> = q.values().iter().map(|x| x * 100.0).collect();
            *q = crate::expert_cdf::QuantileAssessment::new(q.levels().to_vec(), scaled)?;
        }
    }
    let config = ScoringConfig::default();
    let base = pipeline::score_study(&study, &config, diag.clone())?;
    let scaled = pipeline::score_study(&rescaled, &config, diag)?;
    for (a, b) in base.experts.iter().zip(&scaled.experts) {
        for (pa, pb) in a.pit_values.iter().zip(&b.pit_values) {
            c.expect((pa - pb).abs() <= 1e-12, || {
                format!("{}: pit moved {pa} → {pb}", a.expert_id)
            });
        }
        c.expect((a.crps_sa - b.crps_sa).abs() <= 1e-12, || {
            format!("{}: CRPS SA moved {} → {}", a.expert_id, a.crps_sa, b.crps_sa)
        });
        c.expect((a.cm_sa - b.cm_sa).abs() <= 1e-12, || {
            format!("{}: CM SA moved {} → {}", a.expert_id, a.cm_sa, b.cm_sa)
        });
    }
    c.finish("×100 rescaling moved no pit and no SA score by more than 1e-12")
}

// criterion 10: what the unavailable dataset is substituted with
fn c10_synthetic() -> Result<(bool, String), Box<dyn std::error::Error>> {
    let mut c = Checks::new();
    let config = ScoringConfig {
        include_realization_in_range: false,
        overshoot: synthetic::SYNTHETIC_OVERSHOOT,
        ..ScoringConfig::default()
    };
    // overconfidence monotonicity: mean SA decreasing along the grid
    let grid = [1.0, 0.8, 0.6, 0.4, 0.2];
    let seeds = 500u64;
    let mut mean_crps = Vec::new();
    let mut mean_cm = Vec::new();
    for &concentration in &grid {
        let profile = if concentration == 1.0 {
            ExpertProfile::calibrated()
        } else {
            ExpertProfile::overconfident(concentration)
        };
        let mut crps_acc = 0.0;
        let mut cm_acc = 0.0;
        for seed in 0..seeds {
            let study = synthetic::generate_study(1, 10, &[profile], 31_000 + seed)?;
            let report = pipeline::score_study(&study, &config, IngestionDiagnostics::default())?;
            crps_acc += report.experts[0].crps_sa;
            cm_acc += report.experts[0].cm_sa;
        }
        mean_crps.push(crps_acc / seeds as f64);
        mean_cm.push(cm_acc / seeds as f64);
    }
    for w in mean_crps.windows(2) {
        c.expect(w[1] < w[0], || {
            format!("mean CRPS SA not decreasing along the concentration grid: {mean_crps:?}")
        });
    }
    for w in mean_cm.windows(2) {
        c.expect(w[1] < w[0], || {
            format!("mean CM SA not decreasing along the concentration grid: {mean_cm:?}")
        });
    }
    c.note(format!(
        "mean CRPS SA over grid {grid:?}: {:?}",
        mean_crps.iter().map(|x| (x * 1000.0).round() / 1000.0).collect::<Vec<_>>()
    ));

    // the documented CSV format runs end to end and emits the report columns
    let profiles = [
        ExpertProfile::calibrated(),
        ExpertProfile::overconfident(0.5),
        ExpertProfile::underconfident(1.5),
        ExpertProfile::location_biased(0.8),
    ];
    let study = synthetic::generate_study(8, 12, &profiles, 77)?;
    let csv = study_io::write_study(&study, StudyFormat::Csv);
    let (loaded, diag) = study_io::load_study_str(&csv, StudyFormat::Csv)?;
    let report = pipeline::score_study(&loaded, &ScoringConfig::default(), diag)?;
    c.expect(report.experts.len() == 8, || {
        format!("CSV round trip lost experts: {}", report.experts.len())
    });
    c.expect(report.correlations.crps_sa_vs_cm_sa.is_some(), || {
        "study-level correlations missing".into()
    });
    c.expect(report.sa_by_rank.len() == 8, || "rank series missing".into());
    c.expect(report.pit_histogram.iter().sum::<u32>() == 96, || {
        "pit histogram does not cover all assessments".into()
    });
    let floored = report.floored_crps_sa + report.floored_cm_sa;
    c.note(format!(
        "end-to-end CSV study: log-geomean CRPS SA {:.3}, CM SA {:.3}, floored {floored}",
        report.log_geomean_crps_sa, report.log_geomean_cm_sa
    ));
    c.finish("overconfidence grid monotone over 500 seeds; documented CSV runs end to end")
}

// criterion 11: the committed hand-computed fixture reproduces byte-identically
fn c11_golden_fixture() -> Result<(bool, String), Box<dyn std::error::Error>> {
    let mut c = Checks::new();
    let (study, diag) = study_io::load_study_str(TOY_STUDY_JSON, StudyFormat::Json)?;
    let report = pipeline::score_study(&study, &ScoringConfig::default(), diag)?;

    // hand-computed pit values and z-sums (exact fractions)
    let alice = &report.experts[0];
    let bob = &report.experts[1];
    c.expect(alice.expert_id == "alice" && bob.expert_id == "bob", || {
        "expert order must be sorted by id".into()
    });
    for (got, want) in alice.pit_values.iter().zip([0.725, 0.65, 7.0 / 340.0]) {
        c.close(*got, want, 1e-12, "alice pit");
    }
    for (got, want) in bob.pit_values.iter().zip([0.1625, 0.5, 7.0 / 440.0]) {
        c.close(*got, want, 1e-12, "bob pit");
    }
    let alice_zsum = 0.2025 + 0.09 + (326.0f64 / 340.0).powi(2);
    let bob_zsum = 0.455625 + 0.0 + (426.0f64 / 440.0).powi(2);
    c.close(alice.z_sum, alice_zsum, 1e-12, "alice z-sum");
    c.close(bob.z_sum, bob_zsum, 1e-12, "bob z-sum");
    c.close(alice.location_bias, 50.0 / 3.0, 1e-12, "alice location bias");
    c.close(bob.location_bias, 50.0, 0.0, "bob location bias");
    c.close(alice.mape.unwrap_or(f64::NAN), 2.3 / 3.0, 1e-12, "alice MAPE");
    c.close(bob.mape.unwrap_or(f64::NAN), 1.2, 1e-12, "bob MAPE");
    c.expect(!alice.mape_unstable && !bob.mape_unstable, || "MAPE wrongly unstable".into());
    c.expect(
        alice.inter_quantile_counts == [1, 0, 2, 0] && bob.inter_quantile_counts == [1, 2, 0, 0],
        || "inter-quantile counts differ from hand binning".into(),
    );
    // both count vectors carry the same relative information by symmetry
    c.close(alice.cm_sa, bob.cm_sa, 1e-14, "alice vs bob CM SA symmetry");
    // chi-square tail recomputed from the hand statistic 6·I
    let info = (1.0 / 3.0) * (20.0f64 / 3.0).ln() + (2.0 / 3.0) * (40.0f64 / 27.0).ln();
    let density = |x: f64| x.sqrt() * (-x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let hand_cm = quadrature::adaptive(density, 6.0 * info, 6.0 * info + 300.0, 1e-12)?;
    c.close(alice.cm_sa, hand_cm, 1e-8, "CM SA vs quadrature of the hand statistic");
    // survival SA against the independent convolution oracle
    let table = sqsum::convolution_oracle(3, 6000)?;
    c.close(alice.crps_sa, 1.0 - table.eval(alice_zsum), 1e-4, "alice CRPS SA vs oracle");
    c.close(bob.crps_sa, 1.0 - table.eval(bob_zsum), 1e-4, "bob CRPS SA vs oracle");

    // byte-identical against the committed golden files
    let rendered = study_io::report_json(&report);
    c.expect(rendered == GOLDEN_REPORT_JSON, || "report.json bytes differ from golden".into());
    let written_twice = study_io::report_json(&report);
    c.expect(rendered == written_twice, || "report rendering is not deterministic".into());
    c.finish("hand-computed pits, z-sums, biases, MAPEs, both SAs, and golden bytes all match")
}

/// The committed two-expert, three-variable toy study.
pub const TOY_STUDY_JSON: &str = include_str!("../tests/fixtures/toy_study.json");

/// Golden canonical rendering of the toy study's report.
pub const GOLDEN_REPORT_JSON: &str = include_str!("../tests/fixtures/golden/report.json");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_ids_cover_the_suite() {
        let all = run_all();
        assert_eq!(all.len(), 11);
        for (i, outcome) in all.iter().enumerate() {
            assert_eq!(outcome.id as usize, i + 1);
            assert!(!outcome.name.is_empty());
        }
    }
}
