//! Numerical integration used by the validation oracles.
//!
//! Two engines: an adaptive Gauss–Kronrod (7–15) scheme for generic smooth
//! integrands with an absolute-tolerance contract, and a tanh-sinh rule for
//! integrands with integrable endpoint singularities (square-root edges from
//! the squared-uniform density). Both report the achieved error estimate on
//! failure instead of returning an unconverged value.

use std::collections::BinaryHeap;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuadratureError {
    #[error("quadrature did not reach tolerance {requested:e}; achieved error estimate {achieved:e}")]
    NotConverged { requested: f64, achieved: f64 },
    #[error("invalid integration bounds [{a}, {b}]")]
    InvalidBounds { a: f64, b: f64 },
}

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the odd-indexed abscissae.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_20,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_33,
];

/// One Gauss–Kronrod 7–15 evaluation on `[a, b]`.
///
/// Returns the Kronrod estimate and an error estimate based on the
/// Gauss/Kronrod difference.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let flo = f(c - x);
        let fhi = f(c + x);
        kronrod += WGK[j] * (flo + fhi);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (flo + fhi);
        }
    }
    kronrod *= h;
    gauss *= h;
    let err = (kronrod - gauss).abs();
    // QUADPACK-style sharpening of the raw difference.
    let err = if err != 0.0 {
        let scaled = (200.0 * err).powf(1.5);
        err.min(scaled)
    } else {
        err
    };
    (kronrod, err)
}

#[derive(PartialEq)]
struct Segment {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
}

impl Eq for Segment {}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(std::cmp::Ordering::Equal)
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]` to absolute
/// tolerance `tol`.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, QuadratureError> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(QuadratureError::InvalidBounds { a, b });
    }
    if a == b {
        return Ok(0.0);
    }
    const MAX_SEGMENTS: usize = 4000;
    let (v, e) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { err: e, a, b, value: v });
    // segments narrowed to floating-point resolution; their error estimate
    // cannot improve and stays counted against the tolerance
    let mut frozen_val = 0.0;
    let mut frozen_err = 0.0;
    loop {
        // error and value are re-summed from scratch between batches:
        // incremental updates drift through cancellation and can fake
        // convergence to unreachable tolerances
        let total_err = frozen_err + heap.iter().map(|s| s.err).sum::<f64>();
        if total_err <= tol {
            return Ok(frozen_val + heap.iter().map(|s| s.value).sum::<f64>());
        }
        let mut progressed = false;
        for _ in 0..64 {
            if heap.len() + 1 > MAX_SEGMENTS {
                break;
            }
            let Some(worst) = heap.pop() else { break };
            if worst.err == 0.0 {
                heap.push(worst);
                break;
            }
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                frozen_val += worst.value;
                frozen_err += worst.err;
                continue;
            }
            let (v1, e1) = gk15(&f, worst.a, mid);
            let (v2, e2) = gk15(&f, mid, worst.b);
            heap.push(Segment { err: e1, a: worst.a, b: mid, value: v1 });
            heap.push(Segment { err: e2, a: mid, b: worst.b, value: v2 });
            progressed = true;
        }
        if !progressed {
            let achieved = frozen_err + heap.iter().map(|s| s.err).sum::<f64>();
            if achieved <= tol {
                return Ok(frozen_val + heap.iter().map(|s| s.value).sum::<f64>());
            }
            return Err(QuadratureError::NotConverged { requested: tol, achieved });
        }
    }
}

const TS_MAX_LEVEL: usize = 10;

/// Precomputed tanh-sinh nodes: level 0 holds `t = 0`, level 1 the integer
/// `t`, level `l ≥ 2` the odd multiples of `2^{1-l}`, so the union after
/// level `l` is the full grid of spacing `2^{1-l}`.
///
/// Each node stores `(g, w)` where `g = 1 − tanh((π/2)·sinh t)` is the gap to
/// the interval endpoint, computed cancellation-free as `2/(e^{2u} + 1)`.
/// Working with the gap keeps endpoint singularities resolvable to full
/// precision.
fn ts_levels() -> &'static Vec<Vec<(f64, f64)>> {
    use std::sync::OnceLock;
    static NODES: OnceLock<Vec<Vec<(f64, f64)>>> = OnceLock::new();
    NODES.get_or_init(|| {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let node = |t: f64| -> Option<(f64, f64)> {
            let u = half_pi * t.sinh();
            let g = 2.0 / ((2.0 * u).exp() + 1.0);
            let w = half_pi * t.cosh() / u.cosh().powi(2);
            if g < 1e-32 || w < 1e-300 {
                None
            } else {
                Some((g, w))
            }
        };
        let mut levels = Vec::with_capacity(TS_MAX_LEVEL + 1);
        levels.push(vec![node(0.0).expect("t = 0 is a valid node")]);
        for level in 1..=TS_MAX_LEVEL {
            let h = 2f64.powi(1 - level as i32);
            let (start, step) = if level == 1 { (1u64, 1u64) } else { (1, 2) };
            let mut pts = Vec::new();
            let mut k = start;
            while let Some(p) = node(k as f64 * h) {
                pts.push(p);
                k += step;
            }
            levels.push(pts);
        }
        levels
    })
}

/// Tanh-sinh (double-exponential) integration of `f` over `[a, b]`.
///
/// Robust to integrable singularities at either endpoint; never evaluates
/// the integrand at the endpoints themselves.
pub fn tanh_sinh<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, QuadratureError> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(QuadratureError::InvalidBounds { a, b });
    }
    if a == b {
        return Ok(0.0);
    }
    let c = 0.5 * (a + b);
    let m = 0.5 * (b - a);
    let levels = ts_levels();

    let mut sum = levels[0][0].1 * f(c);
    let mut prev = 0.0;
    let mut best_err = f64::INFINITY;
    for (li, pts) in levels.iter().enumerate().skip(1) {
        let h = 2f64.powi(1 - li as i32);
        for &(g, w) in pts {
            let hi = f(b - m * g);
            let lo = f(a + m * g);
            let contrib = w * (hi + lo);
            if contrib.is_finite() {
                sum += contrib;
            }
        }
        let cur = m * h * sum;
        if li >= 3 {
            best_err = (cur - prev).abs();
            if best_err < tol {
                return Ok(cur);
            }
        }
        prev = cur;
    }
    Err(QuadratureError::NotConverged { requested: tol, achieved: best_err })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adaptive_polynomial_is_exact() {
        let v = adaptive(|x| 3.0 * x * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 8.0).abs() < 1e-12);
    }

    #[test]
    fn adaptive_oscillatory() {
        // ∫₀^{2π} sin x dx = 0, ∫₀^π sin = 2
        let v = adaptive(f64::sin, 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn adaptive_reports_achieved_error() {
        // Pseudo-noise stays rough at every refinement level, so the error
        // estimate can never reach the tolerance; the failure must carry the
        // achieved estimate instead of a silent unconverged value.
        let noise = |x: f64| ((x.to_bits() >> 3) % 17) as f64 / 17.0;
        let r = adaptive(noise, 0.0, 1.0, 1e-14);
        match r {
            Err(QuadratureError::NotConverged { achieved, requested }) => {
                assert!(achieved > requested);
            }
            other => panic!("expected NotConverged, got {other:?}"),
        }
    }

    #[test]
    fn adaptive_resolves_step_at_realistic_tolerance() {
        let v = adaptive(|x| if x < 0.3333 { 0.0 } else { 1.0 }, 0.0, 1.0, 1e-9).unwrap();
        assert!((v - 0.6667).abs() < 1e-9, "v = {v}");
    }

    #[test]
    fn tanh_sinh_sqrt_singularity() {
        // ∫₀¹ 1/(2√x) dx = 1 despite the infinite density at 0.
        let v = tanh_sinh(|x| 0.5 / x.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-11, "v = {v}");
    }

    #[test]
    fn tanh_sinh_matches_adaptive_on_smooth() {
        let f = |x: f64| (x * x).cos();
        let a = adaptive(f, 0.0, 1.0, 1e-13).unwrap();
        let t = tanh_sinh(f, 0.0, 1.0, 1e-13).unwrap();
        assert!((a - t).abs() < 1e-12);
    }

    #[test]
    fn rejects_reversed_bounds() {
        assert!(matches!(
            adaptive(|x| x, 1.0, 0.0, 1e-10),
            Err(QuadratureError::InvalidBounds { .. })
        ));
    }
}
