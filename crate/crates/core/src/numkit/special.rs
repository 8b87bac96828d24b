//! Hyperbolic-cardinal helpers.
//!
//! The deformation functions are built almost entirely from sinh(x)/x and
//! (1 - e^{-zx})/z; both need series continuations through their removable
//! singularities to stay within a few ulp.

use crate::{Error, Result};

/// Threshold below which the sinh(x)/x family switches to truncated series.
/// At 1e-4 the first dropped term is ~x^6/5040 ≈ 2e-28, far below one ulp.
const SERIES_CUT: f64 = 1e-4;

/// Cardinal hyperbolic sine sinh(x)/x, with sinhc(0) = 1. Even in x.
pub fn sinhc(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite("sinhc argument"));
    }
    Ok(sinhc_raw(x))
}

#[inline]
pub(crate) fn sinhc_raw(x: f64) -> f64 {
    if x.abs() < SERIES_CUT {
        let x2 = x * x;
        1.0 + x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sinh() / x
    }
}

/// Derivative of sinhc: (cosh x - sinhc x)/x, continued by x/3 + x^3/30 near 0.
/// Odd in x.
pub fn sinhc_prime(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        let x2 = x * x;
        x / 3.0 + x * x2 / 30.0 + x * x2 * x2 / 840.0
    } else {
        (x.cosh() - sinhc_raw(x)) / x
    }
}

/// x·coth(x) = x/tanh(x), continued by 1 at 0. Even in x.
pub fn x_coth(x: f64) -> f64 {
    if x.abs() < SERIES_CUT {
        let x2 = x * x;
        1.0 + x2 / 3.0 - x2 * x2 / 45.0
    } else {
        x / x.tanh()
    }
}

/// cosh(x)/sinhc²(x), the coefficient shape of the deformed centrifugal term.
pub fn cosh_over_sinhc2(x: f64) -> f64 {
    let s = sinhc_raw(x);
    x.cosh() / (s * s)
}

/// (1 - e^{-z·x})/z, continuously extended to x at z = 0.
///
/// Computed through the "exp minus one" primitive so small |z·x| keeps full
/// precision.
pub fn expm1_ratio(z: f64, x: f64) -> Result<f64> {
    if !z.is_finite() || !x.is_finite() {
        return Err(Error::NonFinite("expm1_ratio argument"));
    }
    let u = z * x;
    if u == 0.0 {
        return Ok(x);
    }
    Ok(x * (-f64::exp_m1(-u)) / u)
}

/// (e^{z·x} - 1)/z, continuously extended to x at z = 0.
pub fn expm1_scaled(z: f64, x: f64) -> f64 {
    let u = z * x;
    if u == 0.0 {
        return x;
    }
    x * f64::exp_m1(u) / u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinhc_at_zero_is_one() {
        assert_eq!(sinhc(0.0).unwrap(), 1.0);
    }

    #[test]
    fn sinhc_matches_high_precision_value() {
        // sinh(2)/2 from the direct formula
        let got = sinhc(2.0).unwrap();
        assert!((got - 1.813_430_203_923_509_3).abs() < 1e-15);
    }

    #[test]
    fn sinhc_even_symmetry() {
        for &x in &[1e-6, 1e-4, 0.3, 2.0, 11.0] {
            assert_eq!(sinhc(x).unwrap(), sinhc(-x).unwrap());
        }
    }

    #[test]
    fn sinhc_rejects_non_finite() {
        assert!(sinhc(f64::NAN).is_err());
        assert!(sinhc(f64::INFINITY).is_err());
    }

    #[test]
    fn sinhc_series_join_is_smooth() {
        // relative mismatch across the series threshold stays within 4 ulp
        for &x in &[9.9e-5f64, 1.0e-4, 1.01e-4] {
            let series = 1.0 + x * x / 6.0 + x.powi(4) / 120.0;
            let direct = x.sinh() / x;
            assert!(((series - direct) / direct).abs() < 4.0 * f64::EPSILON);
        }
    }

    #[test]
    fn sinhc_prime_matches_difference_quotient() {
        for &x in &[1e-5, 1e-3, 0.2, 1.7] {
            let h = 1e-6;
            let fd = (sinhc_raw(x + h) - sinhc_raw(x - h)) / (2.0 * h);
            assert!((sinhc_prime(x) - fd).abs() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn expm1_ratio_limits() {
        assert_eq!(expm1_ratio(0.0, 3.5).unwrap(), 3.5);
        assert_eq!(expm1_ratio(1.0, 0.0).unwrap(), 0.0);
        let got = expm1_ratio(0.5, 2.0).unwrap();
        let want = (1.0 - (-1.0f64).exp()) / 0.5;
        assert!((got - want).abs() < 1e-15);
        assert!((got - 1.264_241_117_657_115).abs() < 1e-14);
    }

    #[test]
    fn expm1_ratio_tends_to_x_linearly_in_z() {
        let x = 1.7;
        let mut z = 0.1;
        let mut prev = (expm1_ratio(z, x).unwrap() - x).abs();
        for _ in 0..6 {
            z *= 0.5;
            let cur = (expm1_ratio(z, x).unwrap() - x).abs();
            let ratio = prev / cur;
            assert!(ratio > 1.8 && ratio < 2.2, "O(z) halving ratio was {ratio}");
            prev = cur;
        }
    }

    #[test]
    fn x_coth_limit_and_value() {
        assert_eq!(x_coth(0.0), 1.0);
        assert!((x_coth(0.7) - 0.7 / 0.7f64.tanh()).abs() < 1e-15);
    }

    #[test]
    fn sinhc_solves_its_second_order_equation() {
        // x(t) = A·sinhc(ηt) + B·cosh(ηt)/t solves t·x'' + 2x' − η²·t·x = 0;
        // derivatives by central differences at 100 points away from t = 0
        let (eta, a, b) = (1.3, 0.7, -0.4);
        let x = |t: f64| a * sinhc_raw(eta * t) + b * (eta * t).cosh() / t;
        // the direct second difference amplifies roundoff by 1/h², so the
        // step is wider here than in the analytic-derivative pass below
        let h = 1e-4;
        for k in 0..100 {
            let t = 0.2 + 0.05 * k as f64;
            let xp = (x(t + h) - x(t - h)) / (2.0 * h);
            let xpp = (x(t + h) - 2.0 * x(t) + x(t - h)) / (h * h);
            let residual = t * xpp + 2.0 * xp - eta * eta * t * x(t);
            assert!(residual.abs() < 1e-4 * x(t).abs().max(1.0), "t = {t}: {residual}");
        }
        let h = 1e-5;
        // and with analytic first derivatives the residual reaches 1e-8
        let xp_analytic = |t: f64| {
            a * eta * sinhc_prime(eta * t) + b * eta * (eta * t).sinh() / t
                - b * (eta * t).cosh() / (t * t)
        };
        for k in 0..100 {
            // away from the 1/t pole, where the remaining difference
            // truncation stays below the tolerance
            let t = 0.6 + 0.05 * k as f64;
            let xpp = (xp_analytic(t + h) - xp_analytic(t - h)) / (2.0 * h);
            let residual = t * xpp + 2.0 * xp_analytic(t) - eta * eta * t * x(t);
            assert!(residual.abs() < 1e-8 * x(t).abs().max(1.0), "t = {t}: {residual}");
        }
    }
}
