//! Special functions: complete elliptic integrals by the arithmetic-geometric
//! mean and error-function helpers for log-space Gaussian windows.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

const AGM_TOL: f64 = 1e-15;
const AGM_MAX_ITER: usize = 64;

/// Complete elliptic integrals `(K(k), E(k))` for modulus `0 <= k <= 1`.
///
/// Uses the Gauss AGM iteration `a' = (a+b)/2`, `b' = sqrt(ab)` started from
/// `(1, sqrt(1-k^2))`; `K = pi / (2 M)` and
/// `E = K (1 - sum_n 2^(n-1) c_n^2)` with `c_0 = k`, `c_n = (a_{n-1} - b_{n-1})/2`.
/// At `k = 1`, `K` is infinite and `E = 1` exactly.
pub fn complete_elliptic_ke(k: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::Domain(format!("elliptic modulus {k} outside [0, 1]")));
    }
    if k == 1.0 {
        return Ok((f64::INFINITY, 1.0));
    }
    let mut a = 1.0;
    let mut b = ((1.0 - k) * (1.0 + k)).sqrt();
    let mut sum = 0.5 * k * k;
    let mut pow2 = 0.5;
    for _ in 0..AGM_MAX_ITER {
        let c = 0.5 * (a - b);
        pow2 *= 2.0;
        sum += pow2 * c * c;
        if c.abs() <= AGM_TOL * a {
            let kk = PI / (2.0 * a);
            return Ok((kk, kk * (1.0 - sum)));
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    Err(Error::Numeric(format!("AGM did not converge for k = {k}")))
}

pub fn elliptic_k(k: f64) -> Result<f64> {
    complete_elliptic_ke(k).map(|(kk, _)| kk)
}

pub fn elliptic_e(k: f64) -> Result<f64> {
    complete_elliptic_ke(k).map(|(_, e)| e)
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// `ln erfc(x)` that stays finite where `erfc` underflows (large positive x).
pub fn ln_erfc(x: f64) -> f64 {
    if x < 25.0 {
        return erfc(x).ln();
    }
    // asymptotic expansion: erfc(x) ~ e^{-x^2}/(x sqrt(pi)) * sum (-1)^n (2n-1)!! / (2x^2)^n
    let inv = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut series = 1.0;
    for n in 1..8 {
        term *= -((2 * n - 1) as f64) * inv;
        series += term;
    }
    -x * x - (x * PI.sqrt()).ln() + series.ln()
}

/// `ln(erf(a) + erf(b))`, assuming the sum is positive.
///
/// When the window `[-b, a]` sits far in a Gaussian tail the two error
/// functions cancel to within rounding; the sum is then evaluated as a
/// difference of complementary error functions in log space.
pub fn ln_erf_sum(a: f64, b: f64) -> f64 {
    let direct = erf(a) + erf(b);
    if direct > 1e-3 {
        return direct.ln();
    }
    // erf(a) + erf(b) = erfc(-a) - erfc(b) = erfc(-b) - erfc(a)
    let (lo, hi) = if -a < b { (-a, b) } else { (-b, a) };
    if lo <= 0.0 {
        return direct.ln();
    }
    let l_lo = ln_erfc(lo);
    let l_hi = ln_erfc(hi);
    l_lo + (-(l_hi - l_lo).exp()).ln_1p()
}

/// Value of `pi/2` exposed for callers checking `K(0) = E(0)`.
pub const QUARTER_PERIOD_AT_ZERO: f64 = FRAC_PI_2;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive_simpson;

    fn k_quad(k: f64) -> f64 {
        adaptive_simpson(
            |t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(),
            0.0,
            FRAC_PI_2,
            1e-13,
        )
        .unwrap()
    }

    fn e_quad(k: f64) -> f64 {
        adaptive_simpson(
            |t: f64| (1.0 - k * k * t.sin().powi(2)).sqrt(),
            0.0,
            FRAC_PI_2,
            1e-13,
        )
        .unwrap()
    }

    #[test]
    fn zero_modulus() {
        let (k, e) = complete_elliptic_ke(0.0).unwrap();
        assert_eq!(k, QUARTER_PERIOD_AT_ZERO);
        assert_eq!(e, QUARTER_PERIOD_AT_ZERO);
    }

    #[test]
    fn unit_modulus() {
        let (k, e) = complete_elliptic_ke(1.0).unwrap();
        assert!(k.is_infinite());
        assert_eq!(e, 1.0);
    }

    #[test]
    fn agrees_with_quadrature() {
        for &k in &[0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
            let (kk, ee) = complete_elliptic_ke(k).unwrap();
            assert!((kk - k_quad(k)).abs() < 1e-10, "K({k})");
            assert!((ee - e_quad(k)).abs() < 1e-10, "E({k})");
        }
    }

    #[test]
    fn legendre_relation() {
        // E K' + E' K - K K' = pi/2
        for &k in &[0.2, 0.5, 0.8] {
            let kp = (1.0 - k * k as f64).sqrt();
            let (kk, ee) = complete_elliptic_ke(k).unwrap();
            let (kkp, eep) = complete_elliptic_ke(kp).unwrap();
            assert!((ee * kkp + eep * kk - kk * kkp - FRAC_PI_2).abs() < 1e-13);
        }
    }

    #[test]
    fn out_of_domain() {
        assert!(complete_elliptic_ke(1.5).is_err());
        assert!(complete_elliptic_ke(-0.1).is_err());
    }

    #[test]
    fn erf_reference_values() {
        // tabulated erf values
        assert!((erf(0.5) - 0.520_499_877_813_046_5).abs() < 1e-15);
        assert!((erf(1.0) - 0.842_700_792_949_714_9).abs() < 1e-15);
        assert!((erf(2.0) - 0.995_322_265_018_952_7).abs() < 1e-15);
    }

    #[test]
    fn ln_erfc_matches_direct_below_switch() {
        for &x in &[1.0, 5.0, 20.0, 24.9] {
            assert!((ln_erfc(x) - erfc(x).ln()).abs() < 1e-12 * erfc(x).ln().abs().max(1.0));
        }
        // continuity across the asymptotic switch
        let below = erfc(24.999_999).ln();
        let above = ln_erfc(25.0);
        assert!((below - above).abs() < 1e-3);
    }

    #[test]
    fn ln_erf_sum_tail_window() {
        // both regimes agree where the direct sum is still accurate
        let (a, b) = (-2.0, 2.5);
        let direct = (erf(a) + erf(b)).ln();
        assert!((ln_erf_sum(a, b) - direct).abs() < 1e-12);
        let (a, b) = (-3.0, 3.2);
        let direct = (erf(a) + erf(b)).ln();
        assert!((ln_erf_sum(a, b) - direct).abs() < 1e-6);
        // far tail stays finite
        assert!(ln_erf_sum(-20.0, 25.0).is_finite());
    }
}
