//! Riemann zeta at integer arguments.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::{bernoulli_f64, Convention};
use crate::error::{Error, Result};

/// Beyond this argument ζ(n) − 1 < 2^{−60}, so the direct series is exact
/// after a handful of terms.
const DIRECT_SERIES_FROM: i64 = 60;

/// Acceleration depth for the alternating series; error ≈ 5.8^{−depth}.
const ETA_DEPTH: usize = 32;

/// ζ(n) for integer n ≠ 1.
///
/// Non-positive arguments use ζ(1 − a) = −B_a/a with B_1 = +1/2, even
/// arguments the Bernoulli closed form, and odd arguments an accelerated
/// alternating series.
pub fn zeta_int(n: i64) -> Result<f64> {
    if n == 1 {
        return Err(Error::Pole {
            function: "zeta",
            at: Complex64::new(1.0, 0.0),
        });
    }
    if n <= 0 {
        let a = (1 - n) as usize;
        return Ok(-bernoulli_f64(a, Convention::Plus)? / a as f64);
    }
    if n >= DIRECT_SERIES_FROM {
        return Ok(direct_series(n));
    }
    if n % 2 == 0 {
        let b = bernoulli_f64(n as usize, Convention::Plus)?;
        let sign = if (n / 2) % 2 == 0 { -1.0 } else { 1.0 };
        let mut scale = 0.5;
        for j in 1..=n {
            scale *= 2.0 * PI / j as f64;
        }
        return Ok(sign * b * scale);
    }
    let eta = accelerated_eta(n as i32);
    Ok(eta / (1.0 - 2f64.powi(1 - n as i32)))
}

fn direct_series(n: i64) -> f64 {
    let s = n as i32;
    (1..=8).rev().map(|k| (k as f64).powi(-s)).sum()
}

/// η(s) = Σ_{k≥0} (−1)^k (k+1)^{−s} with the Cohen–Rodriguez Villegas–Zagier
/// weights.
fn accelerated_eta(s: i32) -> f64 {
    let n = ETA_DEPTH as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(n);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut sum = 0.0;
    for k in 0..ETA_DEPTH {
        let kf = k as f64;
        c = b - c;
        sum += c * (kf + 1.0).powi(-s);
        b = (kf + n) * (kf - n) * b / ((kf + 0.5) * (kf + 1.0));
    }
    sum / d
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain partial sum with an integral tail bound, for cross-checks.
    fn brute(n: i64) -> f64 {
        let terms = 200_000;
        let s = n as i32;
        let head: f64 = (1..=terms).rev().map(|k| (k as f64).powi(-s)).sum();
        // Euler–Maclaurin tail: ∫ + f/2.
        let m = terms as f64;
        head + m.powi(1 - s) / (n as f64 - 1.0) - 0.5 * m.powi(-s)
    }

    #[test]
    fn pole_at_one() {
        assert!(matches!(zeta_int(1), Err(Error::Pole { .. })));
    }

    #[test]
    fn known_values() {
        assert!((zeta_int(2).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta_int(4).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta_int(3).unwrap() - 1.202_056_903_159_594_2).abs() < 1e-15);
        assert!((zeta_int(5).unwrap() - 1.036_927_755_143_37).abs() < 1e-15);
        assert_eq!(zeta_int(0).unwrap(), -0.5);
        assert!((zeta_int(-1).unwrap() + 1.0 / 12.0).abs() < 1e-17);
        assert_eq!(zeta_int(-2).unwrap(), 0.0);
        assert!((zeta_int(-3).unwrap() - 1.0 / 120.0).abs() < 1e-17);
    }

    #[test]
    fn odd_values_against_partial_sums() {
        for n in [3, 5, 7, 9, 11, 21, 41, 59, 61] {
            let z = zeta_int(n).unwrap();
            assert!((z - brute(n)).abs() / z < 1e-14, "zeta({n})");
        }
    }

    #[test]
    fn even_values_against_partial_sums() {
        for n in [2, 6, 10, 30, 58, 62] {
            let z = zeta_int(n).unwrap();
            assert!((z - brute(n)).abs() / z < 1e-12, "zeta({n})");
        }
    }

    #[test]
    fn negative_arguments_follow_bernoulli() {
        for a in 1..=20usize {
            let expected = -bernoulli_f64(a, Convention::Plus).unwrap() / a as f64;
            assert_eq!(zeta_int(1 - a as i64).unwrap(), expected);
        }
    }

    #[test]
    fn beyond_table_is_an_error() {
        assert!(matches!(zeta_int(-200), Err(Error::BernoulliBound { .. })));
    }
}
