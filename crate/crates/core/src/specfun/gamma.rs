//! Digamma, polygamma and log-gamma for complex arguments.
//!
//! All three shift the argument upward with their recurrences until
//! Re z ≥ 10 (plus the polygamma order), then apply the asymptotic
//! expansion with Bernoulli coefficients.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::{bernoulli_f64, Convention};
use crate::error::{Error, Result};
use crate::numeric::{factorial, is_nonpositive_integer, real};

const SHIFT_THRESHOLD: f64 = 10.0;
const ASYMPTOTIC_TERMS: usize = 20;
const POLYGAMMA_MAX_TERMS: usize = 40;

fn check_pole(function: &'static str, z: Complex64) -> Result<()> {
    if is_nonpositive_integer(z) || !z.is_finite() {
        return Err(Error::Pole { function, at: z });
    }
    Ok(())
}

fn b2k(k: usize) -> f64 {
    bernoulli_f64(2 * k, Convention::Plus).expect("index within table bound")
}

/// ψ(z) = Γ′(z)/Γ(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_pole("digamma", z)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < SHIFT_THRESHOLD {
        acc -= w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut power = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for k in 1..=ASYMPTOTIC_TERMS {
        series += power * (b2k(k) / (2 * k) as f64);
        power *= inv2;
    }
    Ok(acc + w.ln() - 0.5 * inv - series)
}

/// ψ^{(n)}(z), the n-th derivative of the digamma function, n ≥ 1.
pub fn polygamma(n: u32, z: Complex64) -> Result<Complex64> {
    if n == 0 {
        return digamma(z);
    }
    check_pole("polygamma", z)?;
    let nf = factorial(n);
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let threshold = SHIFT_THRESHOLD + f64::from(n);

    // ψ^{(n)}(z) = ψ^{(n)}(z+1) − (−1)^n n!/z^{n+1}
    let mut acc = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < threshold {
        acc -= w.powu(n + 1).inv() * (-sign * nf);
        w += 1.0;
    }

    let inv = w.inv();
    let inv2 = inv * inv;
    let lead = inv.powu(n);
    let mut sum = lead * factorial(n - 1) + lead * inv * (0.5 * nf);
    // term k: B_{2k} (2k+n−1)!/(2k)! w^{−(2k+n)}
    let mut coeff = nf * f64::from(n + 1) / 2.0;
    let mut power = lead * inv2;
    for k in 1..=POLYGAMMA_MAX_TERMS {
        let term = power * (b2k(k) * coeff);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        let k2 = (2 * k) as f64;
        let nf64 = f64::from(n);
        coeff *= (k2 + nf64) * (k2 + nf64 + 1.0) / ((k2 + 1.0) * (k2 + 2.0));
        power *= inv2;
    }
    Ok(acc + sum * sign)
}

/// lnΓ(z) on the branch analytic in ℂ ∖ (−∞, 0], equal to the real
/// logarithm of Γ on the positive axis.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    check_pole("ln_gamma", z)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < SHIFT_THRESHOLD {
        acc -= w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut power = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for k in 1..=ASYMPTOTIC_TERMS {
        let denom = (2 * k * (2 * k - 1)) as f64;
        series += power * (b2k(k) / denom);
        power *= inv2;
    }
    Ok(acc + (w - 0.5) * w.ln() - w + real(0.5 * (2.0 * PI).ln()) + series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::EULER_GAMMA;
    use crate::specfun::zeta::zeta_int;
    use std::f64::consts::LN_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// ψ(1 + x) − ψ(1) = Σ_{k≥1} (1/k − 1/(k + x)), with a tail correction.
    fn digamma_series(z: Complex64) -> Complex64 {
        let x = z - 1.0;
        let n = 200_000;
        let mut s = c(0.0, 0.0);
        for k in (1..=n).rev() {
            let k = k as f64;
            s += real(1.0 / k) - (x + k).inv();
        }
        // tail Σ_{k>n} (1/k − 1/(k+x)) ≈ ln((n+x)/n) − (1/(2n) − 1/(2(n+x)))
        let nf = real(n as f64);
        let tail = ((nf + x) / nf).ln() - (nf.inv() - (nf + x).inv()) * 0.5;
        s + tail - EULER_GAMMA
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(real(1.0)).unwrap() + EULER_GAMMA).norm() < 1e-15);
        assert!((digamma(real(2.0)).unwrap() - (1.0 - EULER_GAMMA)).norm() < 1e-15);
        let expected = 2.0 - 2.0 * LN_2 - EULER_GAMMA;
        assert!((digamma(real(1.5)).unwrap() - expected).norm() < 1e-14);
        assert!((digamma_series(real(1.5)) - expected).norm() < 1e-12);
    }

    #[test]
    fn digamma_matches_series_off_axis() {
        for z in [c(0.3, 1.7), c(-2.4, 0.6), c(4.0, -3.0)] {
            let got = digamma(z).unwrap();
            let want = digamma_series(z);
            assert!((got - want).norm() / want.norm() < 1e-10, "z = {z}");
        }
    }

    #[test]
    fn poles() {
        for z in [0.0, -1.0, -7.0] {
            assert!(matches!(digamma(real(z)), Err(Error::Pole { .. })));
            assert!(matches!(polygamma(2, real(z)), Err(Error::Pole { .. })));
            assert!(matches!(ln_gamma(real(z)), Err(Error::Pole { .. })));
        }
    }

    #[test]
    fn polygamma_at_one_is_zeta() {
        // ψ^{(a)}(1) = (−1)^{a+1} a! ζ(a+1)
        for a in 1..=12u32 {
            let sign = if a % 2 == 1 { 1.0 } else { -1.0 };
            let want = sign * factorial(a) * zeta_int(i64::from(a) + 1).unwrap();
            let got = polygamma(a, real(1.0)).unwrap();
            assert!((got.re - want).abs() / want.abs() < 1e-13, "a = {a}: {got} vs {want}");
            assert!(got.im.abs() < 1e-15);
        }
    }

    #[test]
    fn polygamma_small_cases() {
        let z2 = zeta_int(2).unwrap();
        assert!((polygamma(1, real(1.0)).unwrap() - z2).norm() < 1e-14);
        assert!((polygamma(2, real(1.0)).unwrap() + 2.0 * zeta_int(3).unwrap()).norm() < 1e-14);
        assert!((polygamma(1, real(2.0)).unwrap() - (z2 - 1.0)).norm() < 1e-14);
    }

    #[test]
    fn polygamma_matches_finite_difference_of_lower_order() {
        let h = 1e-4;
        for n in 1..=6u32 {
            for z in [c(0.4, 0.9), c(-1.5, 2.0), c(3.0, -0.5)] {
                let hc = real(h);
                let lower = |w| polygamma(n - 1, w).unwrap();
                // five-point stencil
                let fd = (lower(z - hc * 2.0) - lower(z - hc) * 8.0 + lower(z + hc) * 8.0
                    - lower(z + hc * 2.0))
                    / (12.0 * h);
                let got = polygamma(n, z).unwrap();
                assert!((got - fd).norm() / got.norm().max(1.0) < 1e-7, "n = {n}, z = {z}");
            }
        }
    }

    #[test]
    fn ln_gamma_values() {
        assert!(ln_gamma(real(1.0)).unwrap().norm() < 1e-14);
        assert!((ln_gamma(real(5.0)).unwrap() - 24f64.ln()).norm() < 1e-14);
        let half = ln_gamma(real(0.5)).unwrap();
        assert!((half.re - 0.572_364_942_924_700_1).abs() < 1e-14);
        // Γ(9/2) = (7/2)(5/2)(3/2)(1/2)Γ(1/2)
        let g92 = ln_gamma(real(4.5)).unwrap();
        assert!((g92.re - (half.re + (3.5f64 * 2.5 * 1.5 * 0.5).ln())).abs() < 1e-13);
    }

    #[test]
    fn ln_gamma_recurrence_off_axis() {
        for z in [c(0.2, 3.0), c(-3.7, -0.4), c(12.0, 40.0)] {
            let lhs = ln_gamma(z + 1.0).unwrap() - ln_gamma(z).unwrap() - z.ln();
            assert!(lhs.norm() < 1e-11, "z = {z}: {lhs}");
        }
    }
}
