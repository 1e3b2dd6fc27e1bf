//! Small complex-arithmetic helpers shared by the engines.

use num_complex::Complex64;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// e^z − 1 without cancellation for small |z|.
pub fn expm1(z: Complex64) -> Complex64 {
    let half_sin = (0.5 * z.im).sin();
    let re = z.re.exp_m1() * z.im.cos() - 2.0 * half_sin * half_sin;
    let im = z.re.exp() * z.im.sin();
    Complex64::new(re, im)
}

/// True when `z` is exactly one of 0, −1, −2, …
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Distance from `z` to the nearest point of {0, −1, −2, …}.
pub fn distance_to_nonpositive_integers(z: Complex64) -> f64 {
    let nearest = if z.re >= 0.0 { 0.0 } else { z.re.round() };
    (z - real(nearest)).norm()
}

/// `z` with any negative-zero components replaced by positive zero, so that
/// bitwise comparisons agree with numeric equality.
pub fn normalize_zero(z: Complex64) -> Complex64 {
    Complex64::new(z.re + 0.0, z.im + 0.0)
}

/// Binomial coefficient as f64 (exact for the small arguments used here).
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * f64::from(n - j) / f64::from(j + 1))
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * f64::from(j))
}

/// `z^n` for a non-negative integer power by repeated squaring.
pub fn powu(z: Complex64, n: u32) -> Complex64 {
    z.powu(n)
}

/// |a − b| scaled by max(1, |b|).
pub fn rel_residual(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
