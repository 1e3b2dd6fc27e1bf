//! Euler–Maclaurin summation with a complex upper bound, for polynomials.
//!
//! Σ_{k=1}^{x} P(k) = ∫_0^x P + (P(x) − P(0))/2
//!                  + Σ_{m≥1} B_{2m}/(2m)! (P^{(2m−1)}(x) − P^{(2m−1)}(0)),
//! where the correction series stops on its own once the derivatives vanish.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::CatalogExpr;
use crate::numeric::{factorial, ZERO};
use crate::specfun::{bernoulli_f64, Convention};

pub const DEGREE_CAP: u32 = 16;

pub fn euler_maclaurin_sum(p: &CatalogExpr, x: Complex64) -> Result<Complex64> {
    let degree = p.polynomial_degree().ok_or_else(|| Error::NonPolynomial(p.to_string()))?;
    if degree > DEGREE_CAP {
        return Err(Error::DegreeCap { degree, cap: DEGREE_CAP });
    }
    let endpoints = |f: &CatalogExpr| f.evaluate(x) - f.evaluate(ZERO);

    let integral = endpoints(&p.antiderivative()?);
    let mut total = integral + endpoints(p) * 0.5;

    let mut derivative = p.differentiate();
    let mut m = 1usize;
    while !derivative.is_zero() {
        let weight = bernoulli_f64(2 * m, Convention::Plus)? / factorial(2 * m as u32);
        total += endpoints(&derivative) * weight;
        derivative = derivative.differentiate().differentiate();
        m += 1;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{real, ONE};
    use std::f64::consts::PI;

    #[test]
    fn linear() {
        let p = CatalogExpr::monomial(1);
        let x = Complex64::new(0.3, -1.2);
        let want = x * x / 2.0 + x / 2.0;
        assert!((euler_maclaurin_sum(&p, x).unwrap() - want).norm() < 1e-15);
        assert!((euler_maclaurin_sum(&p, real(10.0)).unwrap() - 55.0).norm() < 1e-13);
    }

    #[test]
    fn constant_is_the_integral() {
        let x = Complex64::new(2.5, 4.0);
        assert_eq!(euler_maclaurin_sum(&CatalogExpr::constant(ONE), x).unwrap(), x);
    }

    #[test]
    fn square_at_pi_matches_fractional_sum() {
        let p = CatalogExpr::monomial(2);
        let got = euler_maclaurin_sum(&p, real(PI)).unwrap();
        let want = crate::fracsum::frac_sum(&p, ONE, real(PI)).unwrap().value;
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn rejects_non_polynomials() {
        assert!(matches!(
            euler_maclaurin_sum(&CatalogExpr::logarithm(), ONE),
            Err(Error::NonPolynomial(_))
        ));
        assert!(matches!(
            euler_maclaurin_sum(&CatalogExpr::monomial(17), ONE),
            Err(Error::DegreeCap { degree: 17, cap: 16 })
        ));
    }
}
