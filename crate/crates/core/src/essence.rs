//! Essences: ess(f) = lim_{h→0} (1/h) Σ_{k=1}^{h} f(k).
//!
//! [`essence`] combines per-family closed forms; shifted terms go through
//! ess(f(· + s)) = ess(f) + Σ_{k=1}^{s} f′(k). [`essence_numeric`] evaluates
//! the limit itself by Richardson extrapolation over dyadic steps.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{BasisFunction, CatalogExpr};
use crate::fracsum::{frac_sum, is_degenerate_exponent, partial_sum, partial_sum_increment};
use crate::numeric::{expm1, real, EULER_GAMMA, ONE, ZERO};
use crate::specfun::{bernoulli_f64, zeta_int, Convention};

/// Richardson levels applied on top of the raw difference quotients.
pub const RICHARDSON_DEPTH: usize = 4;
pub const DEFAULT_H_MIN: f64 = 1.0 / 4096.0;
const FIRST_DYADIC_EXPONENT: i32 = 3;

/// Step of the central difference in [`essence_derivative_identity_check`];
/// 2^{−20} ≈ 1e−6, a power of two so that x ± h stays close to exact.
pub const DERIVATIVE_STEP: f64 = 1.0 / 1_048_576.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    ClosedForm,
    NumericLimit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EssenceResult {
    pub value: Complex64,
    pub provenance: Provenance,
    pub err_estimate: f64,
}

fn basis_essence(basis: BasisFunction) -> Result<Complex64> {
    let degenerate = |z: Complex64| Error::NonSummable(format!("exponent {z} has e^z = 1"));
    Ok(match basis {
        BasisFunction::Constant => ONE,
        BasisFunction::Monomial(a) => real(bernoulli_f64(a as usize, Convention::Plus)?),
        BasisFunction::InverseMonomial(a) => real(f64::from(a) * zeta_int(i64::from(a) + 1)?),
        BasisFunction::Exponential(z) => {
            if is_degenerate_exponent(z) {
                return Err(degenerate(z));
            }
            z * z.exp() / expm1(z)
        }
        BasisFunction::ExpTimesX(z) => {
            if is_degenerate_exponent(z) {
                return Err(degenerate(z));
            }
            let d = expm1(z);
            z.exp() / d * (ONE - z / d)
        }
        BasisFunction::Logarithm => real(-EULER_GAMMA),
    })
}

/// Closed-form essence as a bare value.
pub(crate) fn essence_closed_form(e: &CatalogExpr) -> Result<Complex64> {
    let mut acc = ZERO;
    for t in e.terms() {
        let mut value = basis_essence(t.basis)?;
        if t.shift != ZERO {
            let derivative = CatalogExpr::term(ONE, t.basis, ZERO).differentiate();
            value += partial_sum(&derivative, t.shift)?;
        }
        acc += t.coeff * value;
    }
    Ok(acc)
}

/// Essence by closed forms per family.
pub fn essence(e: &CatalogExpr) -> Result<EssenceResult> {
    Ok(EssenceResult {
        value: essence_closed_form(e)?,
        provenance: Provenance::ClosedForm,
        err_estimate: 0.0,
    })
}

/// Essence as the limit of (1/h)·Σ_{k=1}^{h} f(k), h = 2^{−3}, 2^{−4}, …,
/// down to `h_min`, Richardson-extrapolated.
pub fn essence_numeric(e: &CatalogExpr, h_min: f64) -> Result<EssenceResult> {
    let last = ((1.0 / h_min).log2().ceil() as i32).max(FIRST_DYADIC_EXPONENT + RICHARDSON_DEPTH as i32);
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for j in FIRST_DYADIC_EXPONENT..=last {
        let h = 2f64.powi(-j);
        let quotient = frac_sum(e, ONE, real(h))?.value / h;
        let mut row = vec![quotient];
        if let Some(prev) = rows.last() {
            let mut factor = 1.0;
            for m in 1..=RICHARDSON_DEPTH.min(prev.len()) {
                factor *= 2.0;
                let improved = row[m - 1] + (row[m - 1] - prev[m - 1]) / (factor - 1.0);
                row.push(improved);
            }
        }
        rows.push(row);
    }
    let row = rows.last().expect("at least one step");
    let value = row[row.len() - 1];
    let err_estimate = if row.len() >= 2 {
        (row[row.len() - 1] - row[row.len() - 2]).norm()
    } else {
        f64::INFINITY
    };
    Ok(EssenceResult {
        value,
        provenance: Provenance::NumericLimit,
        err_estimate,
    })
}

/// |d/dx Σ_{k=1}^{x} f(k) − ess(f) − Σ_{k=1}^{x} f′(k)|, with the derivative
/// taken by a central difference of step [`DERIVATIVE_STEP`].
pub fn essence_derivative_identity_check(e: &CatalogExpr, x: Complex64) -> Result<f64> {
    let h = real(DERIVATIVE_STEP);
    let (below, above) = (x - h, x + h);
    // dividing by the representable step keeps linear sums exact
    let slope = partial_sum_increment(e, below, above)? / (above - below);
    let ess = essence_closed_form(e)?;
    let derivative_sum = frac_sum(&e.differentiate(), ONE, x)?.value;
    Ok((slope - ess - derivative_sum).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_form_examples() {
        let cases = [
            (CatalogExpr::monomial(2), real(1.0 / 6.0)),
            (CatalogExpr::logarithm(), real(-EULER_GAMMA)),
            (CatalogExpr::exponential(c(0.0, PI)), c(0.0, PI / 2.0)),
            (CatalogExpr::exp_times_x(c(0.0, PI)), c(0.5, PI / 4.0)),
            (CatalogExpr::reciprocal_consecutive(ZERO), ONE),
            (CatalogExpr::inverse_monomial(2), real(2.0 * 1.202_056_903_159_594_2)),
        ];
        for (e, want) in cases {
            let r = essence(&e).unwrap();
            assert!((r.value - want).norm() < 1e-14, "{e}: {} vs {want}", r.value);
            assert_eq!(r.provenance, Provenance::ClosedForm);
            assert_eq!(r.err_estimate, 0.0);
        }
    }

    #[test]
    fn numeric_examples() {
        let r = essence_numeric(&CatalogExpr::logarithm(), DEFAULT_H_MIN).unwrap();
        assert!((r.value + EULER_GAMMA).norm() < 1e-6);
        assert_eq!(r.provenance, Provenance::NumericLimit);
        let r = essence_numeric(&CatalogExpr::monomial(3), DEFAULT_H_MIN).unwrap();
        assert!(r.value.norm() < 1e-8);
        let r = essence_numeric(&CatalogExpr::inverse_monomial(1), DEFAULT_H_MIN).unwrap();
        assert!((r.value - PI * PI / 6.0).norm() < 1e-6);
    }

    #[test]
    fn shifted_logarithm_is_digamma() {
        let s = c(0.75, 0.5);
        let e = CatalogExpr::term(ONE, BasisFunction::Logarithm, s);
        let want = crate::specfun::digamma(s + 1.0).unwrap();
        assert!((essence(&e).unwrap().value - want).norm() < 1e-14);
    }

    #[test]
    fn derivative_identity_examples() {
        let sq = CatalogExpr::monomial(2);
        assert!(essence_derivative_identity_check(&sq, c(1.7, -0.6)).unwrap() < 1e-6);
        let inv = CatalogExpr::inverse_monomial(1);
        assert!(essence_derivative_identity_check(&inv, c(1.0, 1.0)).unwrap() < 1e-6);
        let five = CatalogExpr::constant(real(5.0));
        assert!(essence_derivative_identity_check(&five, c(-3.2, 0.4)).unwrap() < 1e-10);
    }

    #[test]
    fn degenerate_exponent_is_rejected() {
        let e = CatalogExpr::exponential(c(0.0, 4.0 * PI));
        assert!(matches!(essence(&e), Err(Error::NonSummable(_))));
    }
}
