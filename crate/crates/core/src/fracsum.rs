//! Fractional finite sums Σ_{k=x}^{y} f(k) over the catalog.
//!
//! [`frac_sum`] uses per-family closed forms. [`frac_sum_series`] evaluates
//! the fundamental formula Σ_{ν≥1} (f(ν) − f(ν+x)) with an Euler–Maclaurin
//! tail, and [`frac_sum_taylor`] sums the essence Taylor series; both serve
//! as independent checks on the closed forms.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::essence::essence_closed_form;
use crate::expr::{check_summable, BasisFunction, CatalogExpr};
use crate::numeric::{binomial, expm1, factorial, is_nonpositive_integer, real, EULER_GAMMA, ONE, ZERO};
use crate::specfun::{bernoulli_f64, digamma, ln_gamma, polygamma, zeta_int, Convention};

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_TERMS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Series,
    Taylor,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Series => "series",
            Method::Taylor => "taylor",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumResult {
    pub value: Complex64,
    pub method: Method,
    /// Upper bound on the truncation error claimed by the engine; 0 for
    /// closed forms.
    pub err_estimate: f64,
    pub terms_used: usize,
}

impl SumResult {
    fn closed_form(value: Complex64) -> Self {
        Self {
            value,
            method: Method::ClosedForm,
            err_estimate: 0.0,
            terms_used: 0,
        }
    }
}

/// True for z ≠ 0 with e^z = 1, where the exponential closed forms are 0/0.
pub(crate) fn is_degenerate_exponent(z: Complex64) -> bool {
    z.norm() > 1.0 && expm1(z).norm() <= 1e-12
}

fn ensure_summable(e: &CatalogExpr) -> Result<()> {
    let report = check_summable(e);
    if let Some(t) = report.offending.first() {
        return Err(Error::NonSummable(format!(
            "{} satisfies f(x + 1/2) = -f(x)",
            CatalogExpr::from_terms([*t])
        )));
    }
    for t in e.terms() {
        if let BasisFunction::Exponential(z) | BasisFunction::ExpTimesX(z) = t.basis {
            if is_degenerate_exponent(z) {
                return Err(Error::NonSummable(format!(
                    "{} has e^z = 1 with z != 0",
                    CatalogExpr::from_terms([*t])
                )));
            }
        }
    }
    Ok(())
}

/// Σ_{k=1}^{y} x^a = y^a + Σ_{j=0}^{a} C(a, j) B⁻_{a−j} y^{j+1}/(j+1)
fn faulhaber(a: u32, y: Complex64) -> Complex64 {
    let mut acc = y.powu(a);
    let mut power = y;
    for j in 0..=a {
        let b = bernoulli_f64((a - j) as usize, Convention::Minus).expect("degree within table bound");
        acc += power * (binomial(a, j) * b / f64::from(j + 1));
        power *= y;
    }
    acc
}

/// Σ_{k=1}^{y} basis(k) for one unshifted family.
pub(crate) fn basis_partial_sum(basis: BasisFunction, y: Complex64) -> Result<Complex64> {
    let pole = |_| Error::PoleAtBound { bound: y };
    Ok(match basis {
        BasisFunction::Constant => y,
        BasisFunction::Monomial(a) => faulhaber(a, y),
        BasisFunction::Exponential(z) => {
            // u(u^y − 1)/(u − 1) with u = e^z
            z.exp() * expm1(z * y) / expm1(z)
        }
        BasisFunction::ExpTimesX(z) => {
            let u = z.exp();
            let d = expm1(z);
            u / d * (y * (z * y).exp() - expm1(z * y) / d)
        }
        BasisFunction::InverseMonomial(1) => digamma(y + 1.0).map_err(pole)? + EULER_GAMMA,
        BasisFunction::InverseMonomial(a) => {
            let zeta = zeta_int(i64::from(a)).expect("a >= 2");
            let sign = if a % 2 == 1 { 1.0 } else { -1.0 };
            polygamma(a - 1, y + 1.0).map_err(pole)? * (sign / factorial(a - 1)) + zeta
        }
        BasisFunction::Logarithm => ln_gamma(y + 1.0).map_err(pole)?,
    })
}

/// Σ_{k=1}^{t} e(k), the sum continued from 1.
pub(crate) fn partial_sum(e: &CatalogExpr, t: Complex64) -> Result<Complex64> {
    let mut acc = ZERO;
    for term in e.terms() {
        // Σ_{k=1}^{t} g(k+s) = G(t+s) − G(s)
        let upper = basis_partial_sum(term.basis, t + term.shift)?;
        let lower = if term.shift == ZERO {
            ZERO
        } else {
            basis_partial_sum(term.basis, term.shift)?
        };
        acc += term.coeff * (upper - lower);
    }
    Ok(acc)
}

/// Σ_{k=1}^{y} − Σ_{k=1}^{x} of one family, with the difference taken
/// inside the closed form where that avoids cancellation.
fn basis_increment(basis: BasisFunction, x: Complex64, y: Complex64) -> Result<Complex64> {
    let delta = y - x;
    Ok(match basis {
        BasisFunction::Constant => delta,
        BasisFunction::Monomial(a) => {
            // y^m − x^m = δ Σ_{i<m} y^i x^{m−1−i}
            let power_gap = |m: u32| -> Complex64 {
                (0..m).map(|i| y.powu(i) * x.powu(m - 1 - i)).sum::<Complex64>() * delta
            };
            let mut acc = power_gap(a);
            for j in 0..=a {
                let b = bernoulli_f64((a - j) as usize, Convention::Minus).expect("degree within table bound");
                acc += power_gap(j + 1) * (binomial(a, j) * b / f64::from(j + 1));
            }
            acc
        }
        BasisFunction::Exponential(z) => {
            // e^z (e^{zy} − e^{zx})/(e^z − 1)
            z.exp() * (z * x).exp() * expm1(z * delta) / expm1(z)
        }
        BasisFunction::ExpTimesX(z) => {
            let d = expm1(z);
            let ex = (z * x).exp();
            let gap = ex * expm1(z * delta);
            // y e^{zy} − x e^{zx} = δ e^{zy} + x (e^{zy} − e^{zx})
            let weighted = delta * (z * y).exp() + x * gap;
            z.exp() / d * (weighted - gap / d)
        }
        _ => basis_partial_sum(basis, y)? - basis_partial_sum(basis, x)?,
    })
}

/// Σ_{k=1}^{y} e(k) − Σ_{k=1}^{x} e(k) = Σ_{k=x+1}^{y} e(k), computed without
/// cancellation for the polynomial and exponential families.
pub(crate) fn partial_sum_increment(e: &CatalogExpr, x: Complex64, y: Complex64) -> Result<Complex64> {
    ensure_summable(e)?;
    let mut acc = ZERO;
    for term in e.terms() {
        acc += term.coeff * basis_increment(term.basis, x + term.shift, y + term.shift)?;
    }
    Ok(acc)
}

/// Σ_{k=x}^{y} e(k) by closed forms, reduced to Σ_1^y − Σ_1^{x−1}.
pub fn frac_sum(e: &CatalogExpr, x: Complex64, y: Complex64) -> Result<SumResult> {
    ensure_summable(e)?;
    let upper = partial_sum(e, y)?;
    let lower = partial_sum(e, x - 1.0)?;
    Ok(SumResult::closed_form(upper - lower))
}

/// Σ_{k=1}^{x} e(k) through the fundamental formula
/// Σ_{ν=1}^{N} (f(ν) − f(ν+x)) plus an Euler–Maclaurin estimate of the tail
/// through the third-derivative correction. N doubles until the first
/// omitted correction falls below `tol`.
pub fn frac_sum_series(e: &CatalogExpr, x: Complex64, tol: f64, max_terms: usize) -> Result<SumResult> {
    ensure_summable(e)?;
    let mut reach = x.norm();
    for t in e.terms() {
        let decays = match t.basis {
            BasisFunction::InverseMonomial(_) => true,
            BasisFunction::Exponential(z) | BasisFunction::ExpTimesX(z) => z.re < 0.0,
            _ => false,
        };
        if !decays {
            return Err(Error::NonDecaying(CatalogExpr::from_terms([*t]).to_string()));
        }
        if let BasisFunction::InverseMonomial(_) = t.basis {
            if is_nonpositive_integer(x + t.shift + 1.0) {
                return Err(Error::PoleAtBound { bound: x });
            }
        }
        reach = reach.max(x.norm() + t.shift.norm());
    }
    if e.is_zero() {
        return Ok(SumResult {
            value: ZERO,
            method: Method::Series,
            err_estimate: 0.0,
            terms_used: 0,
        });
    }

    let primitive = e.antiderivative()?;
    let d1 = e.differentiate();
    let d3 = d1.differentiate().differentiate();
    let d5 = d3.differentiate().differentiate();
    let gap = |f: &CatalogExpr, v: f64| f.evaluate(real(v)) - f.evaluate(x + v);

    // Euler–Maclaurin for Σ_{ν>N} g(ν) with g(ν) = f(ν) − f(ν+x):
    // ∫_N^∞ g − g(N)/2 − B2/2! g′(N) − B4/4! g‴(N), next term B6/6! g⁽⁵⁾(N).
    let tail = |n: f64| {
        let integral = primitive.evaluate(x + n) - primitive.evaluate(real(n));
        let value = integral - gap(e, n) * 0.5 - gap(&d1, n) / 12.0 + gap(&d3, n) / 720.0;
        let next = gap(&d5, n).norm() / 30240.0;
        (value, next)
    };

    let max_terms = max_terms.max(1);
    let mut n_target = ((16.0f64).max(2.0 * reach.ceil() + 8.0) as usize).min(max_terms);
    let mut head = ZERO;
    let mut compensation = ZERO;
    let mut n_done = 0usize;
    loop {
        for nu in (n_done + 1)..=n_target {
            // Kahan summation keeps the head accurate over millions of terms.
            let y = gap(e, nu as f64) - compensation;
            let t = head + y;
            compensation = (t - head) - y;
            head = t;
        }
        n_done = n_target;
        let (tail_value, err) = tail(n_done as f64);
        let result = SumResult {
            value: head + tail_value,
            method: Method::Series,
            err_estimate: err,
            terms_used: n_done,
        };
        if err <= tol {
            return Ok(result);
        }
        if n_done >= max_terms {
            return Err(Error::MaxTermsExceeded { best: Box::new(result) });
        }
        n_target = (n_done * 2).min(max_terms);
    }
}

/// Partial sum of Σ_{k≥1} ess(f^{(k−1)}) x^k/k! with `n_terms` terms.
pub fn frac_sum_taylor(e: &CatalogExpr, x: Complex64, n_terms: usize) -> Result<SumResult> {
    for t in e.terms() {
        let supported = matches!(
            t.basis,
            BasisFunction::Constant
                | BasisFunction::Monomial(_)
                | BasisFunction::Exponential(_)
                | BasisFunction::ExpTimesX(_)
        );
        if !supported || t.shift != ZERO {
            return Err(Error::UnsupportedForTaylor(CatalogExpr::from_terms([*t]).to_string()));
        }
    }
    ensure_summable(e)?;
    let mut derivative = e.clone();
    let mut weight = ONE;
    let mut value = ZERO;
    for k in 1..=n_terms {
        weight *= x / k as f64;
        value += essence_closed_form(&derivative)? * weight;
        derivative = derivative.differentiate();
    }
    let next_weight = weight * x / (n_terms + 1) as f64;
    let err_estimate = if derivative.is_zero() {
        0.0
    } else {
        (essence_closed_form(&derivative)? * next_weight).norm()
    };
    Ok(SumResult {
        value,
        method: Method::Taylor,
        err_estimate,
        terms_used: n_terms,
    })
}
