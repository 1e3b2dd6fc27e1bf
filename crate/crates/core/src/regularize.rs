//! #-sums of (possibly divergent) series: #Σ_{k≥1} f(k) = −ess(F) where F
//! is the catalog primitive of f with zero constant of integration.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::essence::essence_closed_form;
use crate::expr::{BasisFunction, CatalogExpr};
use crate::numeric::ZERO;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HashSum {
    pub value: Complex64,
    /// Whether Σ f(k) converges classically, by a decay test on the terms.
    pub classically_convergent: bool,
}

/// Every term decays faster than 1/k, except possibly 1/(k+s) terms whose
/// coefficients cancel (telescoping).
fn classically_convergent(e: &CatalogExpr) -> bool {
    let mut harmonic_weight = ZERO;
    for t in e.terms() {
        match t.basis {
            BasisFunction::InverseMonomial(1) => harmonic_weight += t.coeff,
            BasisFunction::InverseMonomial(_) => {}
            BasisFunction::Exponential(z) | BasisFunction::ExpTimesX(z) if z.re < 0.0 => {}
            _ => return false,
        }
    }
    harmonic_weight.norm() <= 1e-12 * e.terms().iter().map(|t| t.coeff.norm()).fold(1.0, f64::max)
}

pub fn hash_sum(e: &CatalogExpr) -> Result<HashSum> {
    let primitive = e.antiderivative().map_err(|err| match err {
        Error::NotInCatalog(term) => Error::NoPrimitiveInCatalog(term),
        other => other,
    })?;
    Ok(HashSum {
        value: -essence_closed_form(&primitive)?,
        classically_convergent: classically_convergent(e),
    })
}
