#![allow(dead_code)]

use fracsum_core::verify::is_clear;
use fracsum_core::{BasisFunction, CatalogExpr, CatalogTerm, Complex64};
use proptest::prelude::*;

pub fn complex(re: std::ops::RangeInclusive<f64>, im: std::ops::RangeInclusive<f64>) -> impl Strategy<Value = Complex64> {
    (re, im).prop_map(|(a, b)| Complex64::new(a, b))
}

pub fn coeff() -> impl Strategy<Value = Complex64> {
    complex(-2.0..=2.0, -2.0..=2.0)
}

/// Exponent of an exponential family, away from e^z = 1.
pub fn exponent() -> impl Strategy<Value = Complex64> {
    complex(-1.0..=0.3, -3.0..=3.0).prop_filter("e^z near 1", |z| (z.exp() - 1.0).norm() > 0.25)
}

pub fn polynomial_term() -> impl Strategy<Value = CatalogTerm> {
    (coeff(), 0u32..=4, complex(-1.0..=1.0, -1.0..=1.0)).prop_map(|(c, a, s)| {
        let basis = if a == 0 { BasisFunction::Constant } else { BasisFunction::Monomial(a) };
        CatalogTerm::new(c, basis, s)
    })
}

pub fn inverse_term() -> impl Strategy<Value = CatalogTerm> {
    (coeff(), 1u32..=3, complex(0.0..=1.5, -1.0..=1.0))
        .prop_map(|(c, a, s)| CatalogTerm::new(c, BasisFunction::InverseMonomial(a), s))
}

pub fn exponential_term() -> impl Strategy<Value = CatalogTerm> {
    (coeff(), exponent()).prop_map(|(c, z)| CatalogTerm::new(c, BasisFunction::Exponential(z), Complex64::new(0.0, 0.0)))
}

pub fn exp_times_x_term() -> impl Strategy<Value = CatalogTerm> {
    (coeff(), exponent()).prop_map(|(c, z)| CatalogTerm::new(c, BasisFunction::ExpTimesX(z), Complex64::new(0.0, 0.0)))
}

pub fn log_term() -> impl Strategy<Value = CatalogTerm> {
    (coeff(), complex(0.2..=1.5, -1.0..=1.0)).prop_map(|(c, s)| CatalogTerm::new(c, BasisFunction::Logarithm, s))
}

pub fn any_term() -> impl Strategy<Value = CatalogTerm> {
    prop_oneof![polynomial_term(), inverse_term(), exponential_term(), exp_times_x_term(), log_term()]
}

/// Terms whose catalog primitive exists (everything except logarithms).
pub fn integrable_term() -> impl Strategy<Value = CatalogTerm> {
    prop_oneof![polynomial_term(), inverse_term(), exponential_term(), exp_times_x_term()]
}

pub fn catalog(term: impl Strategy<Value = CatalogTerm>) -> impl Strategy<Value = CatalogExpr> {
    prop::collection::vec(term, 1..=3).prop_map(CatalogExpr::from_terms)
}

pub fn any_catalog() -> impl Strategy<Value = CatalogExpr> {
    catalog(any_term())
}

/// |a − b| / max(1, |b|)
pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Whether `t + o` is clear of the singular points of `e` for every offset.
pub fn clear(e: &CatalogExpr, t: Complex64, offsets: &[f64]) -> bool {
    offsets.iter().all(|&o| is_clear(e, t + o))
}
