//! Text front end: `parse` builds a [`SyntaxTree`], `canonicalize` maps it
//! onto the catalog or names the subtree it cannot represent.

mod canonical;
mod lexer;
mod syntax;

use thiserror::Error;

pub use canonical::{canonicalize, DEGREE_CAP};
pub use syntax::{parse, BinaryOp, Function, NamedConstant, SyntaxTree};

use crate::expr::CatalogExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("lexical error at byte {offset}: {message}")]
    Lexical { offset: usize, message: String },
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Lexical { offset, .. } | ParseError::Syntax { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unsupported expression `{subtree}`: {reason}")]
pub struct UnsupportedFunction {
    pub subtree: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Unsupported(#[from] UnsupportedFunction),
}

/// Parses and canonicalizes in one step.
pub fn parse_catalog(src: &str) -> Result<CatalogExpr, ExprError> {
    Ok(canonicalize(&parse(src)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::BasisFunction;
    use crate::numeric::{real, I, ONE, ZERO};
    use num_complex::Complex64;
    use std::f64::consts::{LN_2, PI};

    fn close(a: &CatalogExpr, b: &CatalogExpr) -> bool {
        a.coeff_distance(b) < 1e-14
    }

    #[test]
    fn inverse_monomial() {
        assert_eq!(parse_catalog("1/k").unwrap(), CatalogExpr::inverse_monomial(1));
        assert_eq!(parse_catalog("k^-3").unwrap(), CatalogExpr::inverse_monomial(3));
    }

    #[test]
    fn cosine_times_k() {
        let got = parse_catalog("cos(pi*k)*k").unwrap();
        let want = CatalogExpr::exp_times_x(I * PI) * real(0.5) + CatalogExpr::exp_times_x(-I * PI) * real(0.5);
        assert!(close(&got, &want), "{got}");
    }

    #[test]
    fn power_of_two() {
        let got = parse_catalog("2^k").unwrap();
        assert_eq!(got, CatalogExpr::exponential(real(LN_2)));
        assert!((got.evaluate(real(3.0)) - 8.0).norm() < 1e-13);
    }

    #[test]
    fn minus_one_to_the_k_is_principal() {
        let got = parse_catalog("(-1)^k").unwrap();
        assert_eq!(got, CatalogExpr::exponential(I * PI));
    }

    #[test]
    fn polynomials_expand() {
        let got = parse_catalog("(k+1)^2 - 2*k").unwrap();
        assert_eq!(got, CatalogExpr::monomial(2) + CatalogExpr::constant(ONE));
    }

    #[test]
    fn partial_fractions() {
        let got = parse_catalog("1/(k*(k+1))").unwrap();
        assert!(close(&got, &CatalogExpr::reciprocal_consecutive(ZERO)), "{got}");
        let got = parse_catalog("k/(k+2)").unwrap();
        let want = CatalogExpr::constant(ONE)
            + CatalogExpr::term(real(-2.0), BasisFunction::InverseMonomial(1), real(2.0));
        assert!(close(&got, &want), "{got}");
    }

    #[test]
    fn shifted_logarithm_and_exponential() {
        let got = parse_catalog("ln(2*k+1)").unwrap();
        let want = CatalogExpr::term(ONE, BasisFunction::Logarithm, real(0.5)) + CatalogExpr::constant(real(LN_2));
        assert!(close(&got, &want), "{got}");
        let got = parse_catalog("exp(-k/2)*(k+3)").unwrap();
        let z = real(-0.5);
        let want = CatalogExpr::exp_times_x(z) + CatalogExpr::exponential(z) * real(3.0);
        assert!(close(&got, &want), "{got}");
    }

    #[test]
    fn rejections_name_the_subtree() {
        let err = parse_catalog("1 + ln(k)^2").unwrap_err();
        let ExprError::Unsupported(u) = err else { panic!("{err:?}") };
        assert_eq!(u.subtree, "(ln(k)^2.0)");
        assert!(matches!(parse_catalog("exp(k^2)"), Err(ExprError::Unsupported(_))));
        assert!(matches!(parse_catalog("k^17"), Err(ExprError::Unsupported(_))));
        assert!(matches!(parse_catalog("exp(k)*k^2"), Err(ExprError::Unsupported(_))));
        assert!(matches!(parse_catalog("1/(k^2+1)"), Err(ExprError::Unsupported(_))));
        assert!(matches!(parse_catalog("k/0"), Err(ExprError::Unsupported(_))));
        assert!(matches!(parse_catalog("2k"), Err(ExprError::Parse(ParseError::Syntax { offset: 1, .. }))));
    }

    #[test]
    fn rendered_expressions_round_trip() {
        let e = CatalogExpr::term(Complex64::new(1.5, -2.0), BasisFunction::InverseMonomial(2), Complex64::new(0.25, 1.0))
            + CatalogExpr::exp_times_x(Complex64::new(-0.3, 2.0)) * Complex64::new(-1.0, 0.5)
            + CatalogExpr::term(real(-3.0), BasisFunction::Logarithm, real(2.5))
            + CatalogExpr::monomial(4) * real(0.1)
            + CatalogExpr::constant(I);
        assert_eq!(parse_catalog(&e.to_string()).unwrap(), e);
        assert_eq!(parse_catalog(&CatalogExpr::zero().to_string()).unwrap(), CatalogExpr::zero());
    }
}
