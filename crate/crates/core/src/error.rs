use num_complex::Complex64;
use thiserror::Error;

use crate::fracsum::SumResult;

/// Failures of the numeric engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Bernoulli index {index} exceeds the table bound {bound}")]
    BernoulliBound { index: usize, bound: usize },

    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: Complex64 },

    #[error("{0} has no primitive inside the catalog")]
    NotInCatalog(String),

    #[error("no catalog primitive for {0}")]
    NoPrimitiveInCatalog(String),

    #[error("not summable: {0}")]
    NonSummable(String),

    #[error("summation bound {bound} hits a pole of the closed form")]
    PoleAtBound { bound: Complex64 },

    #[error("term {0} does not decay at +infinity")]
    NonDecaying(String),

    #[error("series did not reach tolerance within {} terms (best {}, err {:.3e})", .best.terms_used, .best.value, .best.err_estimate)]
    MaxTermsExceeded { best: Box<SumResult> },

    #[error("the Taylor engine does not support {0}")]
    UnsupportedForTaylor(String),

    #[error("expected a polynomial, found {0}")]
    NonPolynomial(String),

    #[error("polynomial degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
