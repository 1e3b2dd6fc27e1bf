//! Fractional finite sums over a closed catalog of function families.
//!
//! The catalog ([`expr::CatalogExpr`]) holds finite linear combinations of
//! translated monomials, inverse monomials, exponentials, x-weighted
//! exponentials, logarithms and constants. On top of it the crate provides
//!
//! - [`fracsum`]: Σ_{k=x}^{y} f(k) for complex bounds, by closed form with a
//!   series engine and a Taylor engine as independent cross-checks;
//! - [`essence`]: the essence ess(f) = d/dx Σ_{k=1}^{x} f(k) at x = 0;
//! - [`eulermac`]: the Euler–Maclaurin formula with a complex upper bound;
//! - [`regularize`]: #-sums of divergent series, #Σ f = −ess(F) with F′ = f;
//! - [`parser`]: a text front end producing catalog expressions.

pub mod error;
pub mod essence;
pub mod eulermac;
pub mod expr;
pub mod fracsum;
pub mod numeric;
pub mod parser;
pub mod regularize;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use essence::{essence, essence_derivative_identity_check, essence_numeric, EssenceResult, Provenance};
pub use eulermac::euler_maclaurin_sum;
pub use expr::{check_summable, BasisFunction, CatalogExpr, CatalogTerm, SummabilityReport};
pub use fracsum::{frac_sum, frac_sum_series, frac_sum_taylor, Method, SumResult};
pub use num_complex::Complex64;
pub use regularize::{hash_sum, HashSum};
