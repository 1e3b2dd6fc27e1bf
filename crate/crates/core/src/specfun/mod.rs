//! Special-function kernel: Bernoulli numbers, ζ at integers, digamma,
//! polygamma and log-gamma.
//!
//! Everything here is pure; the Bernoulli table is built once and shared.

pub mod bernoulli;
pub mod gamma;
pub mod zeta;

pub use bernoulli::{bernoulli, bernoulli_f64, BernoulliTable, Convention, BERNOULLI_BOUND};
pub use gamma::{digamma, ln_gamma, polygamma};
pub use zeta::zeta_int;
