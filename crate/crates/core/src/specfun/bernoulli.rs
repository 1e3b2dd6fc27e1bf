//! Exact Bernoulli numbers.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest index held in the table.
pub const BERNOULLI_BOUND: usize = 128;

/// Sign convention for B_1. Every other index is convention-independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// B_1 = +1/2.
    Plus,
    /// B_1 = −1/2.
    Minus,
}

/// B_0..B_N in exact rational arithmetic, stored in the `Minus` convention.
#[derive(Debug)]
pub struct BernoulliTable {
    minus: Vec<BigRational>,
    floats: Vec<f64>,
}

impl BernoulliTable {
    /// Builds the table from Σ_{k=0}^{n} C(n+1, k)·B_k = 0, n ≥ 1.
    pub fn new(bound: usize) -> Self {
        let mut minus: Vec<BigRational> = Vec::with_capacity(bound + 1);
        minus.push(BigRational::one());
        // binomial row C(n+1, ·), updated in place from row n.
        let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
        for n in 1..=bound {
            let mut next = vec![BigInt::one(); n + 2];
            for k in 1..=n {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            if n >= 3 && n % 2 == 1 {
                minus.push(BigRational::zero());
                continue;
            }
            // Sum over the common denominator so only one reduction happens per entry.
            let common = minus.iter().fold(BigInt::one(), |l, b| l.lcm(b.denom()));
            let acc: BigInt = minus
                .iter()
                .zip(&row)
                .filter(|(b, _)| !b.is_zero())
                .map(|(b, c)| b.numer() * (&common / b.denom()) * c)
                .sum();
            minus.push(BigRational::new(-acc, common * &row[n]));
        }
        let floats = minus.iter().map(rational_to_f64).collect();
        Self { minus, floats }
    }

    pub fn bound(&self) -> usize {
        self.minus.len() - 1
    }

    pub fn get(&self, n: usize, convention: Convention) -> Result<BigRational> {
        let value = self.minus.get(n).ok_or(Error::BernoulliBound {
            index: n,
            bound: self.bound(),
        })?;
        Ok(if n == 1 && convention == Convention::Plus {
            -value.clone()
        } else {
            value.clone()
        })
    }

    pub fn get_f64(&self, n: usize, convention: Convention) -> Result<f64> {
        let value = *self.floats.get(n).ok_or(Error::BernoulliBound {
            index: n,
            bound: self.bound(),
        })?;
        Ok(if n == 1 && convention == Convention::Plus {
            -value
        } else {
            value
        })
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // to_f64 can give up on huge numerators and denominators; go through
        // the ratio of their logarithms' worth of shifted integers instead.
        let shift = r.denom().bits().max(r.numer().bits()).saturating_sub(900);
        let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    })
}

/// The process-wide table, built on first use.
pub fn table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::new(BERNOULLI_BOUND))
}

/// Exact B_n in the requested convention.
pub fn bernoulli(n: usize, convention: Convention) -> Result<BigRational> {
    table().get(n, convention)
}

/// B_n rounded to f64.
pub fn bernoulli_f64(n: usize, convention: Convention) -> Result<f64> {
    table().get_f64(n, convention)
}
