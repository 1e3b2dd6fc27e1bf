//! The function catalog: finite linear combinations of translated basis
//! functions, with evaluation, differentiation and antidifferentiation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{binomial, normalize_zero, real, I, ONE, ZERO};

/// One catalog family.
///
/// Exponential families carry the exponent parameter z of e^{zx}; a power
/// u^x is stored as z = ln u on the principal branch.
#[derive(Debug, Clone, Copy)]
pub enum BasisFunction {
    /// x ↦ 1
    Constant,
    /// x ↦ x^a, a ≥ 1
    Monomial(u32),
    /// x ↦ x^{−a}, a ≥ 1
    InverseMonomial(u32),
    /// x ↦ e^{zx}
    Exponential(Complex64),
    /// x ↦ e^{zx}·x
    ExpTimesX(Complex64),
    /// x ↦ ln x
    Logarithm,
}

impl BasisFunction {
    fn tag(&self) -> u8 {
        match self {
            BasisFunction::Constant => 0,
            BasisFunction::Monomial(_) => 1,
            BasisFunction::InverseMonomial(_) => 2,
            BasisFunction::Exponential(_) => 3,
            BasisFunction::ExpTimesX(_) => 4,
            BasisFunction::Logarithm => 5,
        }
    }

    fn key(&self) -> (u8, u32, f64, f64) {
        match *self {
            BasisFunction::Monomial(a) | BasisFunction::InverseMonomial(a) => (self.tag(), a, 0.0, 0.0),
            BasisFunction::Exponential(z) | BasisFunction::ExpTimesX(z) => (self.tag(), 0, z.re, z.im),
            _ => (self.tag(), 0, 0.0, 0.0),
        }
    }

    /// Value at `w` with the extension-by-zero convention at singular points.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        match *self {
            BasisFunction::Constant => ONE,
            BasisFunction::Monomial(a) => w.powu(a),
            BasisFunction::InverseMonomial(a) => {
                if w == ZERO {
                    ZERO
                } else {
                    w.powu(a).inv()
                }
            }
            BasisFunction::Exponential(z) => (z * w).exp(),
            BasisFunction::ExpTimesX(z) => (z * w).exp() * w,
            BasisFunction::Logarithm => {
                if w == ZERO {
                    ZERO
                } else {
                    w.ln()
                }
            }
        }
    }

    /// Whether the family is a polynomial (Constant or Monomial).
    pub fn is_polynomial(&self) -> bool {
        matches!(self, BasisFunction::Constant | BasisFunction::Monomial(_))
    }
}

fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.total_cmp(&b)
}

fn cmp_key(a: (u8, u32, f64, f64), b: (u8, u32, f64, f64)) -> Ordering {
    a.0.cmp(&b.0)
        .then(a.1.cmp(&b.1))
        .then(cmp_f64(a.2, b.2))
        .then(cmp_f64(a.3, b.3))
}

impl PartialEq for BasisFunction {
    fn eq(&self, other: &Self) -> bool {
        cmp_key(self.key(), other.key()) == Ordering::Equal
    }
}

impl Eq for BasisFunction {}

impl PartialOrd for BasisFunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasisFunction {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_key(self.key(), other.key())
    }
}

/// x ↦ coeff · basis(x + shift)
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogTerm {
    pub coeff: Complex64,
    pub shift: Complex64,
    pub basis: BasisFunction,
}

impl CatalogTerm {
    pub fn new(coeff: Complex64, basis: BasisFunction, shift: Complex64) -> Self {
        Self { coeff, shift, basis }
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeff * self.basis.eval(x + self.shift)
    }

    fn sort_cmp(&self, other: &Self) -> Ordering {
        self.basis
            .cmp(&other.basis)
            .then(cmp_f64(self.shift.re, other.shift.re))
            .then(cmp_f64(self.shift.im, other.shift.im))
    }

    fn same_slot(&self, other: &Self) -> bool {
        self.sort_cmp(other) == Ordering::Equal
    }

    /// The same basis and shift with unit coefficient.
    pub fn unit(&self) -> CatalogTerm {
        CatalogTerm { coeff: ONE, ..*self }
    }
}

/// A finite linear combination of catalog terms, always kept canonical:
/// shifts of polynomial and exponential families are folded into the
/// coefficients, terms with equal (basis, shift) are merged, exact zeros are
/// dropped and the remainder is sorted.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CatalogExpr {
    terms: Vec<CatalogTerm>,
}

impl CatalogExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = CatalogTerm>) -> Self {
        let mut expanded = Vec::new();
        for t in terms {
            expand_term(t, &mut expanded);
        }
        expanded.sort_by(|a, b| a.sort_cmp(b));
        let mut merged: Vec<CatalogTerm> = Vec::with_capacity(expanded.len());
        for t in expanded {
            match merged.last_mut() {
                Some(last) if last.same_slot(&t) => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != ZERO);
        for t in &mut merged {
            t.coeff = normalize_zero(t.coeff);
        }
        Self { terms: merged }
    }

    pub fn term(coeff: Complex64, basis: BasisFunction, shift: Complex64) -> Self {
        Self::from_terms([CatalogTerm::new(coeff, basis, shift)])
    }

    fn unit(basis: BasisFunction) -> Self {
        Self::term(ONE, basis, ZERO)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::term(c, BasisFunction::Constant, ZERO)
    }

    /// x ↦ x^a
    pub fn monomial(a: u32) -> Self {
        Self::unit(BasisFunction::Monomial(a))
    }

    /// x ↦ x^{−a}
    pub fn inverse_monomial(a: u32) -> Self {
        Self::unit(BasisFunction::InverseMonomial(a))
    }

    /// x ↦ e^{zx}
    pub fn exponential(z: Complex64) -> Self {
        Self::unit(BasisFunction::Exponential(z))
    }

    /// x ↦ e^{zx}·x
    pub fn exp_times_x(z: Complex64) -> Self {
        Self::unit(BasisFunction::ExpTimesX(z))
    }

    pub fn logarithm() -> Self {
        Self::unit(BasisFunction::Logarithm)
    }

    /// x ↦ u^x = e^{x ln u}, principal logarithm.
    pub fn power_of(u: Complex64) -> Self {
        Self::exponential(u.ln())
    }

    /// x ↦ cos(zx) = (e^{izx} + e^{−izx})/2
    pub fn cos(z: Complex64) -> Self {
        (Self::exponential(I * z) + Self::exponential(-I * z)) * real(0.5)
    }

    /// x ↦ sin(zx) = (e^{izx} − e^{−izx})/(2i)
    pub fn sin(z: Complex64) -> Self {
        (Self::exponential(I * z) - Self::exponential(-I * z)) * (2.0 * I).inv()
    }

    /// x ↦ cos(zx)·x
    pub fn cos_times_x(z: Complex64) -> Self {
        (Self::exp_times_x(I * z) + Self::exp_times_x(-I * z)) * real(0.5)
    }

    /// x ↦ sin(zx)·x
    pub fn sin_times_x(z: Complex64) -> Self {
        (Self::exp_times_x(I * z) - Self::exp_times_x(-I * z)) * (2.0 * I).inv()
    }

    /// x ↦ 1/((x+s)(x+s+1)), stored as 1/(x+s) − 1/(x+s+1).
    pub fn reciprocal_consecutive(s: Complex64) -> Self {
        Self::from_terms([
            CatalogTerm::new(ONE, BasisFunction::InverseMonomial(1), s),
            CatalogTerm::new(-ONE, BasisFunction::InverseMonomial(1), s + 1.0),
        ])
    }

    pub fn terms(&self) -> &[CatalogTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Pointwise value; singular terms contribute zero.
    pub fn evaluate(&self, x: Complex64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    /// x ↦ f(x + s)
    pub fn translate(&self, s: Complex64) -> Self {
        Self::from_terms(self.terms.iter().map(|t| CatalogTerm { shift: t.shift + s, ..*t }))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_terms(self.terms.iter().map(|t| CatalogTerm { coeff: t.coeff * c, ..*t }))
    }

    /// Exact derivative; the catalog is closed under differentiation.
    pub fn differentiate(&self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + 1);
        for t in &self.terms {
            let (c, s) = (t.coeff, t.shift);
            match t.basis {
                BasisFunction::Constant => {}
                BasisFunction::Monomial(a) => {
                    let basis = if a == 1 { BasisFunction::Constant } else { BasisFunction::Monomial(a - 1) };
                    out.push(CatalogTerm::new(c * f64::from(a), basis, s));
                }
                BasisFunction::InverseMonomial(a) => {
                    out.push(CatalogTerm::new(-c * f64::from(a), BasisFunction::InverseMonomial(a + 1), s));
                }
                BasisFunction::Exponential(z) => {
                    out.push(CatalogTerm::new(c * z, BasisFunction::Exponential(z), s));
                }
                BasisFunction::ExpTimesX(z) => {
                    out.push(CatalogTerm::new(c * z, BasisFunction::ExpTimesX(z), s));
                    out.push(CatalogTerm::new(c, BasisFunction::Exponential(z), s));
                }
                BasisFunction::Logarithm => {
                    out.push(CatalogTerm::new(c, BasisFunction::InverseMonomial(1), s));
                }
            }
        }
        Self::from_terms(out)
    }

    /// Term-wise primitive with zero constant of integration.
    pub fn antiderivative(&self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.terms.len() + 1);
        for t in &self.terms {
            let (c, s) = (t.coeff, t.shift);
            match t.basis {
                BasisFunction::Constant => out.push(CatalogTerm::new(c, BasisFunction::Monomial(1), s)),
                BasisFunction::Monomial(a) => {
                    out.push(CatalogTerm::new(c / f64::from(a + 1), BasisFunction::Monomial(a + 1), s));
                }
                BasisFunction::InverseMonomial(1) => out.push(CatalogTerm::new(c, BasisFunction::Logarithm, s)),
                BasisFunction::InverseMonomial(a) => {
                    out.push(CatalogTerm::new(-c / f64::from(a - 1), BasisFunction::InverseMonomial(a - 1), s));
                }
                BasisFunction::Exponential(z) => out.push(CatalogTerm::new(c / z, BasisFunction::Exponential(z), s)),
                BasisFunction::ExpTimesX(z) => {
                    out.push(CatalogTerm::new(c / z, BasisFunction::ExpTimesX(z), s));
                    out.push(CatalogTerm::new(-c / (z * z), BasisFunction::Exponential(z), s));
                }
                BasisFunction::Logarithm => {
                    return Err(Error::NotInCatalog(CatalogExpr::from_terms([*t]).to_string()))
                }
            }
        }
        Ok(Self::from_terms(out))
    }

    /// Largest coefficient magnitude of `self − other`, relative to the
    /// largest coefficient of either side (floored at 1).
    pub fn coeff_distance(&self, other: &CatalogExpr) -> f64 {
        let scale = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|t| t.coeff.norm())
            .fold(1.0, f64::max);
        let diff = self.clone() - other.clone();
        diff.terms.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max) / scale
    }

    /// Whether every term is a Constant or Monomial.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| t.basis.is_polynomial())
    }

    /// Highest monomial power, or `None` if not a polynomial. The zero
    /// polynomial reports degree 0.
    pub fn polynomial_degree(&self) -> Option<u32> {
        self.terms.iter().try_fold(0, |deg, t| match t.basis {
            BasisFunction::Constant => Some(deg),
            BasisFunction::Monomial(a) => Some(deg.max(a)),
            _ => None,
        })
    }
}

/// Folds shifts that can be absorbed exactly and pushes the result.
fn expand_term(t: CatalogTerm, out: &mut Vec<CatalogTerm>) {
    let shift = normalize_zero(t.shift);
    let c = t.coeff;
    match t.basis {
        BasisFunction::Constant => out.push(CatalogTerm::new(c, BasisFunction::Constant, ZERO)),
        BasisFunction::Monomial(0) => out.push(CatalogTerm::new(c, BasisFunction::Constant, ZERO)),
        BasisFunction::Monomial(a) => {
            if shift == ZERO {
                out.push(CatalogTerm::new(c, BasisFunction::Monomial(a), ZERO));
                return;
            }
            // (x + s)^a = Σ_j C(a, j) s^{a−j} x^j
            for j in 0..=a {
                let basis = if j == 0 { BasisFunction::Constant } else { BasisFunction::Monomial(j) };
                out.push(CatalogTerm::new(c * shift.powu(a - j) * binomial(a, j), basis, ZERO));
            }
        }
        BasisFunction::InverseMonomial(0) => out.push(CatalogTerm::new(c, BasisFunction::Constant, ZERO)),
        BasisFunction::InverseMonomial(a) => out.push(CatalogTerm::new(c, BasisFunction::InverseMonomial(a), shift)),
        BasisFunction::Exponential(z) => {
            let z = normalize_zero(z);
            if z == ZERO {
                out.push(CatalogTerm::new(c, BasisFunction::Constant, ZERO));
            } else {
                let factor = if shift == ZERO { ONE } else { (z * shift).exp() };
                out.push(CatalogTerm::new(c * factor, BasisFunction::Exponential(z), ZERO));
            }
        }
        BasisFunction::ExpTimesX(z) => {
            let z = normalize_zero(z);
            if z == ZERO {
                expand_term(CatalogTerm::new(c, BasisFunction::Monomial(1), shift), out);
                return;
            }
            // e^{z(x+s)}(x+s) = e^{zs}(e^{zx}x + s e^{zx})
            let factor = if shift == ZERO { ONE } else { (z * shift).exp() };
            out.push(CatalogTerm::new(c * factor, BasisFunction::ExpTimesX(z), ZERO));
            if shift != ZERO {
                out.push(CatalogTerm::new(c * factor * shift, BasisFunction::Exponential(z), ZERO));
            }
        }
        BasisFunction::Logarithm => out.push(CatalogTerm::new(c, BasisFunction::Logarithm, shift)),
    }
}

impl Add for CatalogExpr {
    type Output = CatalogExpr;

    fn add(self, rhs: CatalogExpr) -> CatalogExpr {
        CatalogExpr::from_terms(self.terms.into_iter().chain(rhs.terms))
    }
}

impl Sub for CatalogExpr {
    type Output = CatalogExpr;

    fn sub(self, rhs: CatalogExpr) -> CatalogExpr {
        self + (-rhs)
    }
}

impl Neg for CatalogExpr {
    type Output = CatalogExpr;

    fn neg(self) -> CatalogExpr {
        self.scale(-ONE)
    }
}

impl Mul<Complex64> for CatalogExpr {
    type Output = CatalogExpr;

    fn mul(self, rhs: Complex64) -> CatalogExpr {
        self.scale(rhs)
    }
}

/// Writes a complex number as a parenthesized literal that the parser reads
/// back bit-exactly.
pub(crate) fn write_complex(f: &mut impl fmt::Write, z: Complex64) -> fmt::Result {
    let z = normalize_zero(z);
    if z.im == 0.0 {
        write!(f, "({:?})", z.re)
    } else if z.re == 0.0 {
        if z.im < 0.0 {
            write!(f, "(-{:?}i)", -z.im)
        } else {
            write!(f, "({:?}i)", z.im)
        }
    } else if z.im < 0.0 {
        write!(f, "({:?}-{:?}i)", z.re, -z.im)
    } else {
        write!(f, "({:?}+{:?}i)", z.re, z.im)
    }
}

struct Shifted(Complex64);

impl fmt::Display for Shifted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == ZERO {
            write!(f, "k")
        } else {
            write!(f, "(k+")?;
            write_complex(f, self.0)?;
            write!(f, ")")
        }
    }
}

impl fmt::Display for CatalogTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_complex(f, self.coeff)?;
        let w = Shifted(self.shift);
        match self.basis {
            BasisFunction::Constant => Ok(()),
            BasisFunction::Monomial(a) => write!(f, "*{w}^{a}"),
            BasisFunction::InverseMonomial(a) => write!(f, "/{w}^{a}"),
            BasisFunction::Exponential(z) => {
                write!(f, "*exp(")?;
                write_complex(f, z)?;
                write!(f, "*{w})")
            }
            BasisFunction::ExpTimesX(z) => {
                write!(f, "*exp(")?;
                write_complex(f, z)?;
                write!(f, "*{w})*{w}")
            }
            BasisFunction::Logarithm => {
                if self.shift == ZERO {
                    write!(f, "*ln(k)")
                } else {
                    write!(f, "*ln(k+")?;
                    write_complex(f, self.shift)?;
                    write!(f, ")")
                }
            }
        }
    }
}

/// Renders as text in the parser's grammar with the bound variable `k`.
impl fmt::Display for CatalogExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Terms that make an expression non-summable.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SummabilityReport {
    pub offending: Vec<CatalogTerm>,
}

impl SummabilityReport {
    pub fn is_summable(&self) -> bool {
        self.offending.is_empty()
    }
}

/// Exponent parameters with e^{z/2} = −1 give f(x + 1/2) = −f(x), which no
/// fractional sum obeying the axioms can handle.
pub fn has_half_period_antisymmetry(z: Complex64) -> bool {
    ((z * 0.5).exp() + ONE).norm() <= 1e-12
}

/// Flags every Exponential or ExpTimesX term with z = 2πi·(odd integer).
pub fn check_summable(e: &CatalogExpr) -> SummabilityReport {
    let offending = e
        .terms()
        .iter()
        .filter(|t| match t.basis {
            BasisFunction::Exponential(z) | BasisFunction::ExpTimesX(z) => has_half_period_antisymmetry(z),
            _ => false,
        })
        .copied()
        .collect();
    SummabilityReport { offending }
}
