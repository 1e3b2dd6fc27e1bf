//! Canonicalization of syntax trees into catalog expressions.
//!
//! Trees are folded bottom-up into [`Form`]s, linear combinations of three
//! atom kinds: `e^{zk}·k^m`, `(k+s)^{−a}` and `ln(k+s)`. Products are
//! expanded, partial fractions split products of distinct poles, and the
//! final form is mapped onto catalog terms.

use num_complex::Complex64;

use super::syntax::{complex_pow, BinaryOp, Function, SyntaxTree};
use super::UnsupportedFunction;
use crate::expr::{BasisFunction, CatalogExpr, CatalogTerm};
use crate::numeric::{binomial, normalize_zero, I, ONE, ZERO};

/// Cap on polynomial degree and on total pole order in a product.
pub const DEGREE_CAP: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Atom {
    /// e^{zk}·k^m; z = 0 gives a plain power of k.
    PolyExp { z: Complex64, m: u32 },
    /// (k+s)^{−a}, a ≥ 1
    Inv { a: u32, s: Complex64 },
    /// ln(k+s)
    Log { s: Complex64 },
}

impl Atom {
    fn power(m: u32) -> Self {
        Atom::PolyExp { z: ZERO, m }
    }
}

#[derive(Debug, Clone, Default)]
struct Form {
    terms: Vec<(Atom, Complex64)>,
}

type Step<T> = std::result::Result<T, String>;

impl Form {
    fn constant(c: Complex64) -> Self {
        Self::atom(Atom::power(0), c)
    }

    fn atom(atom: Atom, c: Complex64) -> Self {
        let mut f = Form::default();
        f.push(atom, c);
        f
    }

    fn push(&mut self, atom: Atom, c: Complex64) {
        let atom = match atom {
            Atom::PolyExp { z, m } => Atom::PolyExp { z: normalize_zero(z), m },
            Atom::Inv { a, s } => Atom::Inv { a, s: normalize_zero(s) },
            Atom::Log { s } => Atom::Log { s: normalize_zero(s) },
        };
        match self.terms.iter_mut().find(|(a, _)| *a == atom) {
            Some((_, coeff)) => *coeff += c,
            None => self.terms.push((atom, c)),
        }
    }

    fn add(mut self, other: Form) -> Self {
        for (a, c) in other.terms {
            self.push(a, c);
        }
        self
    }

    fn scale(mut self, k: Complex64) -> Self {
        for (_, c) in &mut self.terms {
            *c *= k;
        }
        self
    }

    fn live(&self) -> impl Iterator<Item = &(Atom, Complex64)> {
        self.terms.iter().filter(|(_, c)| *c != ZERO)
    }

    /// (c1, c0) when the form is c1·k + c0.
    fn as_linear(&self) -> Option<(Complex64, Complex64)> {
        let (mut c1, mut c0) = (ZERO, ZERO);
        for &(atom, c) in self.live() {
            match atom {
                Atom::PolyExp { z, m: 0 } if z == ZERO => c0 += c,
                Atom::PolyExp { z, m: 1 } if z == ZERO => c1 += c,
                _ => return None,
            }
        }
        Some((c1, c0))
    }

    fn as_constant(&self) -> Option<Complex64> {
        match self.as_linear() {
            Some((c1, c0)) if c1 == ZERO => Some(c0),
            _ => None,
        }
    }

    fn mul(&self, other: &Form) -> Step<Form> {
        let mut out = Form::default();
        for &(a, ca) in self.live() {
            for &(b, cb) in other.live() {
                out = out.add(mul_atoms(a, b)?.scale(ca * cb));
            }
        }
        Ok(out)
    }

    fn reciprocal(&self) -> Step<Form> {
        let live: Vec<_> = self.live().copied().collect();
        if let [(atom, c)] = live[..] {
            let inv_c = ONE / c;
            return Ok(match atom {
                Atom::PolyExp { z, m: 0 } => Form::atom(Atom::PolyExp { z: -z, m: 0 }, inv_c),
                Atom::PolyExp { z, m } if z == ZERO => Form::atom(Atom::Inv { a: m, s: ZERO }, inv_c),
                Atom::Inv { a, s } => shifted_power(a, s)?.scale(inv_c),
                _ => return Err("reciprocal is not in the catalog".into()),
            });
        }
        match self.as_linear() {
            Some((c1, _)) if c1 == ZERO => Err("division by zero".into()),
            Some((c1, c0)) => Ok(Form::atom(Atom::Inv { a: 1, s: c0 / c1 }, ONE / c1)),
            None => Err("reciprocal is not in the catalog".into()),
        }
    }

    fn powi(&self, n: u32) -> Step<Form> {
        let mut out = Form::constant(ONE);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }
}

/// (k+s)^a expanded in powers of k.
fn shifted_power(a: u32, s: Complex64) -> Step<Form> {
    if a > DEGREE_CAP {
        return Err(format!("polynomial degree {a} exceeds the cap {DEGREE_CAP}"));
    }
    let mut out = Form::default();
    for j in 0..=a {
        out.push(Atom::power(j), s.powu(a - j) * binomial(a, j));
    }
    Ok(out)
}

/// k^m·(k+s)^{−a}, rewriting k = (k+s) − s.
fn power_over_pole(m: u32, a: u32, s: Complex64) -> Step<Form> {
    let mut out = Form::default();
    for j in 0..=m {
        let c = (-s).powu(m - j) * binomial(m, j);
        if j >= a {
            out = out.add(shifted_power(j - a, s)?.scale(c));
        } else {
            out.push(Atom::Inv { a: a - j, s }, c);
        }
    }
    Ok(out)
}

/// (k+s)^{−a}·(k+t)^{−b} as a sum of simple pole powers.
fn pole_product(a: u32, s: Complex64, b: u32, t: Complex64) -> Step<Form> {
    if a + b > DEGREE_CAP {
        return Err(format!("pole order {} exceeds the cap {DEGREE_CAP}", a + b));
    }
    if a == 0 {
        return Ok(Form::atom(Atom::Inv { a: b, s: t }, ONE));
    }
    if b == 0 {
        return Ok(Form::atom(Atom::Inv { a, s }, ONE));
    }
    if s == t {
        return Ok(Form::atom(Atom::Inv { a: a + b, s }, ONE));
    }
    // 1/((k+s)(k+t)) = (1/(k+s) − 1/(k+t))/(t−s)
    let w = ONE / (t - s);
    let left = pole_product(a, s, b - 1, t)?;
    let right = pole_product(a - 1, s, b, t)?;
    Ok(left.scale(w).add(right.scale(-w)))
}

fn mul_atoms(a: Atom, b: Atom) -> Step<Form> {
    use Atom::*;
    match (a, b) {
        (PolyExp { z, m }, PolyExp { z: w, m: n }) => {
            let (z, m) = (z + w, m + n);
            if z == ZERO && m > DEGREE_CAP {
                return Err(format!("polynomial degree {m} exceeds the cap {DEGREE_CAP}"));
            }
            if z != ZERO && m > 1 {
                return Err("exponential times a power of k above 1 is not in the catalog".into());
            }
            Ok(Form::atom(PolyExp { z, m }, ONE))
        }
        (PolyExp { z, m: 0 }, other) | (other, PolyExp { z, m: 0 }) if z == ZERO => Ok(Form::atom(other, ONE)),
        (PolyExp { z, m }, Inv { a, s }) | (Inv { a, s }, PolyExp { z, m }) if z == ZERO => power_over_pole(m, a, s),
        (Inv { a, s }, Inv { a: b, s: t }) => pole_product(a, s, b, t),
        (Log { .. }, _) | (_, Log { .. }) => Err("product with a logarithm is not in the catalog".into()),
        _ => Err("exponential over a pole is not in the catalog".into()),
    }
}

fn unsupported(node: &SyntaxTree, reason: impl Into<String>) -> UnsupportedFunction {
    UnsupportedFunction {
        subtree: node.to_string(),
        reason: reason.into(),
    }
}

fn fold(node: &SyntaxTree) -> Result<Form, UnsupportedFunction> {
    if let Some(c) = node.evaluate_constant() {
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(unsupported(node, "constant subexpression is not finite"));
        }
        return Ok(Form::constant(c));
    }
    match node {
        SyntaxTree::Var => Ok(Form::atom(Atom::power(1), ONE)),
        SyntaxTree::Neg(a) => Ok(fold(a)?.scale(-ONE)),
        SyntaxTree::Binary(op, a, b) => match op {
            BinaryOp::Add => Ok(fold(a)?.add(fold(b)?)),
            BinaryOp::Sub => Ok(fold(a)?.add(fold(b)?.scale(-ONE))),
            BinaryOp::Mul => fold(a)?.mul(&fold(b)?).map_err(|r| unsupported(node, r)),
            BinaryOp::Div => {
                let den = reciprocal(b)?;
                fold(a)?.mul(&den).map_err(|r| unsupported(node, r))
            }
            BinaryOp::Pow => fold_pow(node, a, b),
        },
        SyntaxTree::Call(f, arg) => fold_call(node, *f, arg),
        SyntaxTree::Number { .. } | SyntaxTree::Constant(_) => unreachable!("constants fold above"),
    }
}

fn integer_exponent(node: &SyntaxTree) -> Option<i64> {
    let c = node.evaluate_constant()?;
    (c.im == 0.0 && c.re.fract() == 0.0 && c.re.abs() <= 1e6).then_some(c.re as i64)
}

fn fold_pow(node: &SyntaxTree, base: &SyntaxTree, exponent: &SyntaxTree) -> Result<Form, UnsupportedFunction> {
    if let Some(n) = integer_exponent(exponent) {
        let b = if n >= 0 { fold(base)? } else { reciprocal(base)? };
        if n.unsigned_abs() > u64::from(DEGREE_CAP) && b.as_constant().is_none() {
            return Err(unsupported(node, format!("exponent {n} exceeds the cap {DEGREE_CAP}")));
        }
        return b.powi(n.unsigned_abs() as u32).map_err(|r| unsupported(node, r));
    }
    let Some(b) = base.evaluate_constant() else {
        return Err(unsupported(node, "power with a non-integer exponent of a k-dependent base"));
    };
    if b == ZERO {
        return Err(unsupported(node, "zero raised to a k-dependent power"));
    }
    let Some((c1, c0)) = fold(exponent)?.as_linear() else {
        return Err(unsupported(node, "exponent is not linear in k"));
    };
    // b^{c0 + c1 k} = b^{c0} e^{c1 ln(b) k} on the principal branch
    Ok(Form::atom(Atom::PolyExp { z: c1 * b.ln(), m: 0 }, complex_pow(b, c0)))
}

fn fold_call(node: &SyntaxTree, f: Function, arg: &SyntaxTree) -> Result<Form, UnsupportedFunction> {
    let Some((c1, c0)) = fold(arg)?.as_linear() else {
        return Err(unsupported(node, "argument is not linear in k"));
    };
    let exp_of = |z: Complex64, c: Complex64| Form::atom(Atom::PolyExp { z, m: 0 }, c);
    Ok(match f {
        Function::Exp => exp_of(c1, c0.exp()),
        Function::Cos => {
            let (p, q) = ((I * c0).exp() * 0.5, (-I * c0).exp() * 0.5);
            exp_of(I * c1, p).add(exp_of(-I * c1, q))
        }
        Function::Sin => {
            let (p, q) = ((I * c0).exp() / (2.0 * I), (-I * c0).exp() / (2.0 * I));
            exp_of(I * c1, p).add(exp_of(-I * c1, -q))
        }
        Function::Ln => {
            if c1.im != 0.0 || c1.re <= 0.0 {
                return Err(unsupported(node, "logarithm needs a positive real slope in k"));
            }
            Form::atom(Atom::Log { s: c0 / c1 }, ONE).add(Form::constant(c1.ln()))
        }
    })
}

/// 1/node, decomposed structurally before falling back on the folded form.
fn reciprocal(node: &SyntaxTree) -> Result<Form, UnsupportedFunction> {
    if node.contains_var() {
        match node {
            SyntaxTree::Neg(a) => return Ok(reciprocal(a)?.scale(-ONE)),
            SyntaxTree::Binary(BinaryOp::Mul, a, b) => {
                return reciprocal(a)?.mul(&reciprocal(b)?).map_err(|r| unsupported(node, r));
            }
            SyntaxTree::Binary(BinaryOp::Div, a, b) => {
                return fold(b)?.mul(&reciprocal(a)?).map_err(|r| unsupported(node, r));
            }
            SyntaxTree::Binary(BinaryOp::Pow, a, b) => {
                if let Some(n) = integer_exponent(b) {
                    let negated = SyntaxTree::binary(
                        BinaryOp::Pow,
                        (**a).clone(),
                        SyntaxTree::Number { value: -(n as f64), imaginary: false },
                    );
                    return fold(&negated).map_err(|e| unsupported(node, e.reason));
                }
            }
            _ => {}
        }
    }
    fold(node)?.reciprocal().map_err(|r| unsupported(node, r))
}

fn to_term(atom: Atom, c: Complex64) -> Option<CatalogTerm> {
    let (basis, shift) = match atom {
        Atom::PolyExp { z, m: 0 } if z == ZERO => (BasisFunction::Constant, ZERO),
        Atom::PolyExp { z, m } if z == ZERO => (BasisFunction::Monomial(m), ZERO),
        Atom::PolyExp { z, m: 0 } => (BasisFunction::Exponential(z), ZERO),
        Atom::PolyExp { z, m: 1 } => (BasisFunction::ExpTimesX(z), ZERO),
        Atom::PolyExp { .. } => return None,
        Atom::Inv { a, s } => (BasisFunction::InverseMonomial(a), s),
        Atom::Log { s } => (BasisFunction::Logarithm, s),
    };
    Some(CatalogTerm::new(c, basis, shift))
}

pub fn canonicalize(tree: &SyntaxTree) -> Result<CatalogExpr, UnsupportedFunction> {
    let form = fold(tree)?;
    let mut terms = Vec::with_capacity(form.terms.len());
    for &(atom, c) in form.live() {
        terms.push(to_term(atom, c).ok_or_else(|| unsupported(tree, "term outside the catalog"))?);
    }
    Ok(CatalogExpr::from_terms(terms))
}
