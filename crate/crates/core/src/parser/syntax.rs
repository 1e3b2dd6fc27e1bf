//! Syntax trees and the recursive-descent parser.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := primary ("^" unary)?        right-associative
//! primary := number | constant | "k" | func "(" expr ")" | "(" expr ")"
//! ```

use std::fmt;

use num_complex::Complex64;

use super::lexer::{tokenize, Token, TokenKind};
use super::ParseError;
use crate::numeric::{EULER_GAMMA, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedConstant {
    Pi,
    E,
    Gamma,
    I,
}

impl NamedConstant {
    pub fn value(self) -> Complex64 {
        match self {
            NamedConstant::Pi => Complex64::new(std::f64::consts::PI, 0.0),
            NamedConstant::E => Complex64::new(std::f64::consts::E, 0.0),
            NamedConstant::Gamma => Complex64::new(EULER_GAMMA, 0.0),
            NamedConstant::I => Complex64::new(0.0, 1.0),
        }
    }

    fn name(self) -> &'static str {
        match self {
            NamedConstant::Pi => "pi",
            NamedConstant::E => "e",
            NamedConstant::Gamma => "gamma",
            NamedConstant::I => "i",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Exp,
    Ln,
    Sin,
    Cos,
}

impl Function {
    fn name(self) -> &'static str {
        match self {
            Function::Exp => "exp",
            Function::Ln => "ln",
            Function::Sin => "sin",
            Function::Cos => "cos",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SyntaxTree {
    Number { value: f64, imaginary: bool },
    Constant(NamedConstant),
    /// The bound variable `k`.
    Var,
    Neg(Box<SyntaxTree>),
    Binary(BinaryOp, Box<SyntaxTree>, Box<SyntaxTree>),
    Call(Function, Box<SyntaxTree>),
}

impl SyntaxTree {
    pub fn binary(op: BinaryOp, lhs: SyntaxTree, rhs: SyntaxTree) -> Self {
        SyntaxTree::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn contains_var(&self) -> bool {
        match self {
            SyntaxTree::Var => true,
            SyntaxTree::Number { .. } | SyntaxTree::Constant(_) => false,
            SyntaxTree::Neg(a) | SyntaxTree::Call(_, a) => a.contains_var(),
            SyntaxTree::Binary(_, a, b) => a.contains_var() || b.contains_var(),
        }
    }

    /// Direct numeric evaluation at `k` with principal branches.
    pub fn evaluate(&self, k: Complex64) -> Complex64 {
        match self {
            SyntaxTree::Number { value, imaginary: false } => Complex64::new(*value, 0.0),
            SyntaxTree::Number { value, imaginary: true } => Complex64::new(0.0, *value),
            SyntaxTree::Constant(c) => c.value(),
            SyntaxTree::Var => k,
            SyntaxTree::Neg(a) => ZERO - a.evaluate(k),
            SyntaxTree::Binary(op, a, b) => {
                let (x, y) = (a.evaluate(k), b.evaluate(k));
                match op {
                    BinaryOp::Add => x + y,
                    BinaryOp::Sub => x - y,
                    BinaryOp::Mul => x * y,
                    BinaryOp::Div => x / y,
                    BinaryOp::Pow => complex_pow(x, y),
                }
            }
            SyntaxTree::Call(f, a) => {
                let x = a.evaluate(k);
                match f {
                    Function::Exp => x.exp(),
                    Function::Ln => x.ln(),
                    Function::Sin => x.sin(),
                    Function::Cos => x.cos(),
                }
            }
        }
    }

    /// Value of a `k`-free tree.
    pub fn evaluate_constant(&self) -> Option<Complex64> {
        (!self.contains_var()).then(|| self.evaluate(ZERO))
    }
}

/// b^w on the principal branch, with exact integer powers.
pub(crate) fn complex_pow(base: Complex64, exponent: Complex64) -> Complex64 {
    if exponent.im == 0.0 && exponent.re.fract() == 0.0 && exponent.re.abs() <= 1024.0 {
        return base.powi(exponent.re as i32);
    }
    if base == ZERO {
        return ZERO;
    }
    (exponent * base.ln()).exp()
}

/// Fully parenthesized text that parses back to the same tree.
impl fmt::Display for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxTree::Number { value, imaginary } => {
                write!(f, "{value:?}")?;
                if *imaginary {
                    write!(f, "i")?;
                }
                Ok(())
            }
            SyntaxTree::Constant(c) => f.write_str(c.name()),
            SyntaxTree::Var => f.write_str("k"),
            SyntaxTree::Neg(a) => write!(f, "(-{a})"),
            SyntaxTree::Binary(op, a, b) => write!(f, "({a}{}{b})", op.symbol()),
            SyntaxTree::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

pub fn parse(src: &str) -> Result<SyntaxTree, ParseError> {
    let tokens = tokenize(src)?;
    let mut parser = Parser { tokens, pos: 0 };
    let tree = parser.expr()?;
    let next = parser.peek();
    if next.kind != TokenKind::End {
        return Err(parser.unexpected(next));
    }
    Ok(tree)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Token {
        self.tokens[self.pos].clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.peek();
        if t.kind != TokenKind::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, token: Token) -> ParseError {
        let message = match token.kind {
            TokenKind::End => "unexpected end of input".to_string(),
            TokenKind::Number { .. } => "unexpected number (implicit multiplication is not supported)".to_string(),
            TokenKind::Ident(name) => format!("unexpected identifier `{name}`"),
            other => format!("unexpected token {other:?}"),
        };
        ParseError::Syntax {
            offset: token.offset,
            message,
        }
    }

    fn expr(&mut self) -> Result<SyntaxTree, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Plus => BinaryOp::Add,
                TokenKind::Minus => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = SyntaxTree::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<SyntaxTree, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Star => BinaryOp::Mul,
                TokenKind::Slash => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = SyntaxTree::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<SyntaxTree, ParseError> {
        if self.peek().kind == TokenKind::Minus {
            self.bump();
            return Ok(SyntaxTree::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<SyntaxTree, ParseError> {
        let base = self.primary()?;
        if self.peek().kind == TokenKind::Caret {
            self.bump();
            let exponent = self.unary()?;
            return Ok(SyntaxTree::binary(BinaryOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<SyntaxTree, ParseError> {
        let token = self.bump();
        match token.kind {
            TokenKind::Number { value, imaginary } => Ok(SyntaxTree::Number { value, imaginary }),
            TokenKind::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            TokenKind::Ident(ref name) => {
                let constant = match name.as_str() {
                    "k" => return Ok(SyntaxTree::Var),
                    "pi" => Some(NamedConstant::Pi),
                    "e" => Some(NamedConstant::E),
                    "gamma" => Some(NamedConstant::Gamma),
                    "i" => Some(NamedConstant::I),
                    _ => None,
                };
                if let Some(c) = constant {
                    return Ok(SyntaxTree::Constant(c));
                }
                let function = match name.as_str() {
                    "exp" => Function::Exp,
                    "ln" => Function::Ln,
                    "sin" => Function::Sin,
                    "cos" => Function::Cos,
                    _ => {
                        return Err(ParseError::Syntax {
                            offset: token.offset,
                            message: format!("unknown identifier `{name}`"),
                        })
                    }
                };
                let open = self.bump();
                if open.kind != TokenKind::LParen {
                    return Err(ParseError::Syntax {
                        offset: open.offset,
                        message: format!("expected `(` after `{name}`"),
                    });
                }
                let arg = self.expr()?;
                self.expect_rparen()?;
                Ok(SyntaxTree::Call(function, Box::new(arg)))
            }
            _ => Err(self.unexpected(token)),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        let close = self.bump();
        if close.kind != TokenKind::RParen {
            return Err(match close.kind {
                TokenKind::End => ParseError::Syntax {
                    offset: close.offset,
                    message: "missing `)`".to_string(),
                },
                _ => self.unexpected(close),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BinaryOp::*;

    fn num(v: f64) -> SyntaxTree {
        SyntaxTree::Number { value: v, imaginary: false }
    }

    fn b(op: BinaryOp, l: SyntaxTree, r: SyntaxTree) -> SyntaxTree {
        SyntaxTree::binary(op, l, r)
    }

    #[test]
    fn examples() {
        assert_eq!(parse("k^2 + 3").unwrap(), b(Add, b(Pow, SyntaxTree::Var, num(2.0)), num(3.0)));
        let pi_i_k = b(
            Mul,
            b(Mul, SyntaxTree::Constant(NamedConstant::Pi), SyntaxTree::Constant(NamedConstant::I)),
            SyntaxTree::Var,
        );
        assert_eq!(
            parse("exp(pi*i*k)*k").unwrap(),
            b(Mul, SyntaxTree::Call(Function::Exp, Box::new(pi_i_k)), SyntaxTree::Var)
        );
        assert_eq!(
            parse("1/(k*(k+1))").unwrap(),
            b(Div, num(1.0), b(Mul, SyntaxTree::Var, b(Add, SyntaxTree::Var, num(1.0))))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("-k^2").unwrap(),
            SyntaxTree::Neg(Box::new(b(Pow, SyntaxTree::Var, num(2.0))))
        );
        assert_eq!(
            parse("2^3^k").unwrap(),
            b(Pow, num(2.0), b(Pow, num(3.0), SyntaxTree::Var))
        );
        assert_eq!(
            parse("2^-k").unwrap(),
            b(Pow, num(2.0), SyntaxTree::Neg(Box::new(SyntaxTree::Var)))
        );
        assert_eq!(
            parse("1 - 2 - 3").unwrap(),
            b(Sub, b(Sub, num(1.0), num(2.0)), num(3.0))
        );
        assert_eq!(
            parse("-2*k").unwrap(),
            b(Mul, SyntaxTree::Neg(Box::new(num(2.0))), SyntaxTree::Var)
        );
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse(" k ^ 2+3 ").unwrap(), parse("k^2+3").unwrap());
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(
            parse("2k"),
            Err(ParseError::Syntax {
                offset: 1,
                message: "unexpected identifier `k`".into()
            })
        );
        assert!(matches!(parse("(k+1"), Err(ParseError::Syntax { offset: 4, .. })));
        assert!(matches!(parse("k+"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("foo(k)"), Err(ParseError::Syntax { offset: 0, .. })));
        assert!(matches!(parse("exp k"), Err(ParseError::Syntax { offset: 4, .. })));
        assert!(matches!(parse(""), Err(ParseError::Syntax { offset: 0, .. })));
    }

    #[test]
    fn unparse_round_trips() {
        for src in ["k^2 + 3", "-k^-2", "exp(pi*i*k)*k", "1/(k*(k+1))", "2.5e-7i - gamma", "cos(3*k)^2^k"] {
            let tree = parse(src).unwrap();
            assert_eq!(parse(&tree.to_string()).unwrap(), tree, "{src}");
        }
    }

    #[test]
    fn evaluation() {
        let t = parse("(-1)^k").unwrap();
        let v = t.evaluate(Complex64::new(0.5, 0.0));
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(parse("2^10").unwrap().evaluate_constant(), Some(Complex64::new(1024.0, 0.0)));
        assert_eq!(parse("k+1").unwrap().evaluate_constant(), None);
    }
}
