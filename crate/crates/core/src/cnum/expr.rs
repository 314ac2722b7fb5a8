//! Holomorphic expression trees with exact symbolic derivatives.
//!
//! Expressions are built over one complex variable `z` with constants,
//! the four arithmetic operations, `exp`, powers with constant exponent,
//! and composition. Keeping the derivative symbolic matters here: the
//! curvature formulas downstream need `g'` exactly, not a finite
//! difference.

use super::Complex;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("power exponent must be a constant expression")]
    NonConstantExponent,
}

/// Expression tree over `{constants, z, +, -, *, /, exp, ^const, composition}`.
#[derive(Debug, Clone, PartialEq)]
pub enum HolomorphicExpr {
    Const(Complex),
    Var,
    Add(Box<HolomorphicExpr>, Box<HolomorphicExpr>),
    Sub(Box<HolomorphicExpr>, Box<HolomorphicExpr>),
    Mul(Box<HolomorphicExpr>, Box<HolomorphicExpr>),
    Div(Box<HolomorphicExpr>, Box<HolomorphicExpr>),
    Exp(Box<HolomorphicExpr>),
    /// Base raised to a constant exponent; the branch through 1 is used
    /// for non-integer exponents.
    Pow(Box<HolomorphicExpr>, Complex),
    /// `Compose(f, g)` evaluates `f(g(z))`.
    Compose(Box<HolomorphicExpr>, Box<HolomorphicExpr>),
}

use HolomorphicExpr::*;

impl HolomorphicExpr {
    pub fn constant(c: Complex) -> Self {
        Const(c)
    }

    pub fn real(x: f64) -> Self {
        Const(Complex::new(x, 0.0))
    }

    pub fn var() -> Self {
        Var
    }

    pub fn eval(&self, z: Complex) -> Complex {
        match self {
            Const(c) => *c,
            Var => z,
            Add(a, b) => a.eval(z) + b.eval(z),
            Sub(a, b) => a.eval(z) - b.eval(z),
            Mul(a, b) => a.eval(z) * b.eval(z),
            Div(a, b) => a.eval(z) / b.eval(z),
            Exp(a) => a.eval(z).exp(),
            Pow(a, p) => pow_const(a.eval(z), *p),
            Compose(f, g) => f.eval(g.eval(z)),
        }
    }

    /// Exact derivative by tree rewriting.
    pub fn derivative(&self) -> HolomorphicExpr {
        match self {
            Const(_) => Const(Complex::new(0.0, 0.0)),
            Var => Const(Complex::new(1.0, 0.0)),
            Add(a, b) => add(a.derivative(), b.derivative()),
            Sub(a, b) => sub(a.derivative(), b.derivative()),
            Mul(a, b) => add(
                mul(a.derivative(), (**b).clone()),
                mul((**a).clone(), b.derivative()),
            ),
            Div(a, b) => div(
                sub(
                    mul(a.derivative(), (**b).clone()),
                    mul((**a).clone(), b.derivative()),
                ),
                mul((**b).clone(), (**b).clone()),
            ),
            Exp(a) => mul(Exp(a.clone()), a.derivative()),
            Pow(a, p) => mul(
                mul(Const(*p), Pow(a.clone(), p - Complex::new(1.0, 0.0))),
                a.derivative(),
            ),
            Compose(f, g) => mul(Compose(Box::new(f.derivative()), g.clone()), g.derivative()),
        }
    }

    /// Depth of the tree, used by the property tests to bound generated sizes.
    pub fn depth(&self) -> usize {
        match self {
            Const(_) | Var => 1,
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) | Compose(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Exp(a) | Pow(a, _) => 1 + a.depth(),
        }
    }

    pub fn parse(src: &str) -> Result<Self, ExprError> {
        Parser::new(src).parse_all()
    }
}

fn pow_const(base: Complex, p: Complex) -> Complex {
    if p.im == 0.0 && p.re.fract() == 0.0 && p.re.abs() <= 64.0 {
        let n = p.re as i32;
        base.powi(n)
    } else {
        base.powc(p)
    }
}

fn add(a: HolomorphicExpr, b: HolomorphicExpr) -> HolomorphicExpr {
    Add(Box::new(a), Box::new(b))
}
fn sub(a: HolomorphicExpr, b: HolomorphicExpr) -> HolomorphicExpr {
    Sub(Box::new(a), Box::new(b))
}
fn mul(a: HolomorphicExpr, b: HolomorphicExpr) -> HolomorphicExpr {
    Mul(Box::new(a), Box::new(b))
}
fn div(a: HolomorphicExpr, b: HolomorphicExpr) -> HolomorphicExpr {
    Div(Box::new(a), Box::new(b))
}

impl std::ops::Add for HolomorphicExpr {
    type Output = HolomorphicExpr;
    fn add(self, rhs: Self) -> Self {
        add(self, rhs)
    }
}
impl std::ops::Sub for HolomorphicExpr {
    type Output = HolomorphicExpr;
    fn sub(self, rhs: Self) -> Self {
        sub(self, rhs)
    }
}
impl std::ops::Mul for HolomorphicExpr {
    type Output = HolomorphicExpr;
    fn mul(self, rhs: Self) -> Self {
        mul(self, rhs)
    }
}
impl std::ops::Div for HolomorphicExpr {
    type Output = HolomorphicExpr;
    fn div(self, rhs: Self) -> Self {
        div(self, rhs)
    }
}

impl fmt::Display for HolomorphicExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Const(c) => {
                if c.im == 0.0 {
                    write!(f, "{}", c.re)
                } else if c.re == 0.0 {
                    write!(f, "{}*i", c.im)
                } else {
                    write!(f, "({}+{}*i)", c.re, c.im)
                }
            }
            Var => write!(f, "z"),
            Add(a, b) => write!(f, "({} + {})", a, b),
            Sub(a, b) => write!(f, "({} - {})", a, b),
            Mul(a, b) => write!(f, "({} * {})", a, b),
            Div(a, b) => write!(f, "({} / {})", a, b),
            Exp(a) => write!(f, "exp({})", a),
            Pow(a, p) => {
                if p.im == 0.0 {
                    write!(f, "{}^{}", a, p.re)
                } else {
                    write!(f, "{}^({}+{}*i)", a, p.re, p.im)
                }
            }
            Compose(a, b) => write!(f, "({})o({})", a, b),
        }
    }
}

impl FromStr for HolomorphicExpr {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HolomorphicExpr::parse(s)
    }
}

/// Recursive-descent parser for the small configuration grammar:
///
/// ```text
/// expr   := term (('+'|'-') term)*
/// term   := factor (('*'|'/') factor)*
/// factor := unary ('^' unary)?          -- exponent must fold to a constant
/// unary  := '-' unary | atom
/// atom   := number | 'i' | 'z' | 'pi' | 'exp' '(' expr ')' | '(' expr ')'
/// ```
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn parse_all(mut self) -> Result<HolomorphicExpr, ExprError> {
        let e = self.expr()?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("trailing input"));
        }
        Ok(e)
    }

    fn err(&self, msg: &str) -> ExprError {
        ExprError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<HolomorphicExpr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = add(lhs, self.term()?);
            } else if self.eat(b'-') {
                lhs = sub(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<HolomorphicExpr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = mul(lhs, self.factor()?);
            } else if self.eat(b'/') {
                lhs = div(lhs, self.factor()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<HolomorphicExpr, ExprError> {
        let base = self.unary()?;
        if self.eat(b'^') {
            let exponent = self.unary()?;
            let p = fold_constant(&exponent).ok_or(ExprError::NonConstantExponent)?;
            return Ok(Pow(Box::new(base), p));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<HolomorphicExpr, ExprError> {
        if self.eat(b'-') {
            let inner = self.unary()?;
            return Ok(sub(Const(Complex::new(0.0, 0.0)), inner));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<HolomorphicExpr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let ident = self.ident();
                match ident.as_str() {
                    "z" => Ok(Var),
                    "i" => Ok(Const(Complex::new(0.0, 1.0))),
                    "pi" => Ok(Const(Complex::new(std::f64::consts::PI, 0.0))),
                    "exp" => {
                        if !self.eat(b'(') {
                            return Err(self.err("expected '(' after exp"));
                        }
                        let e = self.expr()?;
                        if !self.eat(b')') {
                            return Err(self.err("expected ')'"));
                        }
                        Ok(Exp(Box::new(e)))
                    }
                    "sqrt" => {
                        if !self.eat(b'(') {
                            return Err(self.err("expected '(' after sqrt"));
                        }
                        let e = self.expr()?;
                        if !self.eat(b')') {
                            return Err(self.err("expected ')'"));
                        }
                        Ok(Pow(Box::new(e), Complex::new(0.5, 0.0)))
                    }
                    other => Err(self.err(&format!("unknown identifier `{other}`"))),
                }
            }
            _ => Err(self.err("expected atom")),
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn number(&mut self) -> Result<HolomorphicExpr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit()
                || self.src[self.pos] == b'.'
                || self.src[self.pos] == b'e'
                || self.src[self.pos] == b'E'
                || ((self.src[self.pos] == b'+' || self.src[self.pos] == b'-')
                    && self.pos > start
                    && (self.src[self.pos - 1] == b'e' || self.src[self.pos - 1] == b'E')))
        {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let value: f64 = text
            .parse()
            .map_err(|_| self.err(&format!("bad number `{text}`")))?;
        // literal imaginary unit suffix: `2i`
        if self.pos < self.src.len() && self.src[self.pos] == b'i' {
            self.pos += 1;
            return Ok(Const(Complex::new(0.0, value)));
        }
        Ok(Const(Complex::new(value, 0.0)))
    }
}

fn fold_constant(e: &HolomorphicExpr) -> Option<Complex> {
    match e {
        Const(c) => Some(*c),
        Add(a, b) => Some(fold_constant(a)? + fold_constant(b)?),
        Sub(a, b) => Some(fold_constant(a)? - fold_constant(b)?),
        Mul(a, b) => Some(fold_constant(a)? * fold_constant(b)?),
        Div(a, b) => Some(fold_constant(a)? / fold_constant(b)?),
        Exp(a) => Some(fold_constant(a)?.exp()),
        Pow(a, p) => Some(pow_const(fold_constant(a)?, *p)),
        _ => None,
    }
}
