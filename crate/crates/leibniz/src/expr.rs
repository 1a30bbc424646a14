//! Coefficient expressions.
//!
//! Grammar:
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor | '/' factor)*
//! factor   := '-' factor | '(' expr ')' | rational | 'i' | param | 'sqrt(' expr ')'
//! rational := int ('/' posint)?
//! ```
//!
//! `sqrt(..)` is only accepted when the parser is built with
//! [`Parser::allow_sqrt`]; catalogue coefficients never use it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::field::{GaussianRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("division by zero while evaluating `{0}`")]
    DivisionByZero(String),
    #[error("sqrt is not allowed here")]
    SqrtNotAllowed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    I,
    Param(String),
    Sqrt(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ExprError> {
        Parser::new(text).parse()
    }

    pub fn int(v: i64) -> Expr {
        Expr::Num(Rational::from_integer(v.into()))
    }

    pub fn param(name: &str) -> Expr {
        Expr::Param(name.to_string())
    }

    /// Parameter names in order of first appearance.
    pub fn params(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params(&self, out: &mut Vec<String>) {
        match self {
            Expr::Param(p) => {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
            Expr::Num(_) | Expr::I => {}
            Expr::Sqrt(a) | Expr::Neg(a) => a.collect_params(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
        }
    }

    /// Exact evaluation over `Q(i)`. `sqrt` nodes are rejected; witness
    /// literals go through [`crate::field::parse_scalar`] instead.
    pub fn eval(&self, params: &BTreeMap<String, GaussianRational>) -> Result<GaussianRational, ExprError> {
        Ok(match self {
            Expr::Num(q) => GaussianRational::from_rational(q.clone()),
            Expr::I => GaussianRational::i(),
            Expr::Param(p) => params.get(p).cloned().ok_or_else(|| ExprError::UnknownParam(p.clone()))?,
            Expr::Sqrt(_) => return Err(ExprError::SqrtNotAllowed),
            Expr::Neg(a) => -a.eval(params)?,
            Expr::Add(a, b) => a.eval(params)? + b.eval(params)?,
            Expr::Sub(a, b) => a.eval(params)? - b.eval(params)?,
            Expr::Mul(a, b) => a.eval(params)? * b.eval(params)?,
            Expr::Div(a, b) => {
                let d = b.eval(params)?;
                if d.is_zero() {
                    return Err(ExprError::DivisionByZero(self.to_string()));
                }
                a.eval(params)? / d
            }
        })
    }

    /// Replace parameters by expressions, leaving unmapped names alone.
    pub fn substitute(&self, map: &BTreeMap<String, Expr>) -> Expr {
        let b = |e: &Expr| Box::new(e.substitute(map));
        match self {
            Expr::Param(p) => map.get(p).cloned().unwrap_or_else(|| self.clone()),
            Expr::Num(_) | Expr::I => self.clone(),
            Expr::Sqrt(a) => Expr::Sqrt(b(a)),
            Expr::Neg(a) => Expr::Neg(b(a)),
            Expr::Add(x, y) => Expr::Add(b(x), b(y)),
            Expr::Sub(x, y) => Expr::Sub(b(x), b(y)),
            Expr::Mul(x, y) => Expr::Mul(b(x), b(y)),
            Expr::Div(x, y) => Expr::Div(b(x), b(y)),
        }
    }

    fn is_atom(&self) -> bool {
        match self {
            Expr::Num(q) => q.is_integer() && q >= &Rational::zero(),
            Expr::I | Expr::Param(_) | Expr::Sqrt(_) => true,
            _ => false,
        }
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_atom() || matches!(self, Expr::Neg(_)) {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }
}

fn ends_with_digit(s: &str) -> bool {
    s.chars().last().is_some_and(|c| c.is_ascii_digit())
}

fn starts_with_digit(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_digit())
}

impl serde::Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Expr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Expr::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Expr {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, ExprError> {
        Expr::parse(s)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else if q.numer() < &BigInt::zero() {
                    write!(f, "-{}/{}", -q.numer(), q.denom())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Expr::I => write!(f, "i"),
            Expr::Param(p) => write!(f, "{p}"),
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_factor(f)
            }
            Expr::Add(a, b) => write!(f, "{a} + {b}"),
            Expr::Sub(a, b) => {
                write!(f, "{a} - ")?;
                if matches!(**b, Expr::Add(..) | Expr::Sub(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Expr::Mul(a, b) => {
                if matches!(**a, Expr::Add(..) | Expr::Sub(..)) {
                    write!(f, "({a})*")?;
                } else {
                    write!(f, "{a}*")?;
                }
                b.fmt_factor(f)
            }
            Expr::Div(a, b) => {
                let left = if matches!(**a, Expr::Add(..) | Expr::Sub(..)) {
                    format!("({a})")
                } else {
                    a.to_string()
                };
                let right = if b.is_atom() || matches!(**b, Expr::Neg(_)) {
                    b.to_string()
                } else {
                    format!("({b})")
                };
                // `1/2/3` would re-parse with `1/2` as a single literal.
                if ends_with_digit(&left) && starts_with_digit(&right) {
                    write!(f, "({left})/{right}")
                } else {
                    write!(f, "{left}/{right}")
                }
            }
        }
    }
}

pub struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    sqrt: bool,
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str) -> Self {
        Parser { src, bytes: src.as_bytes(), pos: 0, sqrt: false }
    }

    pub fn allow_sqrt(mut self) -> Self {
        self.sqrt = true;
        self
    }

    pub fn parse(mut self) -> Result<Expr, ExprError> {
        let e = self.expr()?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(e)
    }

    fn err(&self, msg: &str) -> ExprError {
        ExprError::Syntax { pos: self.pos, msg: format!("{msg} in `{}`", self.src) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            Some(self.src[start..self.pos].parse().expect("digits"))
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let inner = self.factor()?;
                Ok(match inner {
                    Expr::Num(q) if q > Rational::zero() => Expr::Num(-q),
                    other => Expr::Neg(Box::new(other)),
                })
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().expect("digit present");
                // `a/b` binds as one literal only when a digit follows the slash directly.
                let save = self.pos;
                if self.bytes.get(self.pos) == Some(&b'/')
                    && self.bytes.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit())
                {
                    self.pos += 1;
                    let d = self.integer().expect("digit present");
                    if d.is_zero() {
                        self.pos = save;
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(Expr::Num(Rational::new(n, d)));
                }
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match name {
                    "i" => Ok(Expr::I),
                    "sqrt" => {
                        if !self.sqrt {
                            return Err(ExprError::SqrtNotAllowed);
                        }
                        self.expect(b'(')?;
                        let e = self.expr()?;
                        self.expect(b')')?;
                        Ok(Expr::Sqrt(Box::new(e)))
                    }
                    _ => Ok(Expr::Param(name.to_string())),
                }
            }
            _ => Err(self.err("expected a number, `i`, a parameter or `(`")),
        }
    }
}
