use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{FieldError, GaussianRational, QuadExt, Rational};
use crate::expr::{Expr, ExprError, Parser};

/// A parsed scalar literal: either a Gaussian rational or an element of a
/// single quadratic extension `Q(i)(sqrt d)` with `d` a squarefree integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarLiteral {
    Gaussian(GaussianRational),
    Quad(QuadExt),
}

impl ScalarLiteral {
    pub fn to_gaussian(&self) -> Result<GaussianRational, FieldError> {
        match self {
            ScalarLiteral::Gaussian(g) => Ok(g.clone()),
            ScalarLiteral::Quad(q) => Err(FieldError::NotRepresentable(q.to_string())),
        }
    }

    /// The radicand when the literal needs an extension.
    pub fn radicand(&self) -> Option<&GaussianRational> {
        match self {
            ScalarLiteral::Gaussian(_) => None,
            ScalarLiteral::Quad(q) => Some(&q.d),
        }
    }

    /// Embed into `Q(i)(sqrt d)`.
    pub fn to_quad(&self, d: &GaussianRational) -> Result<QuadExt, FieldError> {
        match self {
            ScalarLiteral::Gaussian(g) => Ok(QuadExt::embed(g.clone(), d)),
            ScalarLiteral::Quad(q) if &q.d == d => Ok(q.clone()),
            ScalarLiteral::Quad(q) => Err(FieldError::FieldMismatch(format!("sqrt({}) vs sqrt({d})", q.d))),
        }
    }
}

impl fmt::Display for ScalarLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarLiteral::Gaussian(g) => write!(f, "{g}"),
            ScalarLiteral::Quad(q) => write!(f, "{q}"),
        }
    }
}

/// `a + b sqrt(d)` during evaluation; `d = None` means `b = 0`.
#[derive(Clone)]
struct Value {
    a: GaussianRational,
    b: GaussianRational,
    d: Option<BigInt>,
}

impl Value {
    fn base(a: GaussianRational) -> Self {
        Value { a, b: GaussianRational::zero(), d: None }
    }

    fn join(&self, o: &Value) -> Result<Option<BigInt>, ExprError> {
        match (&self.d, &o.d) {
            (Some(x), Some(y)) if x != y => Err(ExprError::Syntax {
                pos: 0,
                msg: format!("literal mixes sqrt({x}) and sqrt({y}); only one radical is supported"),
            }),
            (Some(x), _) | (None, Some(x)) => Ok(Some(x.clone())),
            (None, None) => Ok(None),
        }
    }

    fn dg(d: &Option<BigInt>) -> GaussianRational {
        d.as_ref()
            .map(|d| GaussianRational::from_rational(Rational::from_integer(d.clone())))
            .unwrap_or_else(GaussianRational::zero)
    }

    fn add(&self, o: &Value) -> Result<Value, ExprError> {
        Ok(Value { a: &self.a + &o.a, b: &self.b + &o.b, d: self.join(o)? })
    }

    fn neg(&self) -> Value {
        Value { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }

    fn mul(&self, o: &Value) -> Result<Value, ExprError> {
        let d = self.join(o)?;
        let dg = Self::dg(&d);
        Ok(Value {
            a: &(&self.a * &o.a) + &(&(&self.b * &o.b) * &dg),
            b: &(&self.a * &o.b) + &(&self.b * &o.a),
            d,
        })
    }

    fn inv(&self, text: &str) -> Result<Value, ExprError> {
        let dg = Self::dg(&self.d);
        let n = &(&self.a * &self.a) - &(&(&self.b * &self.b) * &dg);
        let ni = n.recip().map_err(|_| ExprError::DivisionByZero(text.to_string()))?;
        Ok(Value { a: &self.a * &ni, b: -&(&self.b * &ni), d: self.d.clone() })
    }
}

/// `q = m^2 * s / den^2` with `s` squarefree; returns `(m / den, s)`.
fn squarefree_split(q: &Rational) -> (Rational, BigInt) {
    let mut rest = q.numer() * q.denom();
    let den = q.denom().clone();
    let sign = if rest.is_negative() { -1 } else { 1 };
    rest = rest.abs();
    let mut m = BigInt::one();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let pp = &p * &p;
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            m *= &p;
        }
        if (&rest % &p).is_zero() {
            rest /= &p;
            s *= &p;
        }
        p += 1;
    }
    s *= rest;
    (Rational::new(m, den), s * sign)
}

fn eval(e: &Expr, text: &str) -> Result<Value, ExprError> {
    Ok(match e {
        Expr::Num(q) => Value::base(GaussianRational::from_rational(q.clone())),
        Expr::I => Value::base(GaussianRational::i()),
        Expr::Param(p) => return Err(ExprError::UnknownParam(p.clone())),
        Expr::Sqrt(inner) => {
            let v = eval(inner, text)?;
            let q = match (&v.d, v.a.is_real()) {
                (None, true) => v.a.re.clone(),
                _ => {
                    return Err(ExprError::Syntax {
                        pos: 0,
                        msg: format!("sqrt argument must be rational in `{text}`"),
                    })
                }
            };
            if q.is_zero() {
                return Ok(Value::base(GaussianRational::zero()));
            }
            let (m, s) = squarefree_split(&q);
            let unit = if s.is_negative() { GaussianRational::i() } else { GaussianRational::one() };
            let coeff = &unit * &GaussianRational::from_rational(m);
            let s = s.abs();
            if s.is_one() {
                Value::base(coeff)
            } else {
                Value { a: GaussianRational::zero(), b: coeff, d: Some(s) }
            }
        }
        Expr::Neg(a) => eval(a, text)?.neg(),
        Expr::Add(a, b) => eval(a, text)?.add(&eval(b, text)?)?,
        Expr::Sub(a, b) => eval(a, text)?.add(&eval(b, text)?.neg())?,
        Expr::Mul(a, b) => eval(a, text)?.mul(&eval(b, text)?)?,
        Expr::Div(a, b) => eval(a, text)?.mul(&eval(b, text)?.inv(text)?)?,
    })
}

/// Parse a scalar literal: Gaussian rational arithmetic plus `sqrt(q)` for
/// rational `q`. At most one distinct radical may appear.
pub fn parse_scalar(text: &str) -> Result<ScalarLiteral, ExprError> {
    let e = Parser::new(text).allow_sqrt().parse()?;
    let v = eval(&e, text)?;
    match v.d {
        Some(d) if !v.b.is_zero() => {
            let d = GaussianRational::from_rational(Rational::from_integer(d));
            Ok(ScalarLiteral::Quad(QuadExt { a: v.a, b: v.b, d }))
        }
        _ => Ok(ScalarLiteral::Gaussian(v.a)),
    }
}

/// Parse `[[a, b], [c, d]]` into rows of Gaussian rationals. Entries use the
/// scalar grammar without radicals.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<GaussianRational>>, ExprError> {
    let syntax = |pos: usize, msg: &str| ExprError::Syntax { pos, msg: msg.to_string() };
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| syntax(0, "expected [[...], ...]"))?;
    let mut rows = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or_else(|| syntax(text.len() - rest.len(), "expected `[`"))?;
        let close = body.find(']').ok_or_else(|| syntax(text.len(), "unclosed row"))?;
        let row = body[..close]
            .split(',')
            .map(|cell| Expr::parse(cell.trim())?.eval(&Default::default()))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
        rest = body[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(syntax(0, "rows must be nonempty and of equal length"));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        parse_scalar(s).unwrap().to_gaussian().unwrap()
    }

    #[test]
    fn gaussian_literals() {
        assert_eq!(g("3/4"), GaussianRational::from_ratio(3, 4));
        assert_eq!(g("1 - 2*i"), GaussianRational::from_ints(1, -2));
        assert_eq!(g("sqrt(4)"), GaussianRational::from_i64(2));
        assert_eq!(g("sqrt(-1)"), GaussianRational::i());
        assert_eq!(g("sqrt(9/4)"), GaussianRational::from_ratio(3, 2));
    }

    #[test]
    fn radicals_are_normalised() {
        let two = GaussianRational::from_i64(2);
        match parse_scalar("sqrt(8)").unwrap() {
            ScalarLiteral::Quad(q) => {
                assert_eq!(q.d, two);
                assert_eq!(q.b, two);
            }
            other => panic!("expected extension, got {other}"),
        }
        // sqrt(1/2) = sqrt(2)/2
        let q = parse_scalar("sqrt(1/2)").unwrap().to_quad(&two).unwrap();
        assert_eq!(q.b, GaussianRational::from_ratio(1, 2));
        // sqrt(-2) = i sqrt(2)
        let q = parse_scalar("sqrt(-2)").unwrap().to_quad(&two).unwrap();
        assert_eq!(q.b, GaussianRational::i());
    }

    #[test]
    fn radical_arithmetic_cancels() {
        assert_eq!(g("sqrt(2)*sqrt(2)"), GaussianRational::from_i64(2));
        assert_eq!(g("1/sqrt(2) - sqrt(2)/2"), GaussianRational::zero());
    }

    #[test]
    fn matrix_literals() {
        let m = parse_matrix("[[0, 1/2], [-i, 3]]").unwrap();
        assert_eq!(m[0][1], GaussianRational::from_ratio(1, 2));
        assert_eq!(m[1][0], -&GaussianRational::i());
        assert!(parse_matrix("[[1, 2], [3]]").is_err());
        assert!(parse_matrix("[1, 2]").is_err());
    }

    #[test]
    fn two_radicals_are_rejected() {
        assert!(parse_scalar("sqrt(2) + sqrt(3)").is_err());
        assert!(parse_scalar("alpha").is_err());
    }
}
