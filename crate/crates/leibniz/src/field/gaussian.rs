use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{rational_sqrt, Rational};
use super::{Field, FieldError};

/// `re + im * i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::new(Rational::from_integer(v.into()), Rational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(Rational::new(n.into(), d.into()), Rational::zero())
    }

    /// `a + b i` with integer parts.
    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::new(q, Rational::zero())
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.re.denom().lcm(self.im.denom())
    }

    /// Square root inside `Q(i)`, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        let (x, y) = (&self.re, &self.im);
        if y.is_zero() {
            return if !x.is_negative() {
                rational_sqrt(x).map(Self::from_rational)
            } else {
                rational_sqrt(&-x.clone()).map(|s| Self::new(Rational::zero(), s))
            };
        }
        // (u + v i)^2 = x + y i  =>  u^2 = (x + |a|) / 2, v = y / (2u)
        let r = rational_sqrt(&self.norm())?;
        let two = Rational::from_integer(2.into());
        let u = rational_sqrt(&((x + &r) / &two))?;
        if u.is_zero() {
            return None;
        }
        let v = y / (&two * &u);
        let s = Self::new(u, v);
        debug_assert_eq!(&s * &s, *self);
        Some(s)
    }

    /// Lexicographic order on `(re, im)`; used to pick canonical representatives.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |q: &Rational| -> String {
            if q.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_rational(q))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{}", imag(&-self.im.clone()))
                } else {
                    write!(f, "{}", imag(&self.im))
                }
            }
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{} - {}", fmt_rational(&self.re), imag(&-self.im.clone()))
                } else {
                    write!(f, "{} + {}", fmt_rational(&self.re), imag(&self.im))
                }
            }
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &o.re);
        }
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.recip().expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Div for $t {
            type Output = $t;
            fn div(self, o: $t) -> $t {
                &self / &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;

owned_ops!(GaussianRational);

impl Field for GaussianRational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        GaussianRational::zero()
    }

    fn one(_: &()) -> Self {
        GaussianRational::one()
    }

    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Result<Self, FieldError> {
        self.recip()
    }

    fn from_gaussian(g: &GaussianRational, _: &()) -> Result<Self, FieldError> {
        Ok(g.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussianRational {
        GaussianRational::from_ints(a, b)
    }

    #[test]
    fn conjugate_product_is_norm() {
        let half = GaussianRational::from_ratio(1, 2);
        let a = &half + &GaussianRational::i();
        let b = &half - &GaussianRational::i();
        assert_eq!(&a * &b, GaussianRational::from_ratio(5, 4));
    }

    #[test]
    fn square_roots() {
        assert_eq!(g(4, 0).sqrt(), Some(g(2, 0)));
        assert_eq!(g(-1, 0).sqrt(), Some(g(0, 1)));
        assert_eq!(g(2, 0).sqrt(), None);
        // (1 + i)^2 = 2i
        let s = g(0, 2).sqrt().unwrap();
        assert_eq!(&s * &s, g(0, 2));
        // (2 + 3i)^2 = -5 + 12i
        let s = g(-5, 12).sqrt().unwrap();
        assert_eq!(&s * &s, g(-5, 12));
        assert_eq!(g(1, 1).sqrt(), None);
    }

    #[test]
    fn display_round_trips_through_the_literal_parser() {
        for v in [g(0, 0), g(3, 0), g(0, 1), g(0, -1), g(-2, 5), g(7, -3), GaussianRational::from_ratio(-1, 2)] {
            let text = v.to_string();
            assert_eq!(crate::field::parse_scalar(&text).unwrap().to_gaussian().unwrap(), v, "{text}");
        }
    }

    #[test]
    fn inverse() {
        let a = g(3, -4);
        assert_eq!(&a * &a.recip().unwrap(), g(1, 0));
        assert!(g(0, 0).recip().is_err());
    }
}
