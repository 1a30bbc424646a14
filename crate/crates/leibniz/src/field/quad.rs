use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gaussian::{owned_ops, GaussianRational};
use super::{Field, FieldError};

/// `a + b * sqrt(d)` over `Q(i)`, where `d` is not a square in `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub d: GaussianRational,
}

impl QuadExt {
    pub fn new(a: GaussianRational, b: GaussianRational, d: GaussianRational) -> Result<Self, FieldError> {
        if d.is_zero() || d.sqrt().is_some() {
            return Err(FieldError::NotRepresentable(format!("{d} is a square in Q(i); no extension needed")));
        }
        Ok(QuadExt { a, b, d })
    }

    /// The generator `sqrt(d)` itself.
    pub fn generator(d: &GaussianRational) -> Result<Self, FieldError> {
        Self::new(GaussianRational::zero(), GaussianRational::one(), d.clone())
    }

    pub fn embed(g: GaussianRational, d: &GaussianRational) -> Self {
        QuadExt { a: g, b: GaussianRational::zero(), d: d.clone() }
    }

    /// The base-field value when the radical part vanishes.
    pub fn as_base(&self) -> Option<&GaussianRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn check(&self, o: &Self) {
        assert!(self.d == o.d, "QuadExt field mismatch: sqrt({}) vs sqrt({})", self.d, o.d);
    }

    /// `a - b sqrt(d)`.
    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let rad = format!("sqrt({})", self.d);
        let b = if self.b == GaussianRational::one() {
            rad
        } else {
            format!("({})*{}", self.b, rad)
        };
        if self.a.is_zero() {
            write!(f, "{b}")
        } else {
            write!(f, "{} + {}", self.a, b)
        }
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        self.check(o);
        QuadExt { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d.clone() }
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        self.check(o);
        QuadExt { a: &self.a - &o.a, b: &self.b - &o.b, d: self.d.clone() }
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        self.check(o);
        let bb = &(&self.b * &o.b) * &self.d;
        QuadExt {
            a: &(&self.a * &o.a) + &bb,
            b: &(&self.a * &o.b) + &(&self.b * &o.a),
            d: self.d.clone(),
        }
    }
}

impl<'a> Div<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QuadExt) -> QuadExt {
        self * &Field::inv(o).expect("division by zero")
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
}

owned_ops!(QuadExt);

impl Field for QuadExt {
    type Ctx = GaussianRational;

    fn ctx(&self) -> GaussianRational {
        self.d.clone()
    }

    fn zero(d: &GaussianRational) -> Self {
        QuadExt::embed(GaussianRational::zero(), d)
    }

    fn one(d: &GaussianRational) -> Self {
        QuadExt::embed(GaussianRational::one(), d)
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
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
        if Field::is_zero(self) {
            return Err(FieldError::DivisionByZero);
        }
        // (a + b r)^{-1} = (a - b r) / (a^2 - b^2 d); the norm is nonzero since d is not a square.
        let n = &(&self.a * &self.a) - &(&(&self.b * &self.b) * &self.d);
        let ni = n.recip()?;
        Ok(QuadExt { a: &self.a * &ni, b: -&(&self.b * &ni), d: self.d.clone() })
    }

    fn from_gaussian(g: &GaussianRational, d: &GaussianRational) -> Result<Self, FieldError> {
        Ok(QuadExt::embed(g.clone(), d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_product() {
        let d = GaussianRational::from_i64(2);
        let one = GaussianRational::one();
        let x = QuadExt::new(one.clone(), one.clone(), d.clone()).unwrap();
        let y = QuadExt::new(one.clone(), -&one, d.clone()).unwrap();
        assert_eq!(&x * &y, QuadExt::embed(GaussianRational::from_i64(-1), &d));
    }

    #[test]
    fn squares_are_rejected_as_generators() {
        assert!(QuadExt::generator(&GaussianRational::from_i64(4)).is_err());
        assert!(QuadExt::generator(&GaussianRational::from_i64(-1)).is_err());
        let r = QuadExt::generator(&GaussianRational::from_i64(3)).unwrap();
        assert_eq!(&r * &r, QuadExt::embed(GaussianRational::from_i64(3), &GaussianRational::from_i64(3)));
    }

    #[test]
    fn inverse() {
        let d = GaussianRational::from_ints(1, 1);
        let x = QuadExt::new(GaussianRational::from_ints(2, -1), GaussianRational::from_ratio(1, 3), d.clone()).unwrap();
        assert_eq!(&x * &Field::inv(&x).unwrap(), QuadExt::one(&d));
    }

    #[test]
    #[should_panic(expected = "mismatch")]
    fn mixing_extensions_panics() {
        let a = QuadExt::generator(&GaussianRational::from_i64(2)).unwrap();
        let b = QuadExt::generator(&GaussianRational::from_i64(3)).unwrap();
        let _ = &a + &b;
    }

    #[test]
    fn mixing_extensions_reports_mismatch() {
        let a = QuadExt::generator(&GaussianRational::from_i64(2)).unwrap();
        let b = QuadExt::generator(&GaussianRational::from_i64(3)).unwrap();
        assert!(matches!(a.try_add(&b), Err(FieldError::FieldMismatch(_))));
    }
}
