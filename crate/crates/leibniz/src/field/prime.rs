use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::gaussian::{owned_ops, GaussianRational};
use super::{Field, FieldError};

/// Element of `GF(p)` for an odd prime `p = 1 mod 4`, `p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    pub value: u64,
    pub p: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// The smaller square root of `-1` modulo `p`, after validating `p`.
pub fn sqrt_minus_one(p: u64) -> Result<u64, FieldError> {
    static CACHE: OnceLock<Mutex<HashMap<u64, u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("cache poisoned").get(&p) {
        return Ok(*r);
    }
    if p >= 1 << 31 || p % 4 != 1 || !is_prime(p) {
        return Err(FieldError::BadPrime(p));
    }
    let mut a = 2;
    let r = loop {
        let t = pow_mod(a, (p - 1) / 4, p);
        if t * t % p == p - 1 {
            break t.min(p - t);
        }
        a += 1;
    };
    cache.lock().expect("cache poisoned").insert(p, r);
    Ok(r)
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((n % &m) + &m) % &m;
    r.to_u64().expect("residue fits")
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Self {
        let v = value.rem_euclid(p as i64) as u64;
        Fp { value: v, p }
    }

    /// Representative in `[-(p-1)/2, (p-1)/2]`.
    pub fn centered(&self) -> i64 {
        if self.value > self.p / 2 {
            self.value as i64 - self.p as i64
        } else {
            self.value as i64
        }
    }

    fn check(&self, o: &Fp) {
        assert!(self.p == o.p, "prime field mismatch: GF({}) vs GF({})", self.p, o.p);
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<'a> Add<&'a Fp> for &'a Fp {
    type Output = Fp;
    fn add(self, o: &Fp) -> Fp {
        self.check(o);
        Fp { value: (self.value + o.value) % self.p, p: self.p }
    }
}

impl<'a> Sub<&'a Fp> for &'a Fp {
    type Output = Fp;
    fn sub(self, o: &Fp) -> Fp {
        self.check(o);
        Fp { value: (self.value + self.p - o.value) % self.p, p: self.p }
    }
}

impl<'a> Mul<&'a Fp> for &'a Fp {
    type Output = Fp;
    fn mul(self, o: &Fp) -> Fp {
        self.check(o);
        Fp { value: self.value * o.value % self.p, p: self.p }
    }
}

impl<'a> Div<&'a Fp> for &'a Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Fp) -> Fp {
        self * &Field::inv(o).expect("division by zero")
    }
}

impl Neg for &Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: (self.p - self.value) % self.p, p: self.p }
    }
}

owned_ops!(Fp);

impl Field for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p
    }

    fn zero(p: &u64) -> Self {
        Fp { value: 0, p: *p }
    }

    fn one(p: &u64) -> Self {
        Fp { value: 1 % *p, p: *p }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
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
        if self.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Fp { value: pow_mod(self.value, self.p - 2, self.p), p: self.p })
    }

    fn from_gaussian(g: &GaussianRational, p: &u64) -> Result<Self, FieldError> {
        let p = *p;
        let r = sqrt_minus_one(p)?;
        let part = |q: &num_rational::BigRational| -> Result<u64, FieldError> {
            let d = bigint_mod(q.denom(), p);
            if d.is_zero() {
                return Err(FieldError::DenominatorDividesP(p));
            }
            Ok(bigint_mod(q.numer(), p) * pow_mod(d, p - 2, p) % p)
        };
        let re = part(&g.re)?;
        let im = part(&g.im)?;
        Ok(Fp { value: (re + im * r) % p, p })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::reduce_mod_p;

    #[test]
    fn inverse_of_two_mod_13() {
        assert_eq!(Field::inv(&Fp::new(2, 13)).unwrap(), Fp::new(7, 13));
    }

    #[test]
    fn designated_root_of_minus_one() {
        assert_eq!(sqrt_minus_one(13).unwrap(), 5);
        assert_eq!(sqrt_minus_one(17).unwrap(), 4);
        assert!(sqrt_minus_one(7).is_err());
        assert!(sqrt_minus_one(21).is_err());
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce_mod_p(&GaussianRational::from_ratio(1, 2), 13).unwrap().value, 7);
        assert_eq!(reduce_mod_p(&GaussianRational::i(), 13).unwrap().value, 5);
        assert_eq!(
            reduce_mod_p(&GaussianRational::from_ratio(1, 13), 13),
            Err(FieldError::DenominatorDividesP(13))
        );
    }

    #[test]
    fn centered_representatives() {
        assert_eq!(Fp::new(12, 13).centered(), -1);
        assert_eq!(Fp::new(6, 13).centered(), 6);
        assert_eq!(Fp::new(7, 13).centered(), -6);
    }
}
