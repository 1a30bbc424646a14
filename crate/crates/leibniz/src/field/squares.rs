use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;
use super::GaussianRational;

/// Rational primes are only tried up to this bound; a larger cofactor of the
/// norm is kept as it is.
const TRIAL_LIMIT: u64 = 1 << 20;

/// A Gaussian integer `re + im * i`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Zi {
    re: BigInt,
    im: BigInt,
}

impl Zi {
    fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Zi { re: re.into(), im: im.into() }
    }

    fn mul(&self, o: &Zi) -> Zi {
        Zi { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `self / d` when `d` divides `self` in `Z[i]`.
    fn div_exact(&self, d: &Zi) -> Option<Zi> {
        let n = d.norm();
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        (re.is_multiple_of(&n) && im.is_multiple_of(&n)).then(|| Zi { re: re / &n, im: im / n })
    }

    fn is_unit(&self) -> bool {
        self.norm().is_one()
    }
}

/// Gaussian primes above the rational prime `p`, one per prime ideal.
fn primes_above(p: u64) -> Vec<Zi> {
    if p == 2 {
        return vec![Zi::new(1, 1)];
    }
    if p % 4 == 3 {
        return vec![Zi::new(p, 0)];
    }
    let a = (1..).find(|a: &u64| {
        let r = p - a * a;
        let b = r.sqrt();
        b * b == r
    });
    let a = a.expect("p = 1 mod 4 is a sum of two squares");
    let b = (p - a * a).sqrt();
    vec![Zi::new(a, b), Zi::new(a, -(b as i64))]
}

fn rational_primes(mut n: BigInt) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && BigInt::from(p * p) <= n {
        if n.is_multiple_of(&BigInt::from(p)) {
            out.push(p);
            while n.is_multiple_of(&BigInt::from(p)) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if let Some(last) = n.to_u64().filter(|&q| q > 1 && q <= TRIAL_LIMIT * TRIAL_LIMIT) {
        out.push(last);
    }
    out
}

/// A representative of the square class of `d` in `Q(i)*`: `d / r` is a
/// square for the returned `r`, and two values share a class exactly when
/// their representatives agree. Real radicands reduce to their square-free
/// part (`5/4 -> 5`, `-12 -> 3`, `8 -> 2`). Zero maps to zero.
pub fn square_class(d: &GaussianRational) -> GaussianRational {
    if d.is_zero() {
        return GaussianRational::zero();
    }
    // Clearing denominators multiplies by a square.
    let l = d.re.denom().lcm(d.im.denom());
    let l2 = &l * &l;
    let mut z = Zi::new((&d.re * Rational::from(l2.clone())).to_integer(), (&d.im * Rational::from(l2)).to_integer());

    let mut real = BigInt::one();
    let mut gaussian = Zi::new(1, 0);
    for p in rational_primes(z.norm()) {
        let above = primes_above(p);
        let mut odd = Vec::new();
        for pi in &above {
            let mut e = 0u32;
            while let Some(q) = z.div_exact(pi) {
                z = q;
                e += 1;
            }
            odd.push(e % 2 == 1);
        }
        match (p % 4, above.as_slice()) {
            // Both conjugates odd: their product is `p` itself.
            (1, [pi, pj]) => match (odd[0], odd[1]) {
                (true, true) => real *= p,
                (true, false) => gaussian = gaussian.mul(pi),
                (false, true) => gaussian = gaussian.mul(pj),
                (false, false) => {}
            },
            (_, [pi]) if odd[0] => gaussian = gaussian.mul(pi),
            _ => {}
        }
    }
    if !z.is_unit() {
        // Unfactored cofactor beyond the trial bound.
        gaussian = gaussian.mul(&z);
        z = Zi::new(1, 0);
    }
    // Units modulo squares: {1, -1} and {i, -i}; 2 = -i (1 + i)^2 stands for the latter.
    if !z.im.is_zero() {
        real *= 2;
    }
    let r = gaussian.mul(&Zi::new(real, 0));
    let (re, im) = if r.im.is_zero() { (r.re.abs(), r.im) } else { (r.re, r.im) };
    GaussianRational::new(Rational::from(re), Rational::from(im))
}
