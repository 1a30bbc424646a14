//! Exact scalar fields.
//!
//! Every coefficient the kernel touches lives in one of four fields: the
//! rationals, the Gaussian rationals `Q(i)`, a quadratic extension `Q(i)(sqrt d)`
//! and a prime field `GF(p)` with `p = 1 mod 4`. Elements carry their field
//! instance (the [`Field::Ctx`]) so matrices and algebras can be built without a
//! global registry.

mod gaussian;
mod literal;
mod prime;
mod quad;
mod rational;
mod squares;

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

pub use gaussian::GaussianRational;
pub use literal::{parse_matrix, parse_scalar, ScalarLiteral};
pub use prime::{sqrt_minus_one, Fp};
pub use quad::QuadExt;
pub use rational::{rational_sqrt, Rational};
pub use squares::square_class;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different field instances ({0})")]
    FieldMismatch(String),
    #[error("denominator divisible by p = {0}")]
    DenominatorDividesP(u64),
    #[error("{0} is not a prime congruent to 1 mod 4")]
    BadPrime(u64),
    #[error("scalar cannot be represented in this field: {0}")]
    NotRepresentable(String),
}

/// An exact field. Arithmetic between elements of different instances
/// (different `p`, different `d`) is a programming error and panics; the
/// `try_*` helpers report it as [`FieldError::FieldMismatch`] instead.
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, FieldError>;
    /// Image of a Gaussian rational in this field instance.
    fn from_gaussian(g: &GaussianRational, ctx: &Self::Ctx) -> Result<Self, FieldError>;

    fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn from_i64(v: i64, ctx: &Self::Ctx) -> Self {
        Self::from_gaussian(&GaussianRational::from_i64(v), ctx).expect("integers embed in every supported field")
    }

    fn try_add(&self, rhs: &Self) -> Result<Self, FieldError> {
        same_ctx(self, rhs)?;
        Ok(self.add(rhs))
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self, FieldError> {
        same_ctx(self, rhs)?;
        Ok(self.mul(rhs))
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        same_ctx(self, rhs)?;
        self.div(rhs)
    }
}

fn same_ctx<F: Field>(a: &F, b: &F) -> Result<(), FieldError> {
    if a.ctx() == b.ctx() {
        Ok(())
    } else {
        Err(FieldError::FieldMismatch(format!("{:?} vs {:?}", a.ctx(), b.ctx())))
    }
}

/// Outcome of taking a square root of a Gaussian rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SqrtResult {
    /// `s` with `s * s = a` inside `Q(i)`.
    InField(GaussianRational),
    /// No root in `Q(i)`; the generator of `QuadExt(d = a)` is the root.
    Extension { d: GaussianRational },
}

impl SqrtResult {
    pub fn note(&self) -> Option<String> {
        match self {
            SqrtResult::InField(_) => None,
            SqrtResult::Extension { d } => Some(format!("no root in Q(i); extension sqrt({d})")),
        }
    }
}

/// Square root inside `Q(i)` when it exists, otherwise a description of the
/// quadratic extension that supplies one. Zero maps to zero.
pub fn sqrt_in_field(a: &GaussianRational) -> SqrtResult {
    match a.sqrt() {
        Some(s) => SqrtResult::InField(s),
        None => SqrtResult::Extension { d: a.clone() },
    }
}

/// Reduction `Q(i) -> GF(p)` sending `i` to the smaller square root of `-1`.
pub fn reduce_mod_p(a: &GaussianRational, p: u64) -> Result<Fp, FieldError> {
    Fp::from_gaussian(a, &p)
}
