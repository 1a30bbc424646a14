//! Dimension bounds for nilpotent Leibniz algebras whose `Leib(A)` is a line.
//!
//! Both checks only report; an algebra that breaks a bound is a sign of a
//! transcription or kernel error, not something to reject at construction.

use serde::{Deserialize, Serialize};

use crate::algebra::LeibnizAlgebra;
use crate::field::Field;

/// `(k^2 - k + 2) / 2`, the bound on `dim A^2` when `k = n - dim Z(A)`.
pub fn lemma4_bound(k: usize) -> usize {
    (k * k - k + 2) / 2
}

/// `(t + (k^2 + k + 2) / 2, t + (k^2 + k) / 2)` with `k = n - dim A^2` and
/// `t = dim A^3`. The second bound needs `Leib(A) ⊆ A^3`.
pub fn lemma5_bounds(k: usize, t: usize) -> (usize, usize) {
    (t + (k * k + k + 2) / 2, t + (k * k + k) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma4Report {
    pub applicable: bool,
    pub k: usize,
    pub bound: usize,
    pub dim_a2: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma5Report {
    pub applicable: bool,
    pub k: usize,
    pub t: usize,
    pub bound_i: usize,
    pub bound_ii: usize,
    pub leib_in_a3: bool,
    pub holds_i: bool,
    /// `None` unless `Leib(A) ⊆ A^3`.
    pub holds_ii: Option<bool>,
}

impl Lemma5Report {
    pub fn holds(&self) -> bool {
        !self.applicable || (self.holds_i && self.holds_ii != Some(false))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub lemma4: Lemma4Report,
    pub lemma5: Lemma5Report,
}

impl BoundsReport {
    pub fn holds(&self) -> bool {
        (!self.lemma4.applicable || self.lemma4.holds) && self.lemma5.holds()
    }
}

fn applicable<F: Field>(a: &LeibnizAlgebra<F>) -> bool {
    a.leib_ideal().dim() == 1 && a.classify_flags().is_nilpotent
}

pub fn lemma4_check<F: Field>(a: &LeibnizAlgebra<F>) -> Lemma4Report {
    let n = a.dim();
    let k = n - a.center().dim();
    let bound = lemma4_bound(k);
    let dim_a2 = a.square().dim();
    let applicable = applicable(a);
    Lemma4Report { applicable, k, bound, dim_a2, holds: !applicable || dim_a2 <= bound }
}

pub fn lemma5_check<F: Field>(a: &LeibnizAlgebra<F>) -> Lemma5Report {
    let n = a.dim();
    let lcs = a.lower_central();
    let k = n - lcs.dim(2);
    let t = lcs.dim(3);
    let (bound_i, bound_ii) = lemma5_bounds(k, t);
    let leib_in_a3 = lcs.term(3).contains(&a.leib_ideal()).expect("same ambient");
    let applicable = applicable(a);
    Lemma5Report {
        applicable,
        k,
        t,
        bound_i,
        bound_ii,
        leib_in_a3,
        holds_i: !applicable || n <= bound_i,
        holds_ii: (applicable && leib_in_a3).then_some(n <= bound_ii),
    }
}

pub fn bounds_report<F: Field>(a: &LeibnizAlgebra<F>) -> BoundsReport {
    BoundsReport { n: a.dim(), lemma4: lemma4_check(a), lemma5: lemma5_check(a) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaussianRational as G;

    #[test]
    fn closed_forms() {
        assert_eq!(lemma4_bound(2), 2);
        assert_eq!(lemma4_bound(1), 1);
        assert_eq!(lemma4_bound(4), 7);
        assert_eq!(lemma5_bounds(2, 1).1, 4);
        assert_eq!(lemma5_bounds(2, 2).0, 6);
    }

    #[test]
    fn abelian_is_not_applicable() {
        let r = bounds_report(&LeibnizAlgebra::<G>::abelian(1, &()));
        assert!(!r.lemma4.applicable && !r.lemma5.applicable);
        assert!(r.holds());
    }
}
