//! Isomorphism witnesses: exact verification, a filtration-adapted search
//! over a prime field, and lifting of finite-field witnesses to `Q(i)`.

mod fixtures;
mod frame;
mod lift;
mod search;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use thiserror::Error;

use crate::algebra::{fmt_vector, LeibnizAlgebra};
use crate::field::{Field, Fp, GaussianRational};
use crate::linalg::{is_zero_vec, vec_sub, Matrix};

pub use fixtures::{
    embed_algebra, AlgebraRef, EntryRef, Expect, Fixture, FixtureError, FixtureFile, FixtureOutcome, InlineAlgebra,
    ResolvedFixture, WitnessMatrix, BUNDLED_WITNESSES,
};
pub use frame::{adapted_frame, word_basis, Frame, Word, WordBasis};
pub use lift::{lift_entry, lift_witness, LiftConfig};
pub use search::{adapted_search, search_mod_p, search_with, SearchConfig, SearchOutcome, SearchReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("witness matrix is singular")]
    Singular,
    #[error("algebras or witness live over different fields: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("prime {0} is unusable here: {1}")]
    BadPrime(u64, String),
    #[error("search needs nilpotent algebras: {0}")]
    Unsupported(String),
}

/// A base change `x_j = sum_i P_ij e_i` taking `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<F: Field> {
    pub p: Matrix<F>,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessCheck<F: Field> {
    Ok,
    /// First basis pair (zero-based) with `P [e_i,e_j]_B != [P e_i, P e_j]_A`.
    FailAt { i: usize, j: usize, defect: Vec<F> },
}

impl<F: Field> WitnessCheck<F> {
    pub fn is_ok(&self) -> bool {
        matches!(self, WitnessCheck::Ok)
    }
}

impl<F: Field> fmt::Display for WitnessCheck<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessCheck::Ok => write!(f, "ok"),
            WitnessCheck::FailAt { i, j, defect } => {
                write!(f, "fails at (e{}, e{}): defect {}", i + 1, j + 1, fmt_vector(defect))
            }
        }
    }
}

/// Checks that `B = base_change(A, P)`: the columns of `P` are images of the
/// basis of `B` and satisfy `P [e_i, e_j]_B = [P e_i, P e_j]_A`.
pub fn verify_witness<F: Field>(
    a: &LeibnizAlgebra<F>,
    b: &LeibnizAlgebra<F>,
    p: &Matrix<F>,
) -> Result<WitnessCheck<F>, IsoError> {
    if a.ctx() != b.ctx() || a.ctx() != p.ctx() {
        return Err(IsoError::FieldMismatch(format!("{:?}, {:?}, {:?}", a.ctx(), b.ctx(), p.ctx())));
    }
    let n = a.dim();
    if b.dim() != n || p.rows() != n || p.cols() != n {
        return Err(IsoError::DimensionMismatch(format!(
            "A has dimension {n}, B has dimension {}, P is {}x{}",
            b.dim(),
            p.rows(),
            p.cols()
        )));
    }
    if !p.is_invertible() {
        return Err(IsoError::Singular);
    }
    let cols: Vec<Vec<F>> = (0..n).map(|j| p.column(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = p.mul_vec(&b.basis_bracket(i, j)).expect("square");
            let rhs = a.bracket(&cols[i], &cols[j]).expect("same dimension");
            let defect = vec_sub(&lhs, &rhs);
            if !is_zero_vec(&defect) {
                return Ok(WitnessCheck::FailAt { i, j, defect });
            }
        }
    }
    Ok(WitnessCheck::Ok)
}

/// Outcome of an isomorphism test between two instantiated algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// An exact witness over `Q(i)` that passed `verify_witness`.
    Certified(Matrix<GaussianRational>),
    /// Witnesses found modulo each listed prime, none lifted.
    FiniteFieldEvidence { primes: Vec<u64>, witnesses: Vec<Matrix<Fp>> },
    /// Signatures differ; the fields that disagree.
    NonIsomorphic(Vec<&'static str>),
    /// No witness found within the limits.
    Inconclusive { candidates: u64, reason: String },
}

impl IsoVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Certified(_) => "CERTIFIED",
            IsoVerdict::FiniteFieldEvidence { .. } => "FINITE-FIELD-EVIDENCE",
            IsoVerdict::NonIsomorphic(_) => "NON-ISOMORPHIC (signature)",
            IsoVerdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

/// Search modulo `cfg.prime` and lift exactly. When no witness lifts, a
/// second search modulo `evidence_prime` upgrades the result to evidence.
pub fn decide_isomorphism(
    a: &LeibnizAlgebra<GaussianRational>,
    b: &LeibnizAlgebra<GaussianRational>,
    cfg: &SearchConfig,
    evidence_prime: u64,
) -> Result<IsoVerdict, IsoError> {
    let lift_cfg = LiftConfig { denominator_bound: cfg.lift_bound, ..LiftConfig::default() };
    let attempts = AtomicUsize::new(0);
    let report = search_with(a, b, cfg, |w| {
        if let Some(exact) = lift_witness(w, a, b, &lift_cfg) {
            return Some(Ok(exact));
        }
        let k = attempts.fetch_add(1, Ordering::Relaxed);
        (k + 1 >= lift_cfg.max_witnesses).then(|| Err(w.clone()))
    })?;
    let cap_reached = report.outcome == SearchOutcome::CapReached;
    let unlifted = match report.outcome {
        SearchOutcome::NonIsomorphic(d) => return Ok(IsoVerdict::NonIsomorphic(d)),
        SearchOutcome::Found(Ok(exact)) => return Ok(IsoVerdict::Certified(exact)),
        SearchOutcome::Found(Err(w)) => Some(w),
        SearchOutcome::Exhausted | SearchOutcome::CapReached => report.first_witness,
    };
    let Some(first) = unlifted else {
        let reason = if cap_reached {
            format!("candidate cap {} reached modulo {}", cfg.candidate_cap, cfg.prime)
        } else {
            format!("no witness modulo {}", cfg.prime)
        };
        return Ok(IsoVerdict::Inconclusive { candidates: report.candidates, reason });
    };
    let second = adapted_search(a, b, &SearchConfig { prime: evidence_prime, ..cfg.clone() })?;
    Ok(match second.outcome {
        SearchOutcome::Found(w) => {
            IsoVerdict::FiniteFieldEvidence { primes: vec![cfg.prime, evidence_prime], witnesses: vec![first, w] }
        }
        _ => IsoVerdict::Inconclusive {
            candidates: report.candidates + second.candidates,
            reason: format!("witness modulo {} did not lift; none found modulo {evidence_prime}", cfg.prime),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use GaussianRational as G;
    use crate::linalg::unit_vec;

    fn e(k: usize) -> Vec<G> {
        unit_vec(5, k, &())
    }

    fn a1() -> LeibnizAlgebra<G> {
        let neg = |k| crate::linalg::vec_scale(&G::from_i64(-1), &e(k));
        LeibnizAlgebra::from_products(
            5,
            &(),
            vec![
                (0, 0, e(4)),
                (0, 1, e(2)),
                (1, 0, neg(2)),
                (1, 2, e(3)),
                (2, 1, neg(3)),
                (0, 3, e(4)),
                (3, 0, neg(4)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn identity_and_round_trip() {
        let a = a1();
        assert!(verify_witness(&a, &a, &Matrix::identity(5, &())).unwrap().is_ok());
        let mut p = Matrix::identity(5, &());
        p[(0, 1)] = G::from_i64(2);
        p[(4, 2)] = G::i();
        let b = a.base_change(&p).unwrap();
        assert!(verify_witness(&a, &b, &p).unwrap().is_ok());
        assert!(!verify_witness(&a, &a, &p).unwrap().is_ok());
    }

    #[test]
    fn composition_uses_p_times_q() {
        let a = a1();
        let mut p = Matrix::identity(5, &());
        p[(0, 1)] = G::from_i64(1);
        let b = a.base_change(&p).unwrap();
        let mut q = Matrix::identity(5, &());
        q[(2, 4)] = G::from_i64(3);
        q[(1, 1)] = G::from_i64(-1);
        let c = b.base_change(&q).unwrap();
        let pq = p.mul(&q).unwrap();
        assert!(verify_witness(&a, &c, &pq).unwrap().is_ok());
    }

    #[test]
    fn singular_is_an_error() {
        let a = a1();
        assert_eq!(verify_witness(&a, &a, &Matrix::zeros(5, 5, &())), Err(IsoError::Singular));
    }
}
