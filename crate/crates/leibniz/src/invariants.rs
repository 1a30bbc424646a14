//! Basis-free dimension data, used to separate algebras and to check the
//! hypotheses each catalogue family is claimed to satisfy.

use serde::{Deserialize, Serialize};

use crate::algebra::{LeibnizAlgebra, SeriesKind};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantSignature {
    pub n: usize,
    /// `dim A^1, dim A^2, ...` down to the stable term.
    pub lower_central_dims: Vec<usize>,
    /// `dim D^1 = dim A^2, dim D^2, ...` down to the stable term.
    pub derived_dims: Vec<usize>,
    pub dim_leib: usize,
    pub dim_center: usize,
    pub dim_left_ann: usize,
    pub dim_right_ann: usize,
    pub dim_center_cap_a2: usize,
    pub dim_leib_cap_a3: usize,
    /// `dim [A^2, A]`.
    pub dim_a2a: usize,
    /// `dim [A^2, A^2]`.
    pub dim_a2a2: usize,
    /// `dim` of the span of all `[x,y] - [y,x]`.
    pub dim_commutators: usize,
    /// `dim {x : [x,a] + [a,x] = 0 for all a}`.
    pub dim_sym_radical: usize,
    /// `dim {x : [x,a] = [a,x] for all a}`.
    pub dim_skew_radical: usize,
    /// `dim Der(A)`.
    pub dim_derivations: usize,
    pub is_lie: bool,
}

impl InvariantSignature {
    /// `dim A^i` for one-based `i`, reading past the end as the stable value.
    pub fn dim_lower(&self, i: usize) -> usize {
        let idx = i.saturating_sub(1).min(self.lower_central_dims.len() - 1);
        self.lower_central_dims[idx]
    }

    /// Names of the fields that differ between two signatures.
    pub fn differences(&self, other: &Self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut cmp = |name, same: bool| {
            if !same {
                out.push(name);
            }
        };
        cmp("n", self.n == other.n);
        cmp("lower_central_dims", self.lower_central_dims == other.lower_central_dims);
        cmp("derived_dims", self.derived_dims == other.derived_dims);
        cmp("dim_leib", self.dim_leib == other.dim_leib);
        cmp("dim_center", self.dim_center == other.dim_center);
        cmp("dim_left_ann", self.dim_left_ann == other.dim_left_ann);
        cmp("dim_right_ann", self.dim_right_ann == other.dim_right_ann);
        cmp("dim_center_cap_a2", self.dim_center_cap_a2 == other.dim_center_cap_a2);
        cmp("dim_leib_cap_a3", self.dim_leib_cap_a3 == other.dim_leib_cap_a3);
        cmp("dim_a2a", self.dim_a2a == other.dim_a2a);
        cmp("dim_a2a2", self.dim_a2a2 == other.dim_a2a2);
        cmp("dim_commutators", self.dim_commutators == other.dim_commutators);
        cmp("dim_sym_radical", self.dim_sym_radical == other.dim_sym_radical);
        cmp("dim_skew_radical", self.dim_skew_radical == other.dim_skew_radical);
        cmp("dim_derivations", self.dim_derivations == other.dim_derivations);
        cmp("is_lie", self.is_lie == other.is_lie);
        out
    }
}

pub fn signature<F: Field>(a: &LeibnizAlgebra<F>) -> InvariantSignature {
    let lcs = a.series(SeriesKind::LowerCentral);
    let derived = a.series(SeriesKind::Derived);
    let ann = a.annihilators();
    let leib = a.leib_ideal();
    let a2 = lcs.term(2).clone();
    let a3 = lcs.term(3).clone();
    let full = a.full();
    let (sym_radical, skew_radical) = a.radicals();
    InvariantSignature {
        n: a.dim(),
        lower_central_dims: lcs.dims.clone(),
        derived_dims: derived.dims[1..].to_vec(),
        dim_leib: leib.dim(),
        dim_center: ann.center.dim(),
        dim_left_ann: ann.left.dim(),
        dim_right_ann: ann.right.dim(),
        dim_center_cap_a2: ann.center.intersection(&a2).expect("same ambient").dim(),
        dim_leib_cap_a3: leib.intersection(&a3).expect("same ambient").dim(),
        dim_a2a: a.subspace_product(&a2, &full).expect("same ambient").dim(),
        dim_a2a2: a.subspace_product(&a2, &a2).expect("same ambient").dim(),
        dim_commutators: a.commutator_span().dim(),
        dim_sym_radical: sym_radical.dim(),
        dim_skew_radical: skew_radical.dim(),
        dim_derivations: a.derivation_dim(),
        is_lie: leib.is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaussianRational as G;
    use crate::linalg::unit_vec;

    #[test]
    fn abelian_signature() {
        let s = signature(&LeibnizAlgebra::<G>::abelian(5, &()));
        assert_eq!(s.lower_central_dims, vec![5, 0]);
        assert_eq!(s.derived_dims, vec![0]);
        assert_eq!((s.dim_leib, s.dim_center, s.is_lie), (0, 5, true));
    }

    #[test]
    fn single_generator_chain_signature() {
        let a = LeibnizAlgebra::<G>::from_products(5, &(), (0..4).map(|k| (0, k, unit_vec(5, k + 1, &())))).unwrap();
        let s = signature(&a);
        assert_eq!(s.lower_central_dims, vec![5, 4, 3, 2, 1, 0]);
        assert_eq!(s.dim_leib, 4);
        assert_eq!(s.derived_dims[0], s.lower_central_dims[1]);
        assert!(s.dim_center <= s.dim_left_ann.min(s.dim_right_ann));
        assert!(s.differences(&s).is_empty());
    }

    #[test]
    fn heisenberg_radicals_and_derivations() {
        let minus = unit_vec::<G>(3, 2, &()).iter().map(|x| -x).collect();
        let h = LeibnizAlgebra::<G>::from_products(3, &(), [(0, 1, unit_vec(3, 2, &())), (1, 0, minus)]).unwrap();
        let s = signature(&h);
        assert_eq!((s.dim_commutators, s.dim_sym_radical, s.dim_skew_radical), (1, 3, 1));
        assert_eq!(s.dim_derivations, 6);
        let ab = signature(&LeibnizAlgebra::<G>::abelian(4, &()));
        assert_eq!((ab.dim_commutators, ab.dim_sym_radical, ab.dim_derivations), (0, 4, 16));
    }
}
