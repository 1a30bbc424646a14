//! Left Leibniz algebras given by structure constants.
//!
//! Indices are zero-based in code and one-based whenever printed, so
//! `e1..en` in reports match the tables.

use std::fmt;

use thiserror::Error;

use crate::field::Field;
use crate::linalg::{is_zero_vec, unit_vec, vec_add, vec_scale, vec_sub, LinalgError, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("base change matrix is singular")]
    Singular,
}

impl From<LinalgError> for AlgebraError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Singular => AlgebraError::Singular,
            other => AlgebraError::DimensionMismatch(other.to_string()),
        }
    }
}

/// `[e_i, e_j] = sum_k c_ij^k e_k`, stored sparsely: absent products are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeibnizAlgebra<F: Field> {
    n: usize,
    ctx: F::Ctx,
    table: Vec<Option<Vec<F>>>,
}

/// Outcome of checking the left Leibniz identity on all basis triples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LeibnizCheck<F: Field> {
    Ok,
    /// First failing triple `(i, j, k)` (zero-based) and
    /// `[e_i,[e_j,e_k]] - [[e_i,e_j],e_k] - [e_j,[e_i,e_k]]`.
    Violation { i: usize, j: usize, k: usize, defect: Vec<F> },
}

impl<F: Field> LeibnizCheck<F> {
    pub fn is_ok(&self) -> bool {
        matches!(self, LeibnizCheck::Ok)
    }
}

impl<F: Field> fmt::Display for LeibnizCheck<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeibnizCheck::Ok => write!(f, "ok"),
            LeibnizCheck::Violation { i, j, k, defect } => {
                write!(f, "violation at (e{}, e{}, e{}): defect {}", i + 1, j + 1, k + 1, fmt_vector(defect))
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// A descending chain of ideals. `subspaces[0]` is the whole algebra in both
/// kinds; the chain stops at the first repeat.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesReport<F: Field> {
    pub kind: SeriesKind,
    pub dims: Vec<usize>,
    pub subspaces: Vec<Subspace<F>>,
}

impl<F: Field> SeriesReport<F> {
    /// `A^i` (or `D^{i-1}`) for one-based `i`; stable tail beyond the end.
    pub fn term(&self, i: usize) -> &Subspace<F> {
        let idx = i.saturating_sub(1).min(self.subspaces.len() - 1);
        &self.subspaces[idx]
    }

    pub fn dim(&self, i: usize) -> usize {
        self.term(i).dim()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Annihilators<F: Field> {
    pub left: Subspace<F>,
    pub right: Subspace<F>,
    pub center: Subspace<F>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, serde::Serialize, serde::Deserialize)]
pub enum SplitStatus {
    /// The centre is not inside `A^2`, so the algebra splits off a central summand.
    SplitCertified,
    /// The necessary condition for non-splitness holds; nothing more is claimed.
    NotCertified,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, serde::Serialize, serde::Deserialize)]
pub struct Flags {
    pub is_lie: bool,
    pub is_nilpotent: bool,
    pub nilpotency_class: Option<usize>,
    pub is_filiform: bool,
    pub split_status: SplitStatus,
}

pub fn fmt_vector<F: Field>(v: &[F]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let term = if c.is_one() {
            format!("e{}", k + 1)
        } else if s.contains(' ') {
            format!("({s})*e{}", k + 1)
        } else {
            format!("{s}*e{}", k + 1)
        };
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Field> LeibnizAlgebra<F> {
    /// The abelian algebra of dimension `n`.
    pub fn abelian(n: usize, ctx: &F::Ctx) -> Self {
        LeibnizAlgebra { n, ctx: ctx.clone(), table: vec![None; n * n] }
    }

    /// Build from `(i, j, [e_i, e_j])` triples with zero-based indices.
    pub fn from_products(
        n: usize,
        ctx: &F::Ctx,
        products: impl IntoIterator<Item = (usize, usize, Vec<F>)>,
    ) -> Result<Self, AlgebraError> {
        let mut a = Self::abelian(n, ctx);
        for (i, j, v) in products {
            a.set_product(i, j, v)?;
        }
        Ok(a)
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Vec<F>) -> Result<(), AlgebraError> {
        if i >= self.n || j >= self.n || v.len() != self.n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "product [e{}, e{}] with {} coordinates in dimension {}",
                i + 1,
                j + 1,
                v.len(),
                self.n
            )));
        }
        self.table[i * self.n + j] = if is_zero_vec(&v) { None } else { Some(v) };
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    /// Structure constant `c_ij^k`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> F {
        self.table[i * self.n + j].as_ref().map_or_else(|| F::zero(&self.ctx), |v| v[k].clone())
    }

    /// `[e_i, e_j]`, or `None` when it is zero.
    pub fn product(&self, i: usize, j: usize) -> Option<&[F]> {
        self.table[i * self.n + j].as_deref()
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<F> {
        self.product(i, j).map_or_else(|| vec![F::zero(&self.ctx); self.n], <[F]>::to_vec)
    }

    /// Nonzero products in `(i, j)` order.
    pub fn products(&self) -> impl Iterator<Item = (usize, usize, &[F])> {
        self.table
            .iter()
            .enumerate()
            .filter_map(move |(idx, v)| v.as_deref().map(|v| (idx / self.n, idx % self.n, v)))
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Result<Vec<F>, AlgebraError> {
        if x.len() != self.n || y.len() != self.n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "vectors of length {} and {} in dimension {}",
                x.len(),
                y.len(),
                self.n
            )));
        }
        let mut out = vec![F::zero(&self.ctx); self.n];
        for (i, j, v) in self.products() {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let s = x[i].mul(&y[j]);
            for (o, c) in out.iter_mut().zip(v) {
                if !c.is_zero() {
                    *o = o.add(&s.mul(c));
                }
            }
        }
        Ok(out)
    }

    fn br(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.bracket(x, y).expect("internal vectors have the right length")
    }

    fn e(&self, i: usize) -> Vec<F> {
        unit_vec(self.n, i, &self.ctx)
    }

    /// Check `[a,[b,c]] = [[a,b],c] + [b,[a,c]]` on every basis triple.
    pub fn check_leibniz(&self) -> LeibnizCheck<F> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let eij = self.basis_bracket(i, j);
                for k in 0..n {
                    let lhs = self.br(&self.e(i), &self.basis_bracket(j, k));
                    let r1 = self.br(&eij, &self.e(k));
                    let r2 = self.br(&self.e(j), &self.basis_bracket(i, k));
                    let defect = vec_sub(&lhs, &vec_add(&r1, &r2));
                    if !is_zero_vec(&defect) {
                        return LeibnizCheck::Violation { i, j, k, defect };
                    }
                }
            }
        }
        LeibnizCheck::Ok
    }

    /// `[U, V]`, the span of brackets of basis vectors.
    pub fn subspace_product(&self, u: &Subspace<F>, v: &Subspace<F>) -> Result<Subspace<F>, AlgebraError> {
        if u.ambient() != self.n || v.ambient() != self.n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "subspaces of F^{} and F^{} in dimension {}",
                u.ambient(),
                v.ambient(),
                self.n
            )));
        }
        let mut vs = Vec::new();
        for x in u.basis() {
            for y in v.basis() {
                let b = self.br(x, y);
                if !is_zero_vec(&b) {
                    vs.push(b);
                }
            }
        }
        Ok(Subspace::span(self.n, vs, &self.ctx))
    }

    pub fn full(&self) -> Subspace<F> {
        Subspace::full(self.n, &self.ctx)
    }

    /// `A^2 = [A, A]`.
    pub fn square(&self) -> Subspace<F> {
        let vs = self.products().map(|(_, _, v)| v.to_vec()).collect();
        Subspace::span(self.n, vs, &self.ctx)
    }

    pub fn series(&self, kind: SeriesKind) -> SeriesReport<F> {
        let full = self.full();
        let mut subspaces = vec![full.clone()];
        loop {
            let last = subspaces.last().expect("nonempty");
            let next = match kind {
                SeriesKind::LowerCentral => self.subspace_product(&full, last),
                SeriesKind::Derived => self.subspace_product(last, last),
            }
            .expect("same ambient dimension");
            if &next == last {
                break;
            }
            let stop = next.is_zero();
            subspaces.push(next);
            if stop {
                break;
            }
        }
        SeriesReport { kind, dims: subspaces.iter().map(Subspace::dim).collect(), subspaces }
    }

    pub fn lower_central(&self) -> SeriesReport<F> {
        self.series(SeriesKind::LowerCentral)
    }

    /// `Leib(A)`: spanned by `[e_i, e_i]` and `[e_i, e_j] + [e_j, e_i]`.
    pub fn leib_ideal(&self) -> Subspace<F> {
        let mut vs = Vec::new();
        for i in 0..self.n {
            vs.push(self.basis_bracket(i, i));
            for j in i + 1..self.n {
                vs.push(vec_add(&self.basis_bracket(i, j), &self.basis_bracket(j, i)));
            }
        }
        vs.retain(|v| !is_zero_vec(v));
        Subspace::span(self.n, vs, &self.ctx)
    }

    fn kernel_of(&self, rows: Vec<Vec<F>>) -> Subspace<F> {
        if rows.is_empty() {
            return self.full();
        }
        let m = Matrix::from_rows(rows, &self.ctx).expect("equal row lengths");
        Subspace::span(self.n, m.nullspace(), &self.ctx)
    }

    /// Left annihilator `{x : [x, A] = 0}`, right annihilator `{x : [A, x] = 0}`
    /// and the centre, their intersection.
    pub fn annihilators(&self) -> Annihilators<F> {
        let n = self.n;
        // Row (j, k) of the left system: x -> coefficient of e_k in [x, e_j].
        let mut left_rows = Vec::new();
        let mut right_rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let l: Vec<F> = (0..n).map(|i| self.constant(i, j, k)).collect();
                if !is_zero_vec(&l) {
                    left_rows.push(l);
                }
                let r: Vec<F> = (0..n).map(|i| self.constant(j, i, k)).collect();
                if !is_zero_vec(&r) {
                    right_rows.push(r);
                }
            }
        }
        let left = self.kernel_of(left_rows);
        let right = self.kernel_of(right_rows);
        let center = left.intersection(&right).expect("same ambient dimension");
        Annihilators { left, right, center }
    }

    pub fn center(&self) -> Subspace<F> {
        self.annihilators().center
    }

    /// Radicals of the symmetric part `[x,y] + [y,x]` and of the skew part
    /// `[x,y] - [y,x]`: the `x` pairing to zero with all of `A`.
    pub fn radicals(&self) -> (Subspace<F>, Subspace<F>) {
        let n = self.n;
        let mut sym_rows = Vec::new();
        let mut skew_rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let s: Vec<F> = (0..n).map(|i| self.constant(i, j, k).add(&self.constant(j, i, k))).collect();
                if !is_zero_vec(&s) {
                    sym_rows.push(s);
                }
                let a: Vec<F> = (0..n).map(|i| self.constant(i, j, k).sub(&self.constant(j, i, k))).collect();
                if !is_zero_vec(&a) {
                    skew_rows.push(a);
                }
            }
        }
        (self.kernel_of(sym_rows), self.kernel_of(skew_rows))
    }

    /// `dim Der(A)`: linear maps `D` with `D[x,y] = [Dx,y] + [x,Dy]`.
    pub fn derivation_dim(&self) -> usize {
        self.operator_dim(&[(true, true)])
    }

    /// Dimension of the space of maps `T` satisfying every condition
    /// `T[x,y] = l [Tx,y] + r [x,Ty]`, with `(l, r)` taken as 0/1 flags.
    fn operator_dim(&self, conditions: &[(bool, bool)]) -> usize {
        let n = self.n;
        // Unknown `r * n + s` is the coefficient of `e_r` in `T e_s`.
        let mut rows = Vec::new();
        for &(left, right) in conditions {
            for i in 0..n {
                for j in 0..n {
                    for m in 0..n {
                        let mut row = vec![F::zero(&self.ctx); n * n];
                        for k in 0..n {
                            row[m * n + k] = row[m * n + k].add(&self.constant(i, j, k));
                            if left {
                                row[k * n + i] = row[k * n + i].sub(&self.constant(k, j, m));
                            }
                            if right {
                                row[k * n + j] = row[k * n + j].sub(&self.constant(i, k, m));
                            }
                        }
                        if !is_zero_vec(&row) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        if rows.is_empty() {
            return n * n;
        }
        n * n - Matrix::from_rows(rows, &self.ctx).expect("equal row lengths").rank()
    }

    /// Span of all commutators `[x,y] - [y,x]`.
    pub fn commutator_span(&self) -> Subspace<F> {
        let mut vs = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let v = vec_sub(&self.basis_bracket(i, j), &self.basis_bracket(j, i));
                if !is_zero_vec(&v) {
                    vs.push(v);
                }
            }
        }
        Subspace::span(self.n, vs, &self.ctx)
    }

    /// Lie exactly when every constant is antisymmetric, including `c_ii = 0`.
    pub fn is_lie(&self) -> bool {
        (0..self.n).all(|i| {
            (i..self.n).all(|j| is_zero_vec(&vec_add(&self.basis_bracket(i, j), &self.basis_bracket(j, i))))
        })
    }

    pub fn classify_flags(&self) -> Flags {
        let lcs = self.lower_central();
        let is_nilpotent = lcs.subspaces.last().is_some_and(Subspace::is_zero);
        let nilpotency_class = is_nilpotent.then(|| lcs.dims.len() - 1);
        let n = self.n;
        let is_filiform = is_nilpotent && n >= 2 && (2..=n).all(|i| lcs.dim(i) == n - i);
        let a2 = self.square();
        let split_status = if a2.contains(&self.center()).expect("same ambient") {
            SplitStatus::NotCertified
        } else {
            SplitStatus::SplitCertified
        };
        Flags { is_lie: self.is_lie(), is_nilpotent, nilpotency_class, is_filiform, split_status }
    }

    /// The same algebra in the basis `x_j = sum_i P_ij e_i`.
    pub fn base_change(&self, p: &Matrix<F>) -> Result<Self, AlgebraError> {
        if p.rows() != self.n || p.cols() != self.n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} base change in dimension {}",
                p.rows(),
                p.cols(),
                self.n
            )));
        }
        let pinv = p.invert()?;
        let cols: Vec<Vec<F>> = (0..self.n).map(|j| p.column(j)).collect();
        let mut out = Self::abelian(self.n, &self.ctx);
        for a in 0..self.n {
            for b in 0..self.n {
                let v = self.br(&cols[a], &cols[b]);
                if !is_zero_vec(&v) {
                    out.set_product(a, b, pinv.mul_vec(&v)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Coefficient-wise image in another field.
    pub fn try_map<G: Field, E>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> Result<G, E>) -> Result<LeibnizAlgebra<G>, E> {
        let mut out = LeibnizAlgebra::<G>::abelian(self.n, ctx);
        for (i, j, v) in self.products() {
            let w = v.iter().map(&f).collect::<Result<Vec<_>, E>>()?;
            out.table[i * self.n + j] = if is_zero_vec(&w) { None } else { Some(w) };
        }
        Ok(out)
    }

    /// Left multiplication `x -> [e_i, x]` as a matrix on column vectors.
    pub fn left_mult(&self, i: usize) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.n).map(|k| self.basis_bracket(i, k)).collect();
        Matrix::from_columns(&cols, self.n, &self.ctx)
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = self.clone();
        for v in out.table.iter_mut().flatten() {
            *v = vec_scale(s, v);
        }
        out
    }
}

impl<F: Field> fmt::Display for LeibnizAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, v) in self.products() {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "[e{}, e{}] = {}", i + 1, j + 1, fmt_vector(v))?;
        }
        if first {
            write!(f, "(abelian, dimension {})", self.n)?;
        }
        Ok(())
    }
}
