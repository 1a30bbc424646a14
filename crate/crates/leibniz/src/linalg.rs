//! Dense exact linear algebra over any [`Field`].
//!
//! Subspaces are stored as their reduced row-echelon basis, so two subspaces
//! are equal exactly when their bases are structurally equal.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    ctx: F::Ctx,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, ctx: &F::Ctx) -> Self {
        Matrix { rows, cols, ctx: ctx.clone(), data: vec![F::zero(ctx); rows * cols] }
    }

    pub fn identity(n: usize, ctx: &F::Ctx) -> Self {
        let mut m = Self::zeros(n, n, ctx);
        for i in 0..n {
            m[(i, i)] = F::one(ctx);
        }
        m
    }

    pub fn diag(entries: &[F], ctx: &F::Ctx) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len(), ctx);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Build from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<F>>, ctx: &F::Ctx) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, ctx: ctx.clone(), data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<F>], n: usize, ctx: &F::Ctx) -> Self {
        let mut m = Self::zeros(n, cols.len(), ctx);
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, &self.ctx);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Result<Self, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols, &self.ctx);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!("{} columns vs vector of length {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(&self.ctx), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, ctx: ctx.clone(), data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<G: Field, E>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> Result<G, E>) -> Result<Matrix<G>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, ctx: ctx.clone(), data })
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    /// Reduced row-echelon form, its rank and pivot columns. Pivots are the
    /// first nonzero entry in column order.
    pub fn rref(&self) -> (Self, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].sub(&f.mul(&m[(r, j)]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(&self.ctx); self.cols];
                v[f] = F::one(&self.ctx);
                for (i, &p) in pivots.iter().enumerate().take(rank) {
                    v[p] = r[(i, f)].neg();
                }
                v
            })
            .collect()
    }

    pub fn invert(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, &self.ctx);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one(&self.ctx);
        }
        let (r, _, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Self::zeros(n, n, &self.ctx);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// One solution of `M x = b`, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let mut aug = Self::zeros(self.rows, self.cols + 1, &self.ctx);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, rank, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(&self.ctx); self.cols];
        for (i, &p) in pivots.iter().enumerate().take(rank) {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn vec_add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_scale<F: Field>(s: &F, a: &[F]) -> Vec<F> {
    a.iter().map(|x| s.mul(x)).collect()
}

pub fn is_zero_vec<F: Field>(a: &[F]) -> bool {
    a.iter().all(Field::is_zero)
}

pub fn unit_vec<F: Field>(n: usize, i: usize, ctx: &F::Ctx) -> Vec<F> {
    let mut v = vec![F::zero(ctx); n];
    v[i] = F::one(ctx);
    v
}

/// A subspace of `F^n`, held as its RREF basis with zero rows removed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
    ctx: F::Ctx,
}

impl<F: Field> Subspace<F> {
    pub fn zero(n: usize, ctx: &F::Ctx) -> Self {
        Subspace { ambient: n, basis: Vec::new(), pivots: Vec::new(), ctx: ctx.clone() }
    }

    pub fn full(n: usize, ctx: &F::Ctx) -> Self {
        Self::span(n, (0..n).map(|i| unit_vec(n, i, ctx)).collect(), ctx)
    }

    /// Span of arbitrary vectors of length `n`.
    pub fn span(n: usize, vectors: Vec<Vec<F>>, ctx: &F::Ctx) -> Self {
        if vectors.is_empty() {
            return Self::zero(n, ctx);
        }
        let m = Matrix::from_rows(vectors, ctx).expect("vectors of equal length");
        assert_eq!(m.cols(), n, "vector length differs from ambient dimension");
        let (r, rank, pivots) = m.rref();
        Subspace { ambient: n, basis: (0..rank).map(|i| r.row(i).to_vec()).collect(), pivots, ctx: ctx.clone() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, b) in r.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *x = x.sub(&f.mul(b));
                    }
                }
            }
        }
        r
    }

    pub fn contains_vec(&self, v: &[F]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains_vec(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    fn check(&self, o: &Self) -> Result<(), LinalgError> {
        if self.ambient == o.ambient {
            Ok(())
        } else {
            Err(LinalgError::AmbientMismatch(self.ambient, o.ambient))
        }
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vec(v)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        let vs = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::span(self.ambient, vs, &self.ctx))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient, &self.ctx));
        }
        // Solve sum a_i u_i + sum b_j v_j = 0; each solution gives sum a_i u_i in both.
        let cols: Vec<Vec<F>> = self.basis.iter().chain(&other.basis).cloned().collect();
        let m = Matrix::from_columns(&cols, self.ambient, &self.ctx);
        let vs = m
            .nullspace()
            .into_iter()
            .map(|coef| {
                self.basis.iter().zip(&coef).fold(vec![F::zero(&self.ctx); self.ambient], |acc, (u, a)| {
                    vec_add(&acc, &vec_scale(a, u))
                })
            })
            .collect();
        Ok(Self::span(self.ambient, vs, &self.ctx))
    }

    pub fn equal(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok(self.basis == other.basis)
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        let vs = self.basis.iter().map(|v| m.mul_vec(v).expect("square map of the ambient space")).collect();
        Self::span(m.rows(), vs, &self.ctx)
    }
}

impl<F: Field> fmt::Display for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (k, v) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, GaussianRational as G};

    fn g(a: i64, b: i64) -> G {
        G::from_ints(a, b)
    }

    fn m(rows: &[&[i64]]) -> Matrix<G> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| g(x, 0)).collect()).collect(), &()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let (r, rank, _) = m(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(rank, 1);
        assert_eq!(r, m(&[&[1, 2], &[0, 0]]));
        let id = Matrix::<G>::identity(5, &());
        assert_eq!(id.rref(), (id.clone(), 5, vec![0, 1, 2, 3, 4]));
        let z = Matrix::from_rows(vec![vec![g(0, 1), g(1, 0)], vec![g(1, 0), g(0, -1)]], &()).unwrap();
        assert_eq!(z.rank(), 1);
    }

    #[test]
    fn inverse_examples() {
        let half = G::from_ratio(1, 2);
        let d = Matrix::diag(&[G::one(), half.clone()], &());
        assert_eq!(d.invert().unwrap(), Matrix::diag(&[G::one(), g(2, 0)], &()));
        let s = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.invert().unwrap(), s);
        let h = m(&[&[1, 1], &[1, -1]]);
        let hi = h.invert().unwrap();
        assert_eq!(hi[(1, 1)], -&half);
        assert_eq!(h.mul(&hi).unwrap(), Matrix::identity(2, &()));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).invert(), Err(LinalgError::Singular));
    }

    #[test]
    fn subspace_examples() {
        let e = |i: usize| unit_vec::<G>(5, i, &());
        let a2 = Subspace::span(5, vec![e(2), e(3), e(4)], &());
        assert!(a2.contains(&Subspace::span(5, vec![e(4)], &())).unwrap());
        let s = Subspace::span(5, vec![e(0)], &()).sum(&Subspace::span(5, vec![e(1)], &())).unwrap();
        assert_eq!(s, Subspace::span(5, vec![e(0), e(1)], &()));
        let u = Subspace::span(5, vec![vec_add(&e(0), &e(1)), e(2)], &());
        let v = Subspace::span(5, vec![e(1), e(2)], &());
        assert_eq!(u.intersection(&v).unwrap(), Subspace::span(5, vec![e(2)], &()));
        assert_eq!(
            Subspace::<G>::zero(3, &()).contains(&Subspace::zero(4, &())),
            Err(LinalgError::AmbientMismatch(3, 4))
        );
    }

    #[test]
    fn works_over_a_prime_field() {
        let f = |x: i64| Fp::new(x, 13);
        let a = Matrix::from_rows(vec![vec![f(2), f(1)], vec![f(1), f(1)]], &13).unwrap();
        assert_eq!(a.mul(&a.invert().unwrap()).unwrap(), Matrix::identity(2, &13));
    }

    #[test]
    fn nullspace_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero_vec(&a.mul_vec(v).unwrap()));
        }
        let x = a.solve(&[g(6, 0), g(12, 0)]).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![g(6, 0), g(12, 0)]);
        assert!(a.solve(&[g(1, 0), g(1, 0)]).is_none());
    }
}
