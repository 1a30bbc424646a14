//! 2x2 bilinear forms under congruence `M -> Q^T M Q`.
//!
//! Over an algebraically closed field every nonzero 2x2 form is congruent to
//! exactly one of
//!
//! ```text
//! (i)  [[0, 1], [-1, 0]]    (ii) [[1, 0], [0, 0]]    (iii) [[1, 0], [0, 1]]
//! (iv) [[0, 1], [-1, 1]]    (v)  [[0, 1], [c, 0]],  c != 1, -1
//! ```
//!
//! with `c` determined up to `c <-> 1/c`. The type is read off from the ranks
//! of the symmetric part `S` and skew part `K`; for (v) the basis-free
//! quantity `det K / det S = -((1 - c) / (1 + c))^2` pins down `{c, 1/c}`.
//!
//! Every branch needs at most one square root, so `Q` has entries either in
//! `Q(i)` or in a single extension `Q(i)(sqrt d)`.
//!
//! Stored `c` is the lexicographically larger of `{c, 1/c}` on `(re, im)`
//! (extension elements compare on `(a, b)`).

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::algebra::LeibnizAlgebra;
use crate::field::{square_class, Field, GaussianRational as G, QuadExt};
use crate::linalg::{is_zero_vec, unit_vec, Matrix, Subspace};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub enum KindTag {
    Zero,
    Skew,
    SymRank1,
    SymRank2,
    Mixed,
    MixedC,
}

impl KindTag {
    pub fn roman(self) -> &'static str {
        match self {
            KindTag::Zero => "zero",
            KindTag::Skew => "(i)",
            KindTag::SymRank1 => "(ii)",
            KindTag::SymRank2 => "(iii)",
            KindTag::Mixed => "(iv)",
            KindTag::MixedC => "(v)",
        }
    }
}

impl fmt::Display for KindTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CanonicalKind<F> {
    Zero,
    Skew,
    SymRank1,
    SymRank2,
    Mixed,
    MixedC(F),
}

impl<F: Field> CanonicalKind<F> {
    pub fn tag(&self) -> KindTag {
        match self {
            CanonicalKind::Zero => KindTag::Zero,
            CanonicalKind::Skew => KindTag::Skew,
            CanonicalKind::SymRank1 => KindTag::SymRank1,
            CanonicalKind::SymRank2 => KindTag::SymRank2,
            CanonicalKind::Mixed => KindTag::Mixed,
            CanonicalKind::MixedC(_) => KindTag::MixedC,
        }
    }

    /// The representative matrix of this kind.
    pub fn matrix(&self, ctx: &F::Ctx) -> Matrix<F> {
        let z = F::zero(ctx);
        let o = F::one(ctx);
        let m = o.neg();
        let rows = match self {
            CanonicalKind::Zero => vec![vec![z.clone(), z.clone()], vec![z.clone(), z]],
            CanonicalKind::Skew => vec![vec![z.clone(), o], vec![m, z]],
            CanonicalKind::SymRank1 => vec![vec![o, z.clone()], vec![z.clone(), z]],
            CanonicalKind::SymRank2 => vec![vec![o.clone(), z.clone()], vec![z, o]],
            CanonicalKind::Mixed => vec![vec![z.clone(), o.clone()], vec![m, o]],
            CanonicalKind::MixedC(c) => vec![vec![z.clone(), o], vec![c.clone(), z]],
        };
        Matrix::from_rows(rows, ctx).expect("2x2")
    }
}

impl<F: Field> fmt::Display for CanonicalKind<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalKind::MixedC(c) => write!(f, "(v) with c = {c}"),
            other => write!(f, "{}", other.tag()),
        }
    }
}

/// A canonical kind together with the congruence matrix reaching it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Congruence {
    Base { kind: CanonicalKind<G>, q: Matrix<G> },
    /// `Q` needs `sqrt(d)`, which is not in `Q(i)`.
    Extended { d: G, kind: CanonicalKind<QuadExt>, q: Matrix<QuadExt> },
}

impl Congruence {
    pub fn tag(&self) -> KindTag {
        match self {
            Congruence::Base { kind, .. } => kind.tag(),
            Congruence::Extended { kind, .. } => kind.tag(),
        }
    }

    /// Field-extension note, when one was needed.
    pub fn note(&self) -> Option<String> {
        match self {
            Congruence::Base { .. } => None,
            Congruence::Extended { d, .. } => Some(format!("no root in Q(i); Q has entries in Q(i)(sqrt({d}))")),
        }
    }

    pub fn kind_string(&self) -> String {
        match self {
            Congruence::Base { kind, .. } => kind.to_string(),
            Congruence::Extended { kind, .. } => kind.to_string(),
        }
    }

    pub fn q_string(&self) -> String {
        match self {
            Congruence::Base { q, .. } => q.to_string(),
            Congruence::Extended { q, .. } => q.to_string(),
        }
    }

    /// Recheck `Q^T M Q` against the representative, exactly.
    pub fn verify(&self, m: &Matrix<G>) -> bool {
        match self {
            Congruence::Base { kind, q } => q.is_invertible() && congruent_image(m, q) == kind.matrix(&()),
            Congruence::Extended { d, kind, q } => {
                let mq = m.map(d, |x| QuadExt::embed(x.clone(), d));
                q.is_invertible() && congruent_image(&mq, q) == kind.matrix(d)
            }
        }
    }
}

/// `Q^T M Q`.
pub fn congruent_image<F: Field>(m: &Matrix<F>, q: &Matrix<F>) -> Matrix<F> {
    q.transpose().mul(m).and_then(|x| x.mul(q)).expect("2x2 shapes")
}

struct Ops<'a, F> {
    sqrt: &'a dyn Fn(&F) -> Option<F>,
    cmp: &'a dyn Fn(&F, &F) -> Ordering,
}

fn two<F: Field>(ctx: &F::Ctx) -> F {
    F::from_i64(2, ctx)
}

fn half<F: Field>(x: &F) -> F {
    x.div(&two(&x.ctx())).expect("characteristic is not 2")
}

fn parts<F: Field>(m: &Matrix<F>) -> (Matrix<F>, F) {
    let b = half(&m[(0, 1)].add(&m[(1, 0)]));
    let s = Matrix::from_rows(vec![vec![m[(0, 0)].clone(), b.clone()], vec![b, m[(1, 1)].clone()]], m.ctx()).expect("2x2");
    let kappa = half(&m[(0, 1)].sub(&m[(1, 0)]));
    (s, kappa)
}

fn form<F: Field>(m: &Matrix<F>, x: &[F], y: &[F]) -> F {
    let my = m.mul_vec(y).expect("2x2");
    x.iter().zip(&my).fold(F::zero(m.ctx()), |acc, (a, b)| acc.add(&a.mul(b)))
}

fn cols<F: Field>(a: Vec<F>, b: Vec<F>, ctx: &F::Ctx) -> Matrix<F> {
    Matrix::from_columns(&[a, b], 2, ctx)
}

fn scale<F: Field>(s: &F, v: &[F]) -> Vec<F> {
    v.iter().map(|x| s.mul(x)).collect()
}

/// Kind from ranks alone; `MixedC` carries a placeholder.
pub fn kind_tag<F: Field>(m: &Matrix<F>) -> KindTag {
    let (s, kappa) = parts(m);
    match (s.rank(), kappa.is_zero()) {
        (0, true) => KindTag::Zero,
        (0, false) => KindTag::Skew,
        (1, true) => KindTag::SymRank1,
        (_, true) => KindTag::SymRank2,
        (1, false) => KindTag::Mixed,
        (_, false) => KindTag::MixedC,
    }
}

/// Two distinct isotropic vectors of a nondegenerate symmetric `S`, or the
/// radicand that is missing.
fn isotropic_pair<F: Field>(s: &Matrix<F>, ops: &Ops<F>) -> Result<(Vec<F>, Vec<F>), F> {
    let ctx = s.ctx();
    let (a, b, c) = (&s[(0, 0)], &s[(0, 1)], &s[(1, 1)]);
    let one = F::one(ctx);
    if a.is_zero() {
        let x = c.neg().div(&two::<F>(ctx).mul(b)).expect("b != 0 when a = 0 and det != 0");
        return Ok((vec![one.clone(), F::zero(ctx)], vec![x, one]));
    }
    let d = b.mul(b).sub(&a.mul(c));
    let r = (ops.sqrt)(&d).ok_or_else(|| d.clone())?;
    let x1 = b.neg().add(&r).div(a).expect("a != 0");
    let x2 = b.neg().sub(&r).div(a).expect("a != 0");
    Ok((vec![x1, one.clone()], vec![x2, one]))
}

/// First index with a nonzero diagonal entry of `S`.
fn anisotropic_axis<F: Field>(s: &Matrix<F>) -> Option<usize> {
    (0..2).find(|&i| !s[(i, i)].is_zero())
}

fn canonicalize<F: Field>(m: &Matrix<F>, ops: &Ops<F>) -> Result<(CanonicalKind<F>, Matrix<F>), F> {
    let ctx = m.ctx().clone();
    let id = Matrix::identity(2, &ctx);
    let (s, kappa) = parts(m);
    let tag = kind_tag(m);
    let e = |i| unit_vec::<F>(2, i, &ctx);
    let one = F::one(&ctx);
    match tag {
        KindTag::Zero => Ok((CanonicalKind::Zero, id)),
        KindTag::Skew => {
            let q = Matrix::diag(&[kappa.inv().expect("kappa != 0"), one], &ctx);
            Ok((CanonicalKind::Skew, q))
        }
        KindTag::SymRank1 => {
            if *m == CanonicalKind::<F>::SymRank1.matrix(&ctx) {
                return Ok((CanonicalKind::SymRank1, id));
            }
            let i = anisotropic_axis(&s).expect("rank-1 symmetric has a nonzero diagonal entry");
            let sigma = s[(i, i)].clone();
            let root = (ops.sqrt)(&sigma).ok_or_else(|| sigma.clone())?;
            let k = s.nullspace().remove(0);
            let q = cols(scale(&root.inv().expect("nonzero"), &e(i)), k, &ctx);
            Ok((CanonicalKind::SymRank1, q))
        }
        KindTag::SymRank2 => {
            if *m == id {
                return Ok((CanonicalKind::SymRank2, id));
            }
            let (u, w0) = isotropic_pair(&s, ops)?;
            // Rescale so that u^T S w = 1, then clear w^T S w.
            let w = scale(&form(&s, &u, &w0).inv().expect("S is nondegenerate"), &w0);
            let t = half(&form(&s, &w, &w));
            let w: Vec<F> = w.iter().zip(&u).map(|(x, y)| x.sub(&t.mul(y))).collect();
            // Hyperbolic pair (u, w) -> orthonormal pair (u + w/2, i(u - w/2)).
            let hw = scale(&half(&one), &w);
            let i = F::from_gaussian(&G::i(), &ctx).expect("i embeds");
            let p: Vec<F> = u.iter().zip(&hw).map(|(a, b)| a.add(b)).collect();
            let q2: Vec<F> = u.iter().zip(&hw).map(|(a, b)| i.mul(&a.sub(b))).collect();
            Ok((CanonicalKind::SymRank2, cols(p, q2, &ctx)))
        }
        KindTag::Mixed => {
            if *m == CanonicalKind::<F>::Mixed.matrix(&ctx) {
                return Ok((CanonicalKind::Mixed, id));
            }
            let i = anisotropic_axis(&s).expect("rank-1 symmetric has a nonzero diagonal entry");
            let v = e(i);
            let sigma = s[(i, i)].clone();
            let root = (ops.sqrt)(&sigma).ok_or_else(|| sigma.clone())?;
            let k = s.nullspace().remove(0);
            let beta = root.inv().expect("nonzero");
            let kappa_kv = form(m, &k, &v);
            let alpha = beta.mul(&kappa_kv).inv().expect("k and v are independent");
            Ok((CanonicalKind::Mixed, cols(scale(&alpha, &k), scale(&beta, &v), &ctx)))
        }
        KindTag::MixedC => {
            if m[(0, 0)].is_zero() && m[(1, 1)].is_zero() && m[(0, 1)].is_one() {
                let c = m[(1, 0)].clone();
                if c.is_zero() || (ops.cmp)(&c, &c.inv().expect("nonzero")) != Ordering::Less {
                    return Ok((CanonicalKind::MixedC(c), id));
                }
            }
            let (u, w) = isotropic_pair(&s, ops)?;
            let sp = form(&s, &u, &w);
            let kp = half(&form(m, &u, &w).sub(&form(m, &w, &u)));
            let plus = sp.add(&kp);
            let minus = sp.sub(&kp);
            // Ordered basis (x, y) gives [[0, a], [b, 0]]; scale y by 1/a to reach c = b/a.
            let build = |x: &[F], y: &[F], a: &F, b: &F| {
                let c = b.div(a).expect("nonzero");
                (c, cols(x.to_vec(), scale(&a.inv().expect("nonzero"), y), &ctx))
            };
            let (c, q) = if plus.is_zero() {
                build(&w, &u, &minus, &plus)
            } else {
                let (c, q) = build(&u, &w, &plus, &minus);
                if !c.is_zero() && (ops.cmp)(&c, &c.inv().expect("nonzero")) == Ordering::Less {
                    build(&w, &u, &minus, &plus)
                } else {
                    (c, q)
                }
            };
            Ok((CanonicalKind::MixedC(c), q))
        }
    }
}

fn quad_lex(a: &QuadExt, b: &QuadExt) -> Ordering {
    a.a.lex_cmp(&b.a).then_with(|| a.b.lex_cmp(&b.b))
}

/// Canonical kind of `M` and a matrix `Q` with `Q^T M Q` equal to the
/// representative. Total: the zero form maps to `Zero` with `Q = I`.
pub fn congruence_canonical(m: &Matrix<G>) -> Congruence {
    assert!(m.rows() == 2 && m.cols() == 2, "2x2 forms only");
    let sqrt = |x: &G| x.sqrt();
    let cmp = |a: &G, b: &G| a.lex_cmp(b);
    match canonicalize(m, &Ops { sqrt: &sqrt, cmp: &cmp }) {
        Ok((kind, q)) => Congruence::Base { kind, q },
        Err(d) => {
            // Congruent forms can ask for radicands that differ by a square.
            let d = square_class(&d);
            let sqrt_q = |x: &QuadExt| -> Option<QuadExt> {
                let base = x.as_base()?;
                if let Some(r) = base.sqrt() {
                    return Some(QuadExt::embed(r, &d));
                }
                let t = (base / &d).sqrt()?;
                Some(&QuadExt::embed(t, &d) * &QuadExt::generator(&d).expect("d is not a square"))
            };
            let mq = m.map(&d, |x| QuadExt::embed(x.clone(), &d));
            let (kind, q) = canonicalize(&mq, &Ops { sqrt: &sqrt_q, cmp: &quad_lex })
                .unwrap_or_else(|r| panic!("a second radical sqrt({r}) was requested"));
            Congruence::Extended { d, kind, q }
        }
    }
}

/// `det K / det S` for forms of type (v); invariant under congruence.
pub fn mixed_invariant(m: &Matrix<G>) -> Option<G> {
    if kind_tag(m) != KindTag::MixedC {
        return None;
    }
    let (s, kappa) = parts(m);
    let det_s = &(&s[(0, 0)] * &s[(1, 1)]) - &(&s[(0, 1)] * &s[(1, 0)]);
    Some(&(&kappa * &kappa) / &det_s)
}

/// Congruence over the algebraic closure: same kind, and for (v) the same
/// `{c, 1/c}`.
pub fn congruent(m1: &Matrix<G>, m2: &Matrix<G>) -> bool {
    kind_tag(m1) == kind_tag(m2) && mixed_invariant(m1) == mixed_invariant(m2)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BilinearError {
    #[error("algebra is outside the setting dim A^2 = n - 2, dim Leib = 1, nilpotent: {0}")]
    HypothesisViolation(String),
}

/// Where the form was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis<F: Field> {
    /// Coordinates spanning the complement `V` of `A^2`.
    pub complement: [usize; 2],
    /// Spanning vector of `Leib(A)`, the last adapted basis vector.
    pub leib: Vec<F>,
    /// Columns: `v1, v2`, the rest of an `A^2` basis, then `leib`.
    pub basis: Matrix<F>,
}

/// The form `f(u, v)` = coefficient of the `Leib(A)` generator in `[u, v]`,
/// on the coordinate complement of `A^2`.
pub fn extract_v_form<F: Field>(a: &LeibnizAlgebra<F>) -> Result<(Matrix<F>, AdaptedBasis<F>), BilinearError> {
    let n = a.dim();
    let ctx = a.ctx().clone();
    let a2 = a.square();
    let leib = a.leib_ideal();
    let flags = a.classify_flags();
    if a2.dim() + 2 != n || leib.dim() != 1 || !flags.is_nilpotent {
        return Err(BilinearError::HypothesisViolation(format!(
            "dim A^2 = {}, dim Leib = {}, nilpotent = {}",
            a2.dim(),
            leib.dim(),
            flags.is_nilpotent
        )));
    }
    let l = leib.basis()[0].clone();
    let free: Vec<usize> = (0..n).filter(|c| !a2.pivots().contains(c)).collect();
    let complement = [free[0], free[1]];
    let mut columns = vec![unit_vec(n, free[0], &ctx), unit_vec(n, free[1], &ctx)];
    // Extend {l} to a basis of A^2, keeping l last.
    let mut span = Subspace::span(n, vec![l.clone()], &ctx);
    for r in a2.basis() {
        if !span.contains_vec(r) {
            columns.push(r.clone());
            span = span.sum(&Subspace::span(n, vec![r.clone()], &ctx)).expect("same ambient");
        }
    }
    columns.push(l.clone());
    let basis = Matrix::from_columns(&columns, n, &ctx);
    let tinv = basis.invert().expect("adapted vectors form a basis");
    let mut rows = vec![vec![F::zero(&ctx); 2]; 2];
    for (x, &p) in complement.iter().enumerate() {
        for (y, &q) in complement.iter().enumerate() {
            let v = a.basis_bracket(p, q);
            if !is_zero_vec(&v) {
                rows[x][y] = tinv.mul_vec(&v).expect("square")[n - 1].clone();
            }
        }
    }
    let m = Matrix::from_rows(rows, &ctx).expect("2x2");
    Ok((m, AdaptedBasis { complement, leib: l, basis }))
}
