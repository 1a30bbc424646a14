//! Bases adapted to the lower central series, and bases of bracket words.

use crate::algebra::LeibnizAlgebra;
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

/// A basis of `A` whose columns are sorted by level, where `A^l` is spanned by
/// the columns of level `>= l`.
#[derive(Clone, Debug)]
pub struct Frame<F: Field> {
    pub t: Matrix<F>,
    pub levels: Vec<usize>,
    /// Number of level-one columns, `n - dim A^2`.
    pub top: usize,
}

/// Word `k` of a word basis: a generator or the bracket of two earlier words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Word {
    Gen(usize),
    Br(usize, usize),
}

/// A basis of `B` made of bracket words in generators `e_g`, `g` running over
/// the coordinates that are not pivots of `B^2`. Degree-`d` words span `B^d`
/// modulo `B^{d+1}`.
#[derive(Clone, Debug)]
pub struct WordBasis<F: Field> {
    pub t: Matrix<F>,
    pub words: Vec<Word>,
    pub degrees: Vec<usize>,
    pub generators: usize,
}

impl<F: Field> WordBasis<F> {
    /// Indices of the generators occurring in word `k`, as a bit mask.
    pub fn generator_mask(&self, k: usize) -> u64 {
        match self.words[k] {
            Word::Gen(_) => 1 << k,
            Word::Br(l, r) => self.generator_mask(l) | self.generator_mask(r),
        }
    }
}

fn lower_central_terms<F: Field>(a: &LeibnizAlgebra<F>) -> Option<Vec<Subspace<F>>> {
    let lcs = a.lower_central();
    lcs.subspaces.last().is_some_and(Subspace::is_zero).then_some(lcs.subspaces)
}

/// `None` when `a` is not nilpotent.
pub fn adapted_frame<F: Field>(a: &LeibnizAlgebra<F>) -> Option<Frame<F>> {
    let terms = lower_central_terms(a)?;
    let n = a.dim();
    let ctx = a.ctx();
    let mut chosen: Vec<(usize, Vec<F>)> = Vec::new();
    let mut span = Subspace::zero(n, ctx);
    for level in (1..terms.len()).rev() {
        for v in terms[level - 1].basis() {
            if !span.contains_vec(v) {
                chosen.push((level, v.clone()));
                span = Subspace::span(n, chosen.iter().map(|(_, v)| v.clone()).collect(), ctx);
            }
        }
    }
    chosen.sort_by_key(|(l, _)| *l);
    let levels: Vec<usize> = chosen.iter().map(|(l, _)| *l).collect();
    let cols: Vec<Vec<F>> = chosen.into_iter().map(|(_, v)| v).collect();
    let top = levels.iter().filter(|&&l| l == 1).count();
    Some(Frame { t: Matrix::from_columns(&cols, n, ctx), levels, top })
}

/// `None` when `b` is not nilpotent.
pub fn word_basis<F: Field>(b: &LeibnizAlgebra<F>) -> Option<WordBasis<F>> {
    let terms = lower_central_terms(b)?;
    let n = b.dim();
    let ctx = b.ctx();
    let term = |d: usize| terms.get(d - 1).cloned().unwrap_or_else(|| Subspace::zero(n, ctx));
    let square = term(2);
    let mut words = Vec::new();
    let mut degrees = Vec::new();
    let mut vecs: Vec<Vec<F>> = Vec::new();
    for g in (0..n).filter(|g| !square.pivots().contains(g)) {
        words.push(Word::Gen(g));
        degrees.push(1);
        vecs.push(crate::linalg::unit_vec(n, g, ctx));
    }
    let generators = words.len();
    let mut d = 2;
    while vecs.len() < n {
        if d > terms.len() {
            return None;
        }
        let deeper = term(d + 1);
        let mut span = deeper.sum(&Subspace::span(n, vecs.clone(), ctx)).expect("same ambient");
        let before = vecs.len();
        for l in 0..before {
            for r in 0..before {
                if degrees[l] + degrees[r] != d {
                    continue;
                }
                let v = b.bracket(&vecs[l], &vecs[r]).expect("same dimension");
                if !span.contains_vec(&v) {
                    span = span.sum(&Subspace::span(n, vec![v.clone()], ctx)).expect("same ambient");
                    words.push(Word::Br(l, r));
                    degrees.push(d);
                    vecs.push(v);
                }
            }
        }
        d += 1;
    }
    Some(WordBasis { t: Matrix::from_columns(&vecs, n, ctx), words, degrees, generators })
}
