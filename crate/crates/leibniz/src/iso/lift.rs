//! Lifting `GF(p)` witnesses to exact witnesses over `Q(i)`.

use super::frame::{adapted_frame, word_basis, Word};
use super::verify_witness;
use crate::algebra::LeibnizAlgebra;
use crate::field::{sqrt_minus_one, Field, Fp, GaussianRational as G};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftConfig {
    /// Largest denominator tried for an entry.
    pub denominator_bound: u64,
    /// Alternatives kept per nonzero entry.
    pub per_entry: usize,
    /// Combinations of alternatives tried per witness and per method.
    pub max_combinations: usize,
    /// Witnesses tried before a search gives up on lifting.
    pub max_witnesses: usize,
}

impl Default for LiftConfig {
    fn default() -> Self {
        LiftConfig { denominator_bound: 4, per_entry: 3, max_combinations: 512, max_witnesses: 24 }
    }
}

/// Small Gaussian rationals `(a + b i) / d` reducing to `v`, cheapest first.
/// Zero lifts only to zero.
pub fn lift_entry(v: &Fp, bound: u64, keep: usize) -> Vec<G> {
    if v.value == 0 {
        return vec![G::zero()];
    }
    let p = v.p;
    let r = sqrt_minus_one(p).expect("search primes are validated");
    let h = (p as i64 - 1) / 2;
    let mut cands: Vec<(i64, G)> = Vec::new();
    for d in 1..=bound.max(1) {
        if d % p == 0 {
            continue;
        }
        let w = v.value * (d % p) % p;
        for b in -h..=h {
            let a = Fp::new(w as i64 - b * r as i64, p).centered();
            let cost = a.abs() + b.abs() + d as i64 - 1;
            let g = G::from_ints(a, b).mul(&G::from_ratio(1, d as i64));
            if !cands.iter().any(|(_, x)| *x == g) {
                cands.push((cost, g));
            }
        }
    }
    cands.sort_by(|(c1, g1), (c2, g2)| c1.cmp(c2).then_with(|| g1.lex_cmp(g2).reverse()));
    let best = cands[0].0;
    cands.into_iter().filter(|(c, _)| *c <= best + 1).take(keep.max(1)).map(|(_, g)| g).collect()
}

/// Choices of one alternative per slot, ordered by the sum of their ranks.
fn combinations(sizes: &[usize], limit: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let max_sum: usize = sizes.iter().map(|s| s - 1).sum();
    for total in 0..=max_sum {
        let mut cur = vec![0; sizes.len()];
        fill(sizes, 0, total, &mut cur, &mut out, limit);
        if out.len() >= limit {
            break;
        }
    }
    out.truncate(limit);
    out
}

fn fill(sizes: &[usize], pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
    if out.len() >= limit {
        return;
    }
    if pos == sizes.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for k in 0..sizes[pos].min(left + 1) {
        cur[pos] = k;
        fill(sizes, pos + 1, left - k, cur, out, limit);
    }
}

fn reduce_matrix(m: &Matrix<G>, p: u64) -> Option<Matrix<Fp>> {
    m.try_map(&p, |g| Fp::from_gaussian(g, &p)).ok()
}

/// An exact witness whose reduction is `w`, found by lifting entries to
/// small Gaussian rationals. Tries the entries of `w` directly, then the
/// generator images in adapted bases, where the rest of the matrix is rebuilt
/// exactly from brackets.
pub fn lift_witness(w: &Matrix<Fp>, a: &LeibnizAlgebra<G>, b: &LeibnizAlgebra<G>, cfg: &LiftConfig) -> Option<Matrix<G>> {
    let n = w.rows();
    let lifts: Vec<Vec<G>> = w.entries().iter().map(|v| lift_entry(v, cfg.denominator_bound, cfg.per_entry)).collect();
    let sizes: Vec<usize> = lifts.iter().map(Vec::len).collect();
    for choice in combinations(&sizes, cfg.max_combinations) {
        let rows = (0..n).map(|i| (0..n).map(|j| lifts[i * n + j][choice[i * n + j]].clone()).collect()).collect();
        let p = Matrix::from_rows(rows, &()).ok()?;
        if matches!(verify_witness(a, b, &p), Ok(c) if c.is_ok()) {
            return Some(p);
        }
    }
    lift_through_generators(w, a, b, cfg)
}

fn lift_through_generators(
    w: &Matrix<Fp>,
    a: &LeibnizAlgebra<G>,
    b: &LeibnizAlgebra<G>,
    cfg: &LiftConfig,
) -> Option<Matrix<G>> {
    let p = *w.ctx();
    let n = w.rows();
    let frame = adapted_frame(a)?;
    let wb = word_basis(b)?;
    let t_a_p = reduce_matrix(&frame.t, p)?;
    let t_b_p = reduce_matrix(&wb.t, p)?;
    let phi_p = t_a_p.invert().ok()?.mul(w).ok()?.mul(&t_b_p).ok()?;
    let m = wb.generators;
    let a_adapted = a.base_change(&frame.t).ok()?;
    let t_b_inv = wb.t.invert().ok()?;
    let lifts: Vec<Vec<G>> = (0..m)
        .flat_map(|g| (0..n).map(move |i| (i, g)))
        .map(|(i, g)| lift_entry(&phi_p[(i, g)], cfg.denominator_bound, cfg.per_entry))
        .collect();
    let sizes: Vec<usize> = lifts.iter().map(Vec::len).collect();
    for choice in combinations(&sizes, cfg.max_combinations) {
        let mut images: Vec<Vec<G>> = (0..m).map(|g| (0..n).map(|i| lifts[g * n + i][choice[g * n + i]].clone()).collect()).collect();
        for word in &wb.words[m..] {
            let Word::Br(l, r) = *word else { unreachable!("generators come first") };
            let v = a_adapted.bracket(&images[l], &images[r]).ok()?;
            images.push(v);
        }
        let phi = Matrix::from_columns(&images, n, &());
        let candidate = frame.t.mul(&phi).ok()?.mul(&t_b_inv).ok()?;
        if matches!(verify_witness(a, b, &candidate), Ok(c) if c.is_ok()) {
            return Some(candidate);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_lift_to_small_values() {
        let p = 13;
        assert_eq!(lift_entry(&Fp::new(1, p), 4, 3)[0], G::one());
        assert_eq!(lift_entry(&Fp::new(-1, p), 4, 3)[0], G::from_i64(-1));
        assert_eq!(lift_entry(&Fp::new(5, p), 4, 3)[0], G::i());
        let half = lift_entry(&Fp::new(7, p), 4, 3);
        assert!(half.contains(&G::from_ratio(1, 2)));
        assert_eq!(lift_entry(&Fp::new(0, p), 4, 3), vec![G::zero()]);
    }

    #[test]
    fn combinations_are_rank_ordered() {
        let c = combinations(&[2, 1, 3], 100);
        assert_eq!(c[0], vec![0, 0, 0]);
        assert_eq!(c.len(), 6);
        assert_eq!(c.last().unwrap(), &vec![1, 0, 2]);
    }
}
