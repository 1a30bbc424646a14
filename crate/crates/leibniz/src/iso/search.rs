//! Witness search over `GF(p)`.
//!
//! The target `B` is rewritten in a basis of bracket words in its generators,
//! the source `A` in a basis adapted to `A ⊇ A^2 ⊇ ...`. A homomorphism is
//! then fixed by the images `x_g` of the generators: every other column is a
//! bracket of images. The unknowns are solved level by level:
//!
//! * level one, generator by generator: equations whose words only involve
//!   assigned generators are checked modulo `A^{D+1}` (`D` the total degree of
//!   the pair); the rows that are affine in the new image are solved and the
//!   solution space is enumerated,
//! * level `s >= 2`, all generators at once: modulo `A^{D+s}` the equations are
//!   affine in the level-`s` parts because `[A^i, A^j] ⊆ A^{i+j}`.
//!
//! Without adaptation the images are enumerated in full, one generator at a
//! time, against the exact equations.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use super::frame::{adapted_frame, word_basis, Word};
use super::IsoError;
use crate::algebra::LeibnizAlgebra;
use crate::field::{sqrt_minus_one, Field, Fp, GaussianRational};
use crate::invariants::signature;
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// A prime `p = 1 mod 4`, below `2^16`.
    pub prime: u64,
    /// Largest denominator tried when lifting entries to `Q(i)`.
    pub lift_bound: u64,
    pub candidate_cap: u64,
    /// Solve level by level along the lower central series.
    pub adapt: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { prime: 13, lift_bound: 4, candidate_cap: 10_000_000, adapt: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<R> {
    Found(R),
    /// Every candidate was tried.
    Exhausted,
    CapReached,
    /// Signatures differ; the fields that disagree.
    NonIsomorphic(Vec<&'static str>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport<R> {
    pub prime: u64,
    pub outcome: SearchOutcome<R>,
    pub candidates: u64,
    /// The first witness met, whether or not it was accepted.
    pub first_witness: Option<Matrix<Fp>>,
}

/// First witness modulo `cfg.prime` with `B = base_change(A, P)`.
pub fn adapted_search(
    a: &LeibnizAlgebra<GaussianRational>,
    b: &LeibnizAlgebra<GaussianRational>,
    cfg: &SearchConfig,
) -> Result<SearchReport<Matrix<Fp>>, IsoError> {
    search_with(a, b, cfg, |w| Some(w.clone()))
}

/// Like [`adapted_search`], but keeps going until `accept` returns a value.
pub fn search_with<R: Send>(
    a: &LeibnizAlgebra<GaussianRational>,
    b: &LeibnizAlgebra<GaussianRational>,
    cfg: &SearchConfig,
    accept: impl Fn(&Matrix<Fp>) -> Option<R> + Sync,
) -> Result<SearchReport<R>, IsoError> {
    let diff = signature(a).differences(&signature(b));
    if !diff.is_empty() {
        return Ok(SearchReport {
            prime: cfg.prime,
            outcome: SearchOutcome::NonIsomorphic(diff),
            candidates: 0,
            first_witness: None,
        });
    }
    let p = cfg.prime;
    sqrt_minus_one(p).map_err(|e| IsoError::BadPrime(p, e.to_string()))?;
    let reduce = |x: &LeibnizAlgebra<GaussianRational>| {
        x.try_map(&p, |g| Fp::from_gaussian(g, &p)).map_err(|e| IsoError::BadPrime(p, e.to_string()))
    };
    let (ap, bp) = (reduce(a)?, reduce(b)?);
    if signature(&ap) != signature(a) || signature(&bp) != signature(b) {
        return Err(IsoError::BadPrime(p, "reduction changes the invariant signature".into()));
    }
    search_mod_p_with(&ap, &bp, cfg, accept)
}

/// Search between algebras that are already defined over `GF(p)`.
pub fn search_mod_p(
    a: &LeibnizAlgebra<Fp>,
    b: &LeibnizAlgebra<Fp>,
    cfg: &SearchConfig,
) -> Result<SearchReport<Matrix<Fp>>, IsoError> {
    let diff = signature(a).differences(&signature(b));
    if !diff.is_empty() {
        return Ok(SearchReport {
            prime: cfg.prime,
            outcome: SearchOutcome::NonIsomorphic(diff),
            candidates: 0,
            first_witness: None,
        });
    }
    search_mod_p_with(a, b, cfg, |w| Some(w.clone()))
}

fn search_mod_p_with<R: Send>(
    a: &LeibnizAlgebra<Fp>,
    b: &LeibnizAlgebra<Fp>,
    cfg: &SearchConfig,
    accept: impl Fn(&Matrix<Fp>) -> Option<R> + Sync,
) -> Result<SearchReport<R>, IsoError> {
    let p = cfg.prime;
    if a.ctx() != &p || b.ctx() != &p {
        return Err(IsoError::FieldMismatch(format!("algebras over GF({}) and GF({}), search over GF({p})", a.ctx(), b.ctx())));
    }
    if p >= 1 << 16 {
        return Err(IsoError::BadPrime(p, "search primes must be below 65536".into()));
    }
    if cfg.candidate_cap == 0 {
        return Err(IsoError::DimensionMismatch("candidate cap must be positive".into()));
    }
    if a.dim() != b.dim() {
        return Err(IsoError::DimensionMismatch(format!("{} vs {}", a.dim(), b.dim())));
    }
    let problem = Problem::new(a, b, cfg)?;
    let run = Run {
        problem: &problem,
        cap: cfg.candidate_cap,
        counter: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        first: Mutex::new(None),
        accept: &accept,
    };
    let found = run.start();
    let candidates = run.counter.load(Ordering::Relaxed);
    let outcome = match found {
        Some(r) => SearchOutcome::Found(r),
        None if run.stop.load(Ordering::Relaxed) => SearchOutcome::CapReached,
        None => SearchOutcome::Exhausted,
    };
    let first_witness = run.first.into_inner().expect("lock poisoned");
    Ok(SearchReport { prime: p, outcome, candidates, first_witness })
}

struct Equation {
    a: usize,
    b: usize,
    degree: usize,
    /// Nonzero coordinates of `[w_a, w_b]` in the word basis.
    terms: Vec<(usize, u64)>,
    /// Generators the level-one check depends on.
    deps: u64,
}

struct Step {
    generator: usize,
    equations: Vec<usize>,
}

struct Problem {
    p: u64,
    n: usize,
    m: usize,
    adapt: bool,
    /// Structure constants of `A` in the adapted basis, `c[(i n + j) n + k]`.
    c: Vec<u64>,
    levels: Vec<usize>,
    depth: usize,
    words: Vec<Word>,
    equations: Vec<Equation>,
    steps: Vec<Step>,
    values: Vec<u64>,
    t_a: Matrix<Fp>,
    t_b_inv: Matrix<Fp>,
}

/// Residues ordered by the size of the Gaussian integer they come from:
/// `0, 1, -1, i, -i, 2, -2, 1+i, ...`.
fn value_order(p: u64, r: u64) -> Vec<u64> {
    let mut seen = vec![false; p as usize];
    let mut out = Vec::with_capacity(p as usize);
    let mut s: i64 = 0;
    while out.len() < p as usize {
        let mut ring: Vec<(i64, i64)> = Vec::new();
        for b in -s..=s {
            let rest = s - b.abs();
            ring.push((rest, b));
            if rest != 0 {
                ring.push((-rest, b));
            }
        }
        ring.sort_by_key(|&(a, b)| (b.abs(), b < 0, a.abs(), a < 0));
        for (a, b) in ring {
            let v = (a.rem_euclid(p as i64) as u64 + b.rem_euclid(p as i64) as u64 * r) % p;
            if !seen[v as usize] {
                seen[v as usize] = true;
                out.push(v);
            }
        }
        s += 1;
    }
    out
}

fn to_u64(m: &LeibnizAlgebra<Fp>) -> Vec<u64> {
    let n = m.dim();
    let mut c = vec![0; n * n * n];
    for (i, j, v) in m.products() {
        for (k, x) in v.iter().enumerate() {
            c[(i * n + j) * n + k] = x.value;
        }
    }
    c
}

impl Problem {
    fn new(a: &LeibnizAlgebra<Fp>, b: &LeibnizAlgebra<Fp>, cfg: &SearchConfig) -> Result<Self, IsoError> {
        let p = cfg.prime;
        let n = a.dim();
        let frame = adapted_frame(a).ok_or_else(|| IsoError::Unsupported("source".into()))?;
        let wb = word_basis(b).ok_or_else(|| IsoError::Unsupported("target".into()))?;
        let a_adapted = a.base_change(&frame.t).map_err(|e| IsoError::BadPrime(p, e.to_string()))?;
        let b_words = b.base_change(&wb.t).map_err(|e| IsoError::BadPrime(p, e.to_string()))?;
        let t_b_inv = wb.t.invert().map_err(|_| IsoError::Singular)?;
        let m = wb.generators;
        if frame.top != m || m > 63 {
            return Err(IsoError::BadPrime(p, "generator counts differ".into()));
        }
        let masks: Vec<u64> = (0..n).map(|k| wb.generator_mask(k)).collect();
        let cb = to_u64(&b_words);
        let mut equations = Vec::new();
        for ia in 0..n {
            for ib in 0..n {
                let degree = wb.degrees[ia] + wb.degrees[ib];
                let terms: Vec<(usize, u64)> =
                    (0..n).map(|k| (k, cb[(ia * n + ib) * n + k])).filter(|&(_, v)| v != 0).collect();
                let mut deps = masks[ia] | masks[ib];
                for &(k, _) in &terms {
                    if !cfg.adapt || wb.degrees[k] == degree {
                        deps |= masks[k];
                    }
                }
                // A pair that defines a word holds by construction.
                if wb.words.contains(&Word::Br(ia, ib)) {
                    continue;
                }
                equations.push(Equation { a: ia, b: ib, degree, terms, deps });
            }
        }
        // Greedy generator order: each step completes as many equations as possible.
        let mut assigned = 0u64;
        let mut steps = Vec::new();
        let mut done = vec![false; equations.len()];
        for _ in 0..m {
            let mut best: Option<(usize, usize)> = None;
            for g in (0..m).filter(|g| assigned & (1 << g) == 0) {
                let mask = assigned | (1 << g);
                let count = equations.iter().enumerate().filter(|(e, q)| !done[*e] && q.deps & !mask == 0).count();
                if best.is_none_or(|(_, c)| count > c) {
                    best = Some((g, count));
                }
            }
            let (g, _) = best.expect("an unassigned generator");
            assigned |= 1 << g;
            let eqs: Vec<usize> =
                (0..equations.len()).filter(|&e| !done[e] && equations[e].deps & !assigned == 0).collect();
            for &e in &eqs {
                done[e] = true;
            }
            steps.push(Step { generator: g, equations: eqs });
        }
        let r = sqrt_minus_one(p).map_err(|e| IsoError::BadPrime(p, e.to_string()))?;
        let depth = frame.levels.iter().copied().max().unwrap_or(0);
        Ok(Problem {
            p,
            n,
            m,
            adapt: cfg.adapt,
            c: to_u64(&a_adapted),
            levels: frame.levels,
            depth,
            words: wb.words,
            equations,
            steps,
            values: value_order(p, r),
            t_a: frame.t,
            t_b_inv,
        })
    }

    fn bracket(&self, x: &[u64], y: &[u64], out: &mut [u64]) {
        let n = self.n;
        out.iter_mut().for_each(|o| *o = 0);
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0 {
                    continue;
                }
                let s = x[i] * y[j] % self.p;
                let row = &self.c[(i * n + j) * n..(i * n + j + 1) * n];
                for (o, &c) in out.iter_mut().zip(row) {
                    if c != 0 {
                        *o = (*o + s * c) % self.p;
                    }
                }
            }
        }
    }

    /// Images of all words, given the generator images.
    fn images(&self, x: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut phi: Vec<Vec<u64>> = Vec::with_capacity(self.n);
        for w in &self.words {
            let v = match *w {
                Word::Gen(_) => x[phi.len()].clone(),
                Word::Br(l, r) => {
                    let mut out = vec![0; self.n];
                    self.bracket(&phi[l], &phi[r], &mut out);
                    out
                }
            };
            phi.push(v);
        }
        phi
    }

    /// `Phi [w_a, w_b] - [Phi w_a, Phi w_b]` for one equation.
    fn residual(&self, e: &Equation, phi: &[Vec<u64>]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0; self.n];
        self.bracket(&phi[e.a], &phi[e.b], &mut out);
        for o in out.iter_mut() {
            *o = (p - *o) % p;
        }
        for &(k, c) in &e.terms {
            for (o, v) in out.iter_mut().zip(&phi[k]) {
                *o = (*o + c * v) % p;
            }
        }
        out
    }

    /// Coordinates checked for an equation: the leading level at stage one,
    /// level `D + s - 1` at stage `s`, everything without adaptation.
    fn row_filter(&self, e: &Equation, stage: usize) -> impl Iterator<Item = usize> + '_ {
        let adapt = self.adapt;
        let target = e.degree + stage - 1;
        (0..self.n).filter(move |&r| !adapt || self.levels[r] == target)
    }

    fn rows(&self, eqs: &[usize], stage: usize, x: &[Vec<u64>]) -> Vec<u64> {
        let phi = self.images(x);
        let mut out = Vec::new();
        for &e in eqs {
            let eq = &self.equations[e];
            let res = self.residual(eq, &phi);
            out.extend(self.row_filter(eq, stage).map(|r| res[r]));
        }
        out
    }

    fn all_equations_hold(&self, x: &[Vec<u64>]) -> bool {
        let phi = self.images(x);
        self.equations.iter().all(|e| self.residual(e, &phi).iter().all(|&v| v == 0))
    }

    /// Rank of the level-one parts of the given images.
    fn top_rank(&self, x: &[&[u64]]) -> usize {
        let rows: Vec<Vec<u64>> = x.iter().map(|v| v[..self.m].to_vec()).collect();
        rank_mod_p(rows, self.p)
    }

    fn to_matrix(&self, cols: &[Vec<u64>]) -> Matrix<Fp> {
        let p = self.p;
        let cols: Vec<Vec<Fp>> = cols.iter().map(|c| c.iter().map(|&v| Fp { value: v, p }).collect()).collect();
        Matrix::from_columns(&cols, self.n, &p)
    }
}

/// Solution set `particular + span(kernel)` of a linear system mod `p`.
struct Affine {
    particular: Vec<u64>,
    kernel: Vec<Vec<u64>>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::field::Fp { value: a, p }.inv().expect("nonzero").value
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&v| v * inv % p).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Solve `sum_j m[i][j] t_j = rhs[i]`; `None` when inconsistent. Kernel
/// vectors are indexed by free variables, so enumerating their coefficients
/// enumerates the values of the free coordinates.
fn solve_mod_p(m: &[Vec<u64>], rhs: &[u64], vars: usize, p: u64) -> Option<Affine> {
    let mut rows: Vec<Vec<u64>> = m.iter().zip(rhs).map(|(r, &b)| r.iter().copied().chain([b]).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..vars {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&v| v * inv % p).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rows[rank] = pivot_row;
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[vars] != 0) {
        return None;
    }
    let mut particular = vec![0; vars];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = rows[i][vars];
    }
    let kernel = (0..vars)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; vars];
            v[f] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = (p - rows[i][f]) % p;
            }
            v
        })
        .collect();
    Some(Affine { particular, kernel })
}

/// Fit `f(t) = f(0) + L t` from unit-vector probes and solve `f = 0` on the
/// rows where the fit also matches the extra probes. Rows that are not affine
/// are left to the exact check of each candidate.
fn affine_zero_set(f: &dyn Fn(&[u64]) -> Vec<u64>, vars: usize, p: u64, probe: bool) -> Option<Affine> {
    let zero = vec![0; vars];
    let r0 = f(&zero);
    let nrows = r0.len();
    let mut lin = vec![vec![0; vars]; nrows];
    for j in 0..vars {
        let mut t = zero.clone();
        t[j] = 1;
        let rj = f(&t);
        for i in 0..nrows {
            lin[i][j] = (rj[i] + p - r0[i]) % p;
        }
    }
    let mut affine = vec![true; nrows];
    if probe && vars > 0 {
        let mut probes = vec![];
        let mut t = zero.clone();
        t[0] = 2;
        probes.push(t);
        if vars > 1 {
            let mut t = zero.clone();
            t[0] = 1;
            t[1] = 1;
            probes.push(t);
        }
        probes.push((0..vars).map(|j| (j as u64 + 1) % p).collect());
        probes.push((0..vars).map(|j| [3, 1, 4, 1, 5, 9, 2, 6][j % 8] % p).collect());
        for t in probes {
            let rt = f(&t);
            for i in 0..nrows {
                let pred = lin[i].iter().zip(&t).fold(r0[i], |acc, (c, v)| (acc + c * v) % p);
                if pred != rt[i] {
                    affine[i] = false;
                }
            }
        }
    }
    let (m, rhs): (Vec<Vec<u64>>, Vec<u64>) =
        (0..nrows).filter(|&i| affine[i]).map(|i| (lin[i].clone(), (p - r0[i]) % p)).unzip();
    solve_mod_p(&m, &rhs, vars, p)
}

struct Run<'a, A> {
    problem: &'a Problem,
    cap: u64,
    counter: AtomicU64,
    stop: AtomicBool,
    first: Mutex<Option<Matrix<Fp>>>,
    accept: &'a A,
}

impl<R: Send, A: Fn(&Matrix<Fp>) -> Option<R> + Sync> Run<'_, A> {
    /// Count one candidate; false once the cap is exceeded.
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        if self.counter.fetch_add(1, Ordering::Relaxed) >= self.cap {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    /// Unknown coordinates of a generator image at stage one.
    fn stage_one_coords(&self) -> Vec<usize> {
        let pr = self.problem;
        if pr.adapt { (0..pr.m).collect() } else { (0..pr.n).collect() }
    }

    /// Candidate images for step `k`, in enumeration order.
    fn step_candidates(&self, k: usize, x: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let pr = self.problem;
        let step = &pr.steps[k];
        let coords = self.stage_one_coords();
        let place = |t: &[u64]| {
            let mut v = vec![0; pr.n];
            for (&c, &val) in coords.iter().zip(t) {
                v[c] = val;
            }
            v
        };
        let f = |t: &[u64]| {
            let mut xs = x.to_vec();
            xs[step.generator] = place(t);
            pr.rows(&step.equations, 1, &xs)
        };
        let Some(space) = affine_zero_set(&f, coords.len(), pr.p, true) else { return Vec::new() };
        let assigned: Vec<&[u64]> = pr.steps[..k].iter().map(|s| x[s.generator].as_slice()).collect();
        let mut out = Vec::new();
        for coeffs in Odometer::new(&pr.values, space.kernel.len()) {
            if !self.tick() {
                break;
            }
            let t = combine(&space, &coeffs, pr.p);
            let v = place(&t);
            let mut imgs = assigned.clone();
            imgs.push(&v);
            if pr.top_rank(&imgs) < imgs.len() {
                continue;
            }
            if f(&t).iter().any(|&r| r != 0) {
                continue;
            }
            out.push(v);
        }
        out
    }

    fn start(&self) -> Option<R> {
        let pr = self.problem;
        let x = vec![vec![0; pr.n]; pr.m];
        let first = self.step_candidates(0, &x);
        let g0 = pr.steps[0].generator;
        first.into_par_iter().find_map_first(|v| {
            let mut x = x.clone();
            x[g0] = v;
            self.stage_one(1, x)
        })
    }

    fn stage_one(&self, k: usize, x: Vec<Vec<u64>>) -> Option<R> {
        let pr = self.problem;
        if k == pr.steps.len() {
            return if pr.adapt { self.stage(2, x) } else { self.finish(x) };
        }
        let g = pr.steps[k].generator;
        for v in self.step_candidates(k, &x) {
            if self.stop.load(Ordering::Relaxed) {
                return None;
            }
            let mut next = x.clone();
            next[g] = v;
            if let Some(r) = self.stage_one(k + 1, next) {
                return Some(r);
            }
        }
        None
    }

    /// Level-`s` parts of every generator image.
    fn stage(&self, s: usize, x: Vec<Vec<u64>>) -> Option<R> {
        let pr = self.problem;
        // Level-s parts only reach rows of level >= s + 1.
        if s >= pr.depth {
            return self.finish(x);
        }
        let coords: Vec<usize> = (0..pr.n).filter(|&r| pr.levels[r] == s).collect();
        let vars: Vec<(usize, usize)> = (0..pr.m).flat_map(|g| coords.iter().map(move |&r| (g, r))).collect();
        let all: Vec<usize> = (0..pr.equations.len()).collect();
        let place = |t: &[u64]| {
            let mut xs = x.clone();
            for (&(g, r), &v) in vars.iter().zip(t) {
                xs[g][r] = v;
            }
            xs
        };
        let f = |t: &[u64]| pr.rows(&all, s, &place(t));
        let space = affine_zero_set(&f, vars.len(), pr.p, false)?;
        // Later stages with rows exist only while s + 1 < depth.
        let free = if s + 1 < pr.depth { space.kernel.len() } else { 0 };
        for coeffs in Odometer::new(&pr.values, free) {
            if !self.tick() {
                return None;
            }
            let mut full = coeffs.clone();
            full.resize(space.kernel.len(), 0);
            let t = combine(&space, &full, pr.p);
            if let Some(r) = self.stage(s + 1, place(&t)) {
                return Some(r);
            }
        }
        None
    }

    fn finish(&self, x: Vec<Vec<u64>>) -> Option<R> {
        let pr = self.problem;
        if !pr.all_equations_hold(&x) {
            return None;
        }
        let phi = pr.to_matrix(&pr.images(&x));
        if !phi.is_invertible() {
            return None;
        }
        let p = pr.t_a.mul(&phi).and_then(|m| m.mul(&pr.t_b_inv)).expect("square matrices");
        {
            let mut first = self.first.lock().expect("lock poisoned");
            if first.is_none() {
                *first = Some(p.clone());
            }
        }
        (self.accept)(&p)
    }
}

fn combine(space: &Affine, coeffs: &[u64], p: u64) -> Vec<u64> {
    let mut t = space.particular.clone();
    for (k, &c) in space.kernel.iter().zip(coeffs) {
        if c != 0 {
            for (x, v) in t.iter_mut().zip(k) {
                *x = (*x + c * v) % p;
            }
        }
    }
    t
}

/// Tuples over `values`, first position most significant.
struct Odometer<'a> {
    values: &'a [u64],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Odometer<'a> {
    fn new(values: &'a [u64], len: usize) -> Self {
        Odometer { values, idx: vec![0; len], done: false }
    }
}

impl Iterator for Odometer<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.values[i]).collect();
        let mut pos = self.idx.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.values.len() {
                break;
            }
            self.idx[pos] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_order_starts_small() {
        let v = value_order(13, 5);
        assert_eq!(&v[..5], &[0, 1, 12, 5, 8]);
        let mut s = v.clone();
        s.sort();
        assert_eq!(s, (0..13).collect::<Vec<_>>());
    }

    #[test]
    fn odometer_counts() {
        let vals = [0, 1, 2];
        assert_eq!(Odometer::new(&vals, 2).count(), 9);
        assert_eq!(Odometer::new(&vals, 0).count(), 1);
    }

    #[test]
    fn solves_small_system() {
        let s = solve_mod_p(&[vec![1, 1]], &[3], 2, 13).unwrap();
        assert_eq!(s.particular, vec![3, 0]);
        assert_eq!(s.kernel, vec![vec![12, 1]]);
        assert!(solve_mod_p(&[vec![0, 0]], &[1], 2, 13).is_none());
    }
}
