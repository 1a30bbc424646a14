use std::collections::BTreeMap;

use super::{CatalogueError, Entry};
use crate::algebra::LeibnizAlgebra;
use crate::expr::ExprError;
use crate::field::GaussianRational as G;

/// Parameter name to value.
pub type Assignment = BTreeMap<String, G>;

const STREAM_LEN: usize = 600;

/// `0, 1, 2, 3, -2, i, 1+i`, then Gaussian rationals `(a + b i) / d` by
/// increasing `max(|a|, |b|, d)`, without repeats.
pub fn sample_stream(len: usize) -> Vec<G> {
    let mut out: Vec<G> = [(0, 0), (1, 0), (2, 0), (3, 0), (-2, 0), (0, 1), (1, 1)]
        .iter()
        .map(|&(a, b)| G::from_ints(a, b))
        .collect();
    let mut h: i64 = 1;
    while out.len() < len {
        let mut ring = Vec::new();
        for d in 1..=h {
            for a in -h..=h {
                for b in -h..=h {
                    if a.abs().max(b.abs()).max(d) == h {
                        ring.push((b.abs(), a.abs(), a < 0, b < 0, d, a, b));
                    }
                }
            }
        }
        ring.sort();
        for (.., d, a, b) in ring {
            let g = G::from_ints(a, b) * G::from_ratio(1, d);
            if !out.contains(&g) {
                out.push(g);
            }
        }
        h += 1;
    }
    out.truncate(len);
    out
}

fn map_expr_error(entry: &Entry, e: ExprError) -> CatalogueError {
    match e {
        ExprError::DivisionByZero(expr) => CatalogueError::DivisionByZero { entry: entry.name.clone(), expr },
        ExprError::UnknownParam(param) => CatalogueError::UnknownParam { entry: entry.name.clone(), param },
        other => CatalogueError::DivisionByZero { entry: entry.name.clone(), expr: other.to_string() },
    }
}

/// Every declared parameter is set and every constraint group has a nonzero member.
pub fn admissible(entry: &Entry, params: &Assignment) -> Result<(), CatalogueError> {
    if params.len() != entry.params.len() || !entry.params.iter().all(|p| params.contains_key(p)) {
        return Err(CatalogueError::BadAssignment { entry: entry.name.clone(), expected: entry.params.clone() });
    }
    for group in &entry.constraints {
        let mut holds = false;
        for e in group {
            if !e.eval(params).map_err(|err| map_expr_error(entry, err))?.is_zero() {
                holds = true;
                break;
            }
        }
        if !holds {
            let text: Vec<String> = group.iter().map(|e| format!("{e} != 0")).collect();
            return Err(CatalogueError::ConstraintViolated { entry: entry.name.clone(), constraint: text.join(" or ") });
        }
    }
    Ok(())
}

/// The first `count` admissible tuples of the stream; tuple `k` gives the
/// `j`-th parameter the stream value at `k + j`. Parameter-free entries get
/// the single empty assignment.
pub fn sample_params(entry: &Entry, count: usize) -> Result<Vec<Assignment>, CatalogueError> {
    if entry.params.is_empty() {
        return Ok(vec![Assignment::new()]);
    }
    let stream = sample_stream(STREAM_LEN);
    let mut out = Vec::new();
    for k in 0..STREAM_LEN - entry.params.len() {
        let point: Assignment =
            entry.params.iter().enumerate().map(|(j, p)| (p.clone(), stream[k + j].clone())).collect();
        match admissible(entry, &point) {
            Ok(()) => out.push(point),
            Err(CatalogueError::ConstraintViolated { .. }) | Err(CatalogueError::DivisionByZero { .. }) => continue,
            Err(e) => return Err(e),
        }
        if out.len() == count {
            return Ok(out);
        }
    }
    if out.is_empty() {
        Err(CatalogueError::NoAdmissiblePoint { entry: entry.name.clone() })
    } else {
        Ok(out)
    }
}

/// The `n`-dimensional algebra at an admissible parameter point.
pub fn instantiate(entry: &Entry, params: &Assignment, n: usize) -> Result<LeibnizAlgebra<G>, CatalogueError> {
    admissible(entry, params)?;
    let mut a = LeibnizAlgebra::abelian(n, &());
    for p in &entry.products {
        let mut v = a.basis_bracket(p.left - 1, p.right - 1);
        for (&k, e) in &p.value {
            if k == 0 || k > n || p.left > n || p.right > n {
                return Err(CatalogueError::IndexOutOfRange { entry: entry.name.clone(), index: k.max(p.left).max(p.right), n });
            }
            v[k - 1] = &v[k - 1] + &e.eval(params).map_err(|err| map_expr_error(entry, err))?;
        }
        a.set_product(p.left - 1, p.right - 1, v).expect("indices checked above");
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::Catalogue;

    #[test]
    fn stream_starts_as_documented() {
        let s = sample_stream(10);
        let head: Vec<String> = s[..7].iter().map(ToString::to_string).collect();
        assert_eq!(head, ["0", "1", "2", "3", "-2", "i", "1 + i"]);
        let mut seen = s.clone();
        seen.dedup();
        assert_eq!(seen.len(), 10);
    }

    #[test]
    fn a17_samples_skip_plus_minus_one() {
        let c = Catalogue::bundled();
        let pts = sample_params(c.entry("A_17").unwrap(), 3).unwrap();
        let vals: Vec<String> = pts.iter().map(|p| p["alpha"].to_string()).collect();
        assert_eq!(vals, ["0", "2", "3"]);
    }

    #[test]
    fn parameter_free_entries_get_one_point() {
        let c = Catalogue::bundled();
        assert_eq!(sample_params(c.entry("A_1").unwrap(), 3).unwrap(), vec![Assignment::new()]);
    }

    #[test]
    fn instantiate_evaluates_coefficients() {
        let c = Catalogue::bundled();
        let a1 = instantiate(c.entry("A_1").unwrap(), &Assignment::new(), 5).unwrap();
        assert_eq!(a1.products().count(), 7);
        let a5 = c.entry("A_5").unwrap();
        let zero: Assignment = [("alpha".to_string(), G::zero())].into();
        assert!(instantiate(a5, &zero, 5).unwrap().product(1, 2).is_none());
        let a250 = c.entry("A_250").unwrap();
        let one: Assignment = [("alpha".to_string(), G::one())].into();
        assert_eq!(instantiate(a250, &one, 5).unwrap().constant(1, 0, 4), G::from_i64(-2));
        assert!(matches!(instantiate(a250, &zero, 5), Err(CatalogueError::ConstraintViolated { .. })));
    }
}
