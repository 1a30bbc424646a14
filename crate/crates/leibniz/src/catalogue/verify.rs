use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{sample_params, Assignment, Catalogue, Entry};
use crate::invariants::{signature, InvariantSignature};
use crate::lemmas::bounds_report;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

/// Checks for one entry at one parameter point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<CheckResult>,
    pub signature: Option<InvariantSignature>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// `NAME` or `NAME(p=v,q=w)`.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.name, ps.join(","))
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { check: name.to_string(), passed, detail: detail.into() }
}

fn claim(name: &str, claimed: Option<usize>, computed: usize, out: &mut Vec<CheckResult>) {
    if let Some(c) = claimed {
        out.push(check(name, c == computed, format!("claimed {c}, computed {computed}")));
    }
}

/// Leibniz identity, non-Lie, claimed invariants, the dimension bounds and
/// `Z(A) ⊆ A^2`. Failures are report content, never errors.
pub fn verify_entry(cat: &Catalogue, entry: &Entry, params: &Assignment) -> EntryReport {
    let mut report = EntryReport {
        name: entry.name.clone(),
        params: params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        checks: Vec::new(),
        signature: None,
    };
    let a = match cat.instantiate(entry, params) {
        Ok(a) => a,
        Err(e) => {
            report.checks.push(check("instantiate", false, e.to_string()));
            return report;
        }
    };
    let checks = &mut report.checks;
    let leib = a.check_leibniz();
    checks.push(check("leibniz", leib.is_ok(), leib.to_string()));
    let sig = signature(&a);
    checks.push(check("non_lie", sig.dim_leib >= 1, format!("dim Leib = {}", sig.dim_leib)));
    let claimed = cat.claimed(entry);
    claim("dim_a2", claimed.dim_a2, sig.dim_lower(2), checks);
    claim("dim_a3", claimed.dim_a3, sig.dim_lower(3), checks);
    claim("dim_a4", claimed.dim_a4, sig.dim_lower(4), checks);
    claim("dim_leib", claimed.dim_leib, sig.dim_leib, checks);
    claim("dim_center", claimed.dim_center, sig.dim_center, checks);
    if let Some(eq) = claimed.leib_equals_center {
        let same = a.leib_ideal() == a.center();
        checks.push(check("leib_equals_center", same == eq, format!("claimed {eq}, computed {same}")));
    }
    let bounds = bounds_report(&a);
    let l4 = &bounds.lemma4;
    checks.push(check(
        "lemma4",
        l4.holds,
        if l4.applicable { format!("dim A^2 = {} <= {} (k = {})", l4.dim_a2, l4.bound, l4.k) } else { "not applicable".into() },
    ));
    let l5 = &bounds.lemma5;
    checks.push(check(
        "lemma5",
        l5.holds(),
        if l5.applicable {
            let ii = l5.holds_ii.map_or("n/a".to_string(), |h| format!("{} <= {}: {h}", bounds.n, l5.bound_ii));
            format!("n = {} <= {} (k = {}, t = {}); (ii) {ii}", bounds.n, l5.bound_i, l5.k, l5.t)
        } else {
            "not applicable".into()
        },
    ));
    let z_in_a2 = a.square().contains(&a.center()).expect("same ambient");
    checks.push(check("center_in_a2", z_in_a2, format!("dim Z = {}", sig.dim_center)));
    report.signature = Some(sig);
    report
}

/// Every entry (optionally filtered by name) at `samples` parameter points,
/// verified in parallel and returned in catalogue order.
pub fn verify_catalogue(cat: &Catalogue, filter: Option<&str>, samples: usize) -> Vec<EntryReport> {
    let entries: Vec<&Entry> = cat.entries.iter().filter(|e| filter.is_none_or(|f| e.name == f)).collect();
    entries
        .par_iter()
        .flat_map_iter(|e| match sample_params(e, samples) {
            Ok(points) => points.iter().map(|p| verify_entry(cat, e, p)).collect::<Vec<_>>(),
            Err(err) => vec![EntryReport {
                name: e.name.clone(),
                params: BTreeMap::new(),
                checks: vec![check("sample_params", false, err.to_string())],
                signature: None,
            }],
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_passes_everything() {
        let c = Catalogue::bundled();
        let r = verify_entry(&c, c.entry("A_1").unwrap(), &Assignment::new());
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.signature.unwrap().lower_central_dims, vec![5, 3, 2, 1, 0]);
    }

    #[test]
    fn dropping_a_product_breaks_a1() {
        let c = Catalogue::bundled();
        let mut e = c.entry("A_1").unwrap().clone();
        e.products.retain(|p| (p.left, p.right) != (4, 1));
        let r = verify_entry(&c, &e, &Assignment::new());
        assert!(r.failures().any(|f| f.check == "leibniz"));
    }

    #[test]
    fn a16_has_four_dimensional_square() {
        let c = Catalogue::bundled();
        let r = verify_entry(&c, c.entry("A_16").unwrap(), &Assignment::new());
        assert!(r.passed());
        assert_eq!(r.signature.unwrap().dim_lower(2), 4);
    }
}
