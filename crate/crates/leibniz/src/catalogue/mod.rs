//! The catalogue of 5-dimensional nilpotent non-split non-Lie Leibniz
//! algebras: schema, loading, parameter sampling and per-entry verification.

mod sample;
mod verify;

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::expr::Expr;

pub use sample::{admissible, instantiate, sample_params, sample_stream, Assignment};
pub use verify::{verify_catalogue, verify_entry, CheckResult, EntryReport};

/// The catalogue shipped with the crate.
pub const BUNDLED: &str = include_str!("../../data/catalogue.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogueError {
    #[error("syntax error at line {line}, column {column} ({path}): {msg}")]
    Syntax { line: usize, column: usize, path: String, msg: String },
    #[error("duplicate entry name {0}")]
    DuplicateName(String),
    #[error("{entry}: index {index} outside 1..={n}")]
    IndexOutOfRange { entry: String, index: usize, n: usize },
    #[error("{entry}: unknown theorem {theorem}")]
    UnknownTheorem { entry: String, theorem: String },
    #[error("{entry}: expression uses undeclared parameter {param}")]
    UnknownParam { entry: String, param: String },
    #[error("no entry named {0}")]
    UnknownEntry(String),
    #[error("{entry}: no admissible parameter point in the sample stream")]
    NoAdmissiblePoint { entry: String },
    #[error("{entry}: parameters violate constraint {constraint}")]
    ConstraintViolated { entry: String, constraint: String },
    #[error("{entry}: parameter assignment must set exactly {expected:?}")]
    BadAssignment { entry: String, expected: Vec<String> },
    #[error("{entry}: division by zero in {expr}")]
    DivisionByZero { entry: String, expr: String },
    #[error("bad parameter point {spec:?}: {msg}")]
    BadPoint { spec: String, msg: String },
}

/// Invariants stated by a theorem's hypotheses. Absent fields are not claimed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claimed {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_a2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_a3: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_a4: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_center: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_leib: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leib_equals_center: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem {
    pub id: String,
    pub claimed: Claimed,
}

/// `[e_left, e_right] = sum_k value[k] e_k`, one-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Product {
    pub left: usize,
    pub right: usize,
    pub value: BTreeMap<usize, Expr>,
}

/// Parameter substitutions that give isomorphic algebras.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoCriteria {
    pub note: String,
    pub maps: Vec<BTreeMap<String, Expr>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub name: String,
    pub theorem: String,
    pub params: Vec<String>,
    /// Each inner list holds when at least one of its expressions is nonzero.
    pub constraints: Vec<Vec<Expr>>,
    pub products: Vec<Product>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso_criteria: Option<IsoCriteria>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalogue {
    pub format: u32,
    pub dimension: usize,
    pub theorems: Vec<Theorem>,
    pub entries: Vec<Entry>,
}

impl Catalogue {
    pub fn parse(text: &str) -> Result<Self, CatalogueError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cat: Catalogue = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            CatalogueError::Syntax { line: inner.line(), column: inner.column(), path, msg: inner.to_string() }
        })?;
        cat.validate()?;
        Ok(cat)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled catalogue parses")
    }

    fn validate(&self) -> Result<(), CatalogueError> {
        let n = self.dimension;
        let theorems: HashSet<&str> = self.theorems.iter().map(|t| t.id.as_str()).collect();
        let mut names = HashSet::new();
        for e in &self.entries {
            if !names.insert(e.name.as_str()) {
                return Err(CatalogueError::DuplicateName(e.name.clone()));
            }
            if !theorems.contains(e.theorem.as_str()) {
                return Err(CatalogueError::UnknownTheorem { entry: e.name.clone(), theorem: e.theorem.clone() });
            }
            let oob = |index: usize| CatalogueError::IndexOutOfRange { entry: e.name.clone(), index, n };
            let mut exprs: Vec<&Expr> = e.constraints.iter().flatten().collect();
            for p in &e.products {
                for idx in [p.left, p.right].into_iter().chain(p.value.keys().copied()) {
                    if idx == 0 || idx > n {
                        return Err(oob(idx));
                    }
                }
                exprs.extend(p.value.values());
            }
            for param in exprs.iter().flat_map(|x| x.params()) {
                if !e.params.contains(&param) {
                    return Err(CatalogueError::UnknownParam { entry: e.name.clone(), param });
                }
            }
        }
        Ok(())
    }

    /// Pretty-printed JSON with canonical expression formatting.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// SHA-256 of the canonical serialization, hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_canonical_json().as_bytes()))
    }

    pub fn entry(&self, name: &str) -> Result<&Entry, CatalogueError> {
        self.entries.iter().find(|e| e.name == name).ok_or_else(|| CatalogueError::UnknownEntry(name.to_string()))
    }

    pub fn theorem(&self, id: &str) -> Option<&Theorem> {
        self.theorems.iter().find(|t| t.id == id)
    }

    /// [`instantiate`] in the catalogue's dimension.
    pub fn instantiate(&self, entry: &Entry, params: &Assignment) -> Result<crate::algebra::LeibnizAlgebra<crate::field::GaussianRational>, CatalogueError> {
        instantiate(entry, params, self.dimension)
    }

    /// Resolve `NAME` or `NAME:p=v,q=w` with values in the scalar grammar.
    /// A bare name with parameters takes the first admissible sample.
    pub fn point(&self, spec: &str) -> Result<(&Entry, Assignment), CatalogueError> {
        let bad = |msg: String| CatalogueError::BadPoint { spec: spec.to_string(), msg };
        let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let entry = self.entry(name.trim())?;
        if rest.trim().is_empty() {
            let params = sample_params(entry, 1)?.into_iter().next().unwrap_or_default();
            return Ok((entry, params));
        }
        let mut params = Assignment::new();
        for pair in rest.split(',') {
            let (k, v) = pair.split_once('=').ok_or_else(|| bad(format!("expected param=value, got {pair:?}")))?;
            let value = crate::field::parse_scalar(v.trim())
                .map_err(|e| bad(e.to_string()))?
                .to_gaussian()
                .map_err(|e| bad(e.to_string()))?;
            params.insert(k.trim().to_string(), value);
        }
        admissible(entry, &params)?;
        Ok((entry, params))
    }

    pub fn claimed(&self, entry: &Entry) -> Claimed {
        self.theorem(&entry.theorem).map(|t| t.claimed.clone()).unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_loads_all_entries() {
        let c = Catalogue::bundled();
        assert_eq!(c.entries.len(), 277);
        assert!(c.entry("A_246a").is_ok() && c.entry("A_246b").is_ok());
        assert!(c.entry("R_15").is_ok() && c.entry("A_261").is_ok());
    }

    #[test]
    fn literals_survive() {
        let c = Catalogue::bundled();
        let a42 = c.entry("A_42").unwrap();
        assert!(a42.products.iter().any(|p| p.value.values().any(|v| v.to_string() == "1/4")));
        let a198 = c.entry("A_198").unwrap();
        assert!(a198.products.iter().any(|p| (p.left, p.right) == (2, 1) && p.value[&5] == Expr::I));
    }

    #[test]
    fn canonical_round_trip() {
        let c = Catalogue::bundled();
        let s = c.to_canonical_json();
        let again = Catalogue::parse(&s).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.to_canonical_json(), s);
    }

    #[test]
    fn errors_are_located() {
        let bad = BUNDLED.replacen("\"left\": 1,", "\"left\": 9,", 1);
        assert!(matches!(Catalogue::parse(&bad), Err(CatalogueError::IndexOutOfRange { index: 9, .. })));
        let bad = BUNDLED.replacen("\"1\"", "\"1 +\"", 1);
        match Catalogue::parse(&bad) {
            Err(CatalogueError::Syntax { line, path, .. }) => {
                assert!(line > 1);
                assert!(path.starts_with("entries["), "{path}");
            }
            other => panic!("{other:?}"),
        }
        let mut c = Catalogue::bundled();
        c.entries.push(c.entries[0].clone());
        assert_eq!(Catalogue::parse(&c.to_canonical_json()), Err(CatalogueError::DuplicateName("A_1".into())));
    }

    #[test]
    fn points_parse() {
        let cat = Catalogue::bundled();
        let (e, p) = cat.point("A_5:alpha=-2").unwrap();
        assert_eq!(e.name, "A_5");
        assert_eq!(p["alpha"], crate::field::GaussianRational::from_i64(-2));
        let (_, p) = cat.point("A_17").unwrap();
        assert_eq!(p["alpha"], crate::field::GaussianRational::zero());
        assert!(cat.point("A_17:alpha=1").is_err());
        assert!(cat.point("A_17:alpha").is_err());
        assert!(cat.point("A_999").is_err());
    }
}
