//! Witness fixtures: base changes transcribed from proofs, checked exactly.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{verify_witness, IsoError, WitnessCheck};
use crate::algebra::LeibnizAlgebra;
use crate::catalogue::{instantiate, Assignment, Catalogue, CatalogueError, Entry, Product};
use crate::expr::ExprError;
use crate::field::{parse_scalar, FieldError, GaussianRational as G, QuadExt, ScalarLiteral};
use crate::linalg::Matrix;

pub const BUNDLED_WITNESSES: &str = include_str!("../../data/witnesses.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("syntax error at line {line}, column {column} ({path}): {msg}")]
    Syntax { line: usize, column: usize, path: String, msg: String },
    #[error("{fixture}: {source}")]
    Catalogue { fixture: String, source: CatalogueError },
    #[error("{fixture}: bad scalar {text:?}: {msg}")]
    Scalar { fixture: String, text: String, msg: String },
    #[error("{fixture}: column {column} has index {index} outside 1..={n}")]
    Index { fixture: String, column: usize, index: usize, n: usize },
    #[error("{fixture}: expected {n} columns, found {found}")]
    Shape { fixture: String, n: usize, found: usize },
    #[error("{fixture}: more than one radical ({0} and {1})", .radicals.0, .radicals.1)]
    TwoRadicals { fixture: String, radicals: (String, String) },
    #[error("duplicate fixture name {0}")]
    DuplicateName(String),
}

/// A catalogue entry at a parameter point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryRef {
    pub entry: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

/// An algebra written out in a proof, at concrete constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineAlgebra {
    pub template: String,
    pub products: Vec<Product>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, try_from = "RawAlgebraRef")]
pub enum AlgebraRef {
    Entry(EntryRef),
    Inline(InlineAlgebra),
}

/// Either `entry` (with optional `params`) or `template` with `products`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebraRef {
    entry: Option<String>,
    #[serde(default)]
    params: BTreeMap<String, String>,
    template: Option<String>,
    products: Option<Vec<Product>>,
}

impl TryFrom<RawAlgebraRef> for AlgebraRef {
    type Error = String;

    fn try_from(r: RawAlgebraRef) -> Result<Self, String> {
        match (r.entry, r.template, r.products) {
            (Some(entry), None, None) => Ok(AlgebraRef::Entry(EntryRef { entry, params: r.params })),
            (None, Some(template), Some(products)) if r.params.is_empty() => {
                Ok(AlgebraRef::Inline(InlineAlgebra { template, products }))
            }
            _ => Err("expected either `entry` with optional `params`, or `template` with `products`".to_string()),
        }
    }
}

impl fmt::Display for AlgebraRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraRef::Entry(e) if e.params.is_empty() => write!(f, "{}", e.entry),
            AlgebraRef::Entry(e) => {
                let ps: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(f, "{}({})", e.entry, ps.join(","))
            }
            AlgebraRef::Inline(t) => write!(f, "[{}]", t.template),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Ok,
    Fail,
}

/// `columns[j]` is the image `x_{j+1}` as a sparse one-based coordinate map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub note: String,
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    pub columns: Vec<BTreeMap<usize, String>>,
    pub expect: Expect,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub format: u32,
    pub fixtures: Vec<Fixture>,
}

/// A witness matrix over `Q(i)`, or over `Q(i)(sqrt d)` when a literal needs it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessMatrix {
    Gaussian(Matrix<G>),
    Quad { d: G, p: Matrix<QuadExt> },
}

impl WitnessMatrix {
    pub fn field_label(&self) -> String {
        match self {
            WitnessMatrix::Gaussian(_) => "Q(i)".to_string(),
            WitnessMatrix::Quad { d, .. } => format!("Q(i)(sqrt({d}))"),
        }
    }

    /// The matrix over `Q(i)(sqrt d)`.
    pub fn to_quad(&self, d: &G) -> Matrix<QuadExt> {
        match self {
            WitnessMatrix::Gaussian(p) => p.map(d, |g| QuadExt::embed(g.clone(), d)),
            WitnessMatrix::Quad { p, .. } => p.clone(),
        }
    }

    pub fn radicand(&self) -> Option<&G> {
        match self {
            WitnessMatrix::Gaussian(_) => None,
            WitnessMatrix::Quad { d, .. } => Some(d),
        }
    }
}

/// A fixture with both algebras instantiated and the matrix parsed.
#[derive(Debug, Clone)]
pub struct ResolvedFixture {
    pub name: String,
    pub expect: Expect,
    pub source: LeibnizAlgebra<G>,
    pub target: LeibnizAlgebra<G>,
    pub matrix: WitnessMatrix,
}

/// Verification outcome of one fixture. A singular matrix counts as not ok.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub source: String,
    pub target: String,
    pub field: String,
    pub expect: Expect,
    pub verdict: String,
    pub ok: bool,
    pub matches: bool,
}

pub fn embed_algebra(a: &LeibnizAlgebra<G>, d: &G) -> LeibnizAlgebra<QuadExt> {
    a.try_map::<QuadExt, FieldError>(d, |g| Ok(QuadExt::embed(g.clone(), d))).expect("embedding is total")
}

impl ResolvedFixture {
    /// `verify_witness(source, target, P)` over the field the matrix needs.
    pub fn check(&self) -> Result<bool, IsoError> {
        Ok(match &self.matrix {
            WitnessMatrix::Gaussian(p) => verify_witness(&self.source, &self.target, p)?.is_ok(),
            WitnessMatrix::Quad { d, p } => {
                verify_witness(&embed_algebra(&self.source, d), &embed_algebra(&self.target, d), p)?.is_ok()
            }
        })
    }

    fn verdict(&self) -> String {
        fn show<F: crate::field::Field>(r: Result<WitnessCheck<F>, IsoError>) -> String {
            match r {
                Ok(c) => c.to_string(),
                Err(e) => format!("error: {e}"),
            }
        }
        match &self.matrix {
            WitnessMatrix::Gaussian(p) => show(verify_witness(&self.source, &self.target, p)),
            WitnessMatrix::Quad { d, p } => {
                show(verify_witness(&embed_algebra(&self.source, d), &embed_algebra(&self.target, d), p))
            }
        }
    }
}

impl FixtureFile {
    pub fn parse(text: &str) -> Result<Self, FixtureError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: FixtureFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            FixtureError::Syntax { line: inner.line(), column: inner.column(), path, msg: inner.to_string() }
        })?;
        let mut seen = std::collections::HashSet::new();
        for f in &file.fixtures {
            if !seen.insert(f.name.as_str()) {
                return Err(FixtureError::DuplicateName(f.name.clone()));
            }
        }
        Ok(file)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_WITNESSES).expect("bundled fixtures parse")
    }

    pub fn resolve(&self, cat: &Catalogue) -> Result<Vec<ResolvedFixture>, FixtureError> {
        self.fixtures.iter().map(|f| f.resolve(cat)).collect()
    }

    /// Every fixture checked, in file order.
    pub fn verify(&self, cat: &Catalogue) -> Result<Vec<FixtureOutcome>, FixtureError> {
        self.fixtures
            .iter()
            .map(|f| {
                let r = f.resolve(cat)?;
                let ok = r.check().unwrap_or(false);
                Ok(FixtureOutcome {
                    name: f.name.clone(),
                    source: f.source.to_string(),
                    target: f.target.to_string(),
                    field: r.matrix.field_label(),
                    expect: f.expect,
                    verdict: r.verdict(),
                    ok,
                    matches: ok == (f.expect == Expect::Ok),
                })
            })
            .collect()
    }
}

fn scalar_error(fixture: &str, text: &str, msg: impl ToString) -> FixtureError {
    FixtureError::Scalar { fixture: fixture.to_string(), text: text.to_string(), msg: msg.to_string() }
}

impl Fixture {
    fn algebra(&self, r: &AlgebraRef, cat: &Catalogue) -> Result<LeibnizAlgebra<G>, FixtureError> {
        let wrap = |source| FixtureError::Catalogue { fixture: self.name.clone(), source };
        match r {
            AlgebraRef::Entry(e) => {
                let entry = cat.entry(&e.entry).map_err(wrap)?;
                let mut params = Assignment::new();
                for (k, v) in &e.params {
                    let g = parse_scalar(v)
                        .map_err(|err: ExprError| scalar_error(&self.name, v, err))?
                        .to_gaussian()
                        .map_err(|err| scalar_error(&self.name, v, err))?;
                    params.insert(k.clone(), g);
                }
                cat.instantiate(entry, &params).map_err(wrap)
            }
            AlgebraRef::Inline(t) => {
                let entry = Entry {
                    name: format!("{} / {}", self.name, t.template),
                    theorem: String::new(),
                    params: vec![],
                    constraints: vec![],
                    products: t.products.clone(),
                    iso_criteria: None,
                    flags: vec![],
                };
                instantiate(&entry, &Assignment::new(), cat.dimension).map_err(wrap)
            }
        }
    }

    pub fn resolve(&self, cat: &Catalogue) -> Result<ResolvedFixture, FixtureError> {
        let n = cat.dimension;
        if self.columns.len() != n {
            return Err(FixtureError::Shape { fixture: self.name.clone(), n, found: self.columns.len() });
        }
        let mut cells: Vec<(usize, usize, ScalarLiteral)> = Vec::new();
        let mut radical: Option<G> = None;
        for (j, col) in self.columns.iter().enumerate() {
            for (&i, text) in col {
                if i == 0 || i > n {
                    return Err(FixtureError::Index { fixture: self.name.clone(), column: j + 1, index: i, n });
                }
                let lit = parse_scalar(text).map_err(|err| scalar_error(&self.name, text, err))?;
                if let Some(d) = lit.radicand() {
                    match &radical {
                        Some(r) if r != d => {
                            return Err(FixtureError::TwoRadicals {
                                fixture: self.name.clone(),
                                radicals: (r.to_string(), d.to_string()),
                            })
                        }
                        _ => radical = Some(d.clone()),
                    }
                }
                cells.push((i - 1, j, lit));
            }
        }
        let matrix = match radical {
            None => {
                let mut p = Matrix::zeros(n, n, &());
                for (i, j, lit) in cells {
                    p[(i, j)] = lit.to_gaussian().expect("no radical present");
                }
                WitnessMatrix::Gaussian(p)
            }
            Some(d) => {
                let mut p = Matrix::zeros(n, n, &d);
                for (i, j, lit) in cells {
                    p[(i, j)] = lit.to_quad(&d).expect("single radical checked above");
                }
                WitnessMatrix::Quad { d, p }
            }
        };
        Ok(ResolvedFixture {
            name: self.name.clone(),
            expect: self.expect,
            source: self.algebra(&self.source, cat)?,
            target: self.algebra(&self.target, cat)?,
            matrix,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_match_their_verdicts() {
        let cat = Catalogue::bundled();
        let out = FixtureFile::bundled().verify(&cat).unwrap();
        let bad: Vec<_> = out.iter().filter(|o| !o.matches).map(|o| format!("{}: {}", o.name, o.verdict)).collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert!(out.iter().filter(|o| o.ok).count() >= 10);
    }

    #[test]
    fn sqrt_literals_select_the_extension() {
        let cat = Catalogue::bundled();
        let f = FixtureFile::bundled();
        let a5 = f.fixtures.iter().find(|x| x.name == "a5-from-iii-case1").unwrap().resolve(&cat).unwrap();
        assert_eq!(a5.matrix.radicand(), Some(&G::from_i64(2)));
        assert!(a5.check().unwrap());
    }

    #[test]
    fn malformed_files_are_located() {
        let err = FixtureFile::parse("{\"format\": 1, \"fixtures\": [{\"name\": 3}]}").unwrap_err();
        assert!(matches!(err, FixtureError::Syntax { ref path, .. } if path.contains("fixtures[0]")), "{err}");
    }
}
