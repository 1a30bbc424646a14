//! Run reports: one row per checked subject, rendered as JSON or a table.

use serde::Serialize;
use serde_json::{json, Value};

use crate::bilinear::{congruence_canonical, Congruence};
use crate::catalogue::{Catalogue, EntryReport};
use crate::field::GaussianRational;
use crate::invariants::InvariantSignature;
use crate::iso::{FixtureOutcome, IsoVerdict};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Info,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Inconclusive => "inconclusive",
            Status::Info => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub subject: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Row {
    pub fn new(subject: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Row { subject: subject.into(), status, detail: detail.into(), data: Value::Null }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub rows: Vec<Row>,
}

impl CommandReport {
    pub fn new(command: impl Into<String>, rows: Vec<Row>) -> Self {
        CommandReport { command: command.into(), rows }
    }

    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub catalogue_digest: String,
    pub commands: Vec<CommandReport>,
    pub failed: usize,
    pub exit_status: i32,
}

impl RunReport {
    pub fn new(cat: &Catalogue) -> Self {
        RunReport {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            catalogue_digest: cat.digest(),
            commands: vec![],
            failed: 0,
            exit_status: 0,
        }
    }

    /// Adds a command and updates the exit status: nonzero iff some row failed.
    pub fn push(&mut self, cmd: CommandReport) {
        self.failed += cmd.count(Status::Fail);
        self.exit_status = i32::from(self.failed > 0);
        self.commands.push(cmd);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{} {}  catalogue sha256 {}\n", self.tool, self.version, self.catalogue_digest);
        for cmd in &self.commands {
            out.push_str(&format!("\n== {}\n", cmd.command));
            let w = cmd.rows.iter().map(|r| r.subject.chars().count()).max().unwrap_or(0);
            for r in &cmd.rows {
                let mut lines = r.detail.lines();
                out.push_str(&format!("{:<w$}  {:<12}  {}\n", r.subject, r.status.label(), lines.next().unwrap_or("")));
                for more in lines {
                    out.push_str(&format!("{:<w$}  {:<12}  {more}\n", "", ""));
                }
            }
            out.push_str(&format!(
                "-- {} pass, {} fail, {} inconclusive\n",
                cmd.count(Status::Pass),
                cmd.count(Status::Fail),
                cmd.count(Status::Inconclusive)
            ));
        }
        out.push_str(&format!("\n{} failed; exit status {}\n", self.failed, self.exit_status));
        out
    }
}

pub fn verify_command(reports: &[EntryReport]) -> CommandReport {
    let rows = reports
        .iter()
        .map(|r| {
            let subject = r.label();
            let checks = serde_json::to_value(&r.checks).expect("serializable");
            if r.passed() {
                Row::new(subject, Status::Pass, format!("{} checks", r.checks.len())).with_data(checks)
            } else {
                let fails: Vec<String> = r.failures().map(|c| format!("{}: {}", c.check, c.detail)).collect();
                Row::new(subject, Status::Fail, fails.join("\n")).with_data(checks)
            }
        })
        .collect();
    CommandReport::new("verify", rows)
}

pub fn signature_line(s: &InvariantSignature) -> String {
    format!(
        "lcs {:?}  derived {:?}  leib {}  center {}  ann L/R {}/{}",
        s.lower_central_dims, s.derived_dims, s.dim_leib, s.dim_center, s.dim_left_ann, s.dim_right_ann
    )
}

pub fn invariants_row(subject: String, s: &InvariantSignature) -> Row {
    Row::new(subject, Status::Info, signature_line(s)).with_data(serde_json::to_value(s).expect("serializable"))
}

pub fn fixtures_command(outcomes: &[FixtureOutcome]) -> CommandReport {
    let rows = outcomes
        .iter()
        .map(|o| {
            let status = if o.matches { Status::Pass } else { Status::Fail };
            let expect = if o.expect == crate::iso::Expect::Ok { "ok" } else { "fail" };
            let detail = format!("{} -> {} over {}: {} (expected {expect})", o.source, o.target, o.field, o.verdict);
            Row::new(o.name.clone(), status, detail).with_data(serde_json::to_value(o).expect("serializable"))
        })
        .collect();
    CommandReport::new("iso verify", rows)
}

/// Certified and signature-separated verdicts pass, evidence and misses are
/// inconclusive. Pass `expect_iso = true` when the pair is known isomorphic,
/// so that a separation counts as a failure.
pub fn iso_row(subject: String, verdict: &IsoVerdict, expect_iso: bool) -> Row {
    let (status, detail, data) = match verdict {
        IsoVerdict::Certified(p) => (Status::Pass, format!("{}\nP = {p}", verdict.label()), json!({"p": matrix_json(p)})),
        IsoVerdict::FiniteFieldEvidence { primes, witnesses } => (
            Status::Inconclusive,
            format!("{} modulo {primes:?}; not a certificate", verdict.label()),
            json!({"primes": primes, "witnesses": witnesses.iter().map(matrix_json).collect::<Vec<_>>()}),
        ),
        IsoVerdict::NonIsomorphic(fields) => {
            let status = if expect_iso { Status::Fail } else { Status::Pass };
            (status, format!("{}: {}", verdict.label(), fields.join(", ")), json!({"differences": fields}))
        }
        IsoVerdict::Inconclusive { candidates, reason } => (
            Status::Inconclusive,
            format!("{}: {reason} after {candidates} candidates", verdict.label()),
            json!({"candidates": candidates}),
        ),
    };
    Row::new(subject, status, detail).with_data(json!({"verdict": verdict.label(), "details": data}))
}

fn matrix_json<F: crate::field::Field>(m: &Matrix<F>) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Canonical kind of a 2x2 form, rechecked before it is reported.
pub fn canon_row(m: &Matrix<GaussianRational>) -> (Congruence, Row) {
    let c = congruence_canonical(m);
    let ok = c.verify(m);
    let mut detail = format!("kind {}\nQ = {}", c.kind_string(), c.q_string());
    if let Some(note) = c.note() {
        detail.push_str(&format!("\n{note}"));
    }
    detail.push_str(if ok { "\nQ^T M Q equals the representative" } else { "\nQ^T M Q check FAILED" });
    let status = if ok { Status::Pass } else { Status::Fail };
    let row = Row::new(m.to_string(), status, detail).with_data(json!({
        "kind": c.tag().roman(),
        "representative": c.kind_string(),
        "q": c.q_string(),
        "verified": ok,
    }));
    (c, row)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_status_tracks_failures_only() {
        let cat = Catalogue::bundled();
        let mut r = RunReport::new(&cat);
        r.push(CommandReport::new("x", vec![Row::new("a", Status::Pass, ""), Row::new("b", Status::Inconclusive, "")]));
        assert_eq!(r.exit_status, 0);
        r.push(CommandReport::new("y", vec![Row::new("c", Status::Fail, "bad")]));
        assert_eq!((r.failed, r.exit_status), (1, 1));
        assert!(r.to_table().contains("FAIL"));
        assert_eq!(r.to_json(), r.clone().to_json());
    }

    #[test]
    fn canon_rows_recheck_q() {
        let m = Matrix::from_rows(vec![vec![GaussianRational::zero(), GaussianRational::from_i64(2)], vec![GaussianRational::from_i64(4), GaussianRational::zero()]], &()).unwrap();
        let (c, row) = canon_row(&m);
        assert_eq!(c.tag(), crate::bilinear::KindTag::MixedC);
        assert_eq!(row.status, Status::Pass);
    }
}
