//! Reproduction harness: symbolic fixtures, oracle-vs-decomposition grid,
//! the R(2,1,2) value and numeric closed-form relations.

mod fixtures;
mod grid;
mod r212;
mod relation;

use std::fmt::Write as _;

use serde::Serialize;

pub use fixtures::{parse_fixtures, verify_fixture_set, verify_fixtures, Fixture, Series, DEFAULT_FIXTURES};
pub use grid::{color_pairs, cross_check_grid};
pub use r212::{verify_r212, R212_CLOSED_FORM, R212_PRINTED, DISPUTED_PRINTED};
pub use relation::{
    check_relation, eval_combination, parse_combination, parse_relation, parse_relations, Factor, RelationSpec, Target,
    DEFAULT_RELATIONS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Outcome of one verification case.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub label: String,
    pub status: Status,
    /// Measured side.
    pub lhs: String,
    /// Expected / reference side.
    pub rhs: String,
    pub absdiff: Option<f64>,
    pub bound: Option<f64>,
    pub ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Report>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub ms: f64,
}

pub fn summarize(reports: &[Report]) -> Summary {
    let passed = reports.iter().filter(|r| r.passed()).count();
    Summary {
        total: reports.len(),
        passed,
        failed: reports.len() - passed,
        ms: reports.iter().map(|r| r.ms).sum(),
    }
}

/// Plain-text table, one row per report (sub-checks indented).
pub fn render_table(reports: &[Report]) -> String {
    fn widest(r: &Report, depth: usize) -> usize {
        r.checks.iter().map(|c| widest(c, depth + 1)).fold(2 * depth + r.label.chars().count(), usize::max)
    }
    let width = reports.iter().map(|r| widest(r, 0)).fold(4, usize::max);
    let mut out = String::new();
    let _ = writeln!(out, "{:<width$} {:<4} {:>12} {:>10} {:>9}  lhs | rhs", "case", "", "absdiff", "bound", "ms");
    for r in reports {
        render_row(&mut out, r, 0, width);
    }
    out
}

fn render_row(out: &mut String, r: &Report, depth: usize, width: usize) {
    let num = |v: Option<f64>| v.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "-".into());
    let status = match r.status {
        Status::Pass => "ok",
        Status::Fail => "FAIL",
    };
    let label = format!("{}{}", "  ".repeat(depth), r.label);
    let _ = writeln!(
        out,
        "{label:<width$} {status:<4} {:>12} {:>10} {:>9.1}  {} | {}",
        num(r.absdiff),
        num(r.bound),
        r.ms,
        r.lhs,
        r.rhs
    );
    if let (Status::Fail, Some(detail)) = (r.status, &r.detail) {
        let _ = writeln!(out, "{}  -> {detail}", "  ".repeat(depth));
    }
    for c in &r.checks {
        render_row(out, c, depth + 1, width);
    }
}

fn elapsed_ms(start: std::time::Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}
