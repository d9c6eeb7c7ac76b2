use std::collections::BTreeMap;
use std::time::Instant;

use super::{elapsed_ms, Report, Status};
use crate::algebra::MtIndex;
use crate::decompose::{format_level2, r_decomposition, s_decomposition, EulerTerm};
use crate::error::{Error, Result};

/// The checked-in table of level-2 expansions.
pub const DEFAULT_FIXTURES: &str = include_str!("../../data/fixtures.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Series {
    /// Signs `(-1)^n`.
    R,
    /// Signs `(-1)^{m+n}`.
    S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub label: String,
    pub series: Series,
    pub index: MtIndex,
    pub expected: Vec<EulerTerm>,
}

/// Parses `R(p,q,r) = c1*z(±s,±t) + ...` lines; `#` starts a comment.
pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| Error::Parse { pos: 1, msg: format!("line {}: {msg}", lineno + 1) };
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| at("expected '='".into()))?;
        let lhs = lhs.trim();
        let series = match lhs.chars().next() {
            Some('R') => Series::R,
            Some('S') => Series::S,
            _ => return Err(at(format!("label must be R(p,q,r) or S(p,q,r), got {lhs:?}"))),
        };
        let args = lhs[1..]
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| at(format!("malformed label {lhs:?}")))?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| at(format!("malformed label {lhs:?}")))?;
        let [p, q, r] = nums[..] else {
            return Err(at(format!("label needs three entries: {lhs:?}")));
        };
        let index = MtIndex::new(p, q, r).map_err(|e| at(e.to_string()))?;
        let expected = rhs
            .split('+')
            .map(|t| t.parse::<EulerTerm>().map_err(|e| at(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if let Some(bad) = expected.iter().find(|t| t.weight() != index.weight()) {
            return Err(at(format!("term {bad} has weight {} but index weight is {}", bad.weight(), index.weight())));
        }
        out.push(Fixture { label: lhs.to_string(), series, index, expected });
    }
    Ok(out)
}

/// Multiset form: coefficients of equal symbols summed, keyed by symbol.
fn merged(terms: &[EulerTerm]) -> BTreeMap<(u32, u32, bool, bool), u64> {
    let mut map = BTreeMap::new();
    for t in terms {
        *map.entry((t.s, t.t, t.s_bar, t.t_bar)).or_insert(0) += t.coeff;
    }
    map
}

fn diff(actual: &[EulerTerm], expected: &[EulerTerm]) -> String {
    let (a, e) = (merged(actual), merged(expected));
    let show = |(s, t, sb, tb): (u32, u32, bool, bool), c: u64| {
        EulerTerm { coeff: c, s, t, s_bar: sb, t_bar: tb }.to_string()
    };
    let mut parts = Vec::new();
    for (k, &c) in &e {
        match a.get(k) {
            None => parts.push(format!("missing {}", show(*k, c))),
            Some(&ca) if ca != c => parts.push(format!("coefficient of {} is {ca}, expected {c}", show(*k, 1))),
            _ => {}
        }
    }
    for (k, &c) in &a {
        if !e.contains_key(k) {
            parts.push(format!("unexpected {}", show(*k, c)));
        }
    }
    parts.join("; ")
}

/// Decomposes every fixture and compares term multisets exactly.
pub fn verify_fixture_set(fixtures: &[Fixture]) -> Vec<Report> {
    fixtures
        .iter()
        .map(|f| {
            let start = Instant::now();
            let actual = match f.series {
                Series::R => r_decomposition(f.index),
                Series::S => s_decomposition(f.index),
            };
            let ok = merged(&actual) == merged(&f.expected);
            Report {
                label: f.label.clone(),
                status: Status::from_bool(ok),
                lhs: format_level2(&actual),
                rhs: format_level2(&f.expected),
                absdiff: None,
                bound: None,
                ms: elapsed_ms(start),
                detail: (!ok).then(|| diff(&actual, &f.expected)),
                checks: Vec::new(),
            }
        })
        .collect()
}

/// Runs the checked-in fixture table.
pub fn verify_fixtures() -> Vec<Report> {
    let fixtures = parse_fixtures(DEFAULT_FIXTURES).expect("checked-in fixtures parse");
    verify_fixture_set(&fixtures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_table_has_all_displays() {
        let fixtures = parse_fixtures(DEFAULT_FIXTURES).unwrap();
        let labels: Vec<_> = fixtures.iter().map(|f| f.label.as_str()).collect();
        assert_eq!(
            labels,
            [
                "R(1,1,3)", "R(1,2,2)", "R(1,1,5)", "R(2,1,2)", "R(2,3,2)", "R(1,2,4)", "R(1,3,3)", "R(2,1,4)",
                "R(1,4,2)", "R(2,2,3)", "R(3,1,3)", "R(3,2,2)", "R(4,1,2)"
            ]
        );
        // Every data line is preceded by its LaTeX display.
        let lines: Vec<_> = DEFAULT_FIXTURES.lines().collect();
        for (i, line) in lines.iter().enumerate() {
            if line.starts_with("R(") {
                let label = line.split('=').next().unwrap().trim();
                assert!(lines[i - 1].starts_with(&format!("# {label}=")), "{label}");
            }
        }
    }

    #[test]
    fn all_fixtures_pass() {
        let reports = verify_fixtures();
        assert_eq!(reports.len(), 13);
        for r in &reports {
            assert!(r.passed(), "{} : {} vs {} ({:?})", r.label, r.lhs, r.rhs, r.detail);
        }
    }

    #[test]
    fn mutated_fixture_fails_with_diff() {
        let text = DEFAULT_FIXTURES.replace("3*z(-6,-1) + z(5,-2) + 3*z(6,-1)", "2*z(-6,-1) + z(5,-2) + 3*z(6,-1)");
        let fixtures = parse_fixtures(&text).unwrap();
        let reports = verify_fixture_set(&fixtures);
        let bad: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].label, "R(3,2,2)");
        assert_eq!(bad[0].detail.as_deref(), Some("coefficient of z(-6,-1) is 3, expected 2"));
    }

    #[test]
    fn s_series_and_order_insensitivity() {
        let fixtures = parse_fixtures("S(1,1,3) = 2*z(-4,1)\nR(2,1,2) = z(4,-1) + z(-3,-2) + z(-4,-1)").unwrap();
        assert!(verify_fixture_set(&fixtures).iter().all(Report::passed));
    }

    #[test]
    fn parse_errors_name_the_problem() {
        let err = |t: &str| parse_fixtures(t).unwrap_err().to_string();
        assert!(err("R(1,0,1) = z(3,-1)").contains("q+r>1"));
        assert!(err("R(1,1,3) = z(4,-2)").contains("weight"));
        assert!(err("T(1,1,3) = z(4,-1)").contains("label"));
        assert!(err("R(1,1,3) z(4,-1)").contains("'='"));
        assert!(err("\n\nR(1,1) = z(4,-1)").contains("line 3"));
    }
}
