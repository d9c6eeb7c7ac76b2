use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;

use super::{elapsed_ms, Report, Status};
use crate::algebra::{MtIndex, RootOfUnity};
use crate::decompose::{decompose, LiTerm};
use crate::error::{Error, Result};
use crate::eval::{combine_terms, eval_li, DiagonalSums, EvalConfig, MtTable, ValueWithError};

/// All ordered pairs `(α, β)` of roots of unity whose order divides one of
/// `orders`, deduplicated and in canonical order.
pub fn color_pairs(orders: &[u64]) -> Result<Vec<(RootOfUnity, RootOfUnity)>> {
    let mut roots = BTreeSet::new();
    for &n in orders {
        for k in 0..n {
            roots.insert(RootOfUnity::new(k as i64, n)?);
        }
    }
    if roots.is_empty() {
        return Err(Error::InvalidConfig("at least one positive order required".into()));
    }
    Ok(roots.iter().flat_map(|&a| roots.iter().map(move |&b| (a, b))).collect())
}

/// Compares direct summation against the evaluated decomposition for every
/// valid index of weight `<= max_weight` and every color pair drawn from
/// `orders`. A case passes when the two values agree within the sum of their
/// error bounds.
pub fn cross_check_grid(max_weight: u32, orders: &[u64], cfg: &EvalConfig) -> Result<Vec<Report>> {
    cfg.validate()?;
    if max_weight < 3 {
        return Err(Error::InvalidConfig(format!("grid weight >= 3 required, got {max_weight}")));
    }
    if orders.contains(&0) {
        return Err(Error::InvalidConfig("orders must be positive".into()));
    }
    let pairs = color_pairs(orders)?;
    let modulus = orders.iter().fold(1u64, |acc, &n| acc.lcm(&n));
    let indices = MtIndex::enumerate(max_weight);

    // One diagonal pass per (p, q) serves every r and color pair.
    let mut by_pq: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
    for idx in &indices {
        by_pq.entry((idx.p(), idx.q())).or_default().push(idx.r());
    }
    let groups: Vec<_> = by_pq.into_iter().collect();
    let table_start = Instant::now();
    let tables: BTreeMap<MtIndex, MtTable> = groups
        .par_iter()
        .map(|((p, q), rs)| DiagonalSums::tables(*p, *q, rs, modulus, cfg.oracle_cutoff))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .map(|t| (t.index(), t))
        .collect();
    let table_ms = elapsed_ms(table_start) / (indices.len() * pairs.len()) as f64;

    let cases: Vec<_> = indices
        .iter()
        .flat_map(|&idx| pairs.iter().map(move |&(a, b)| decompose(idx, a, b)))
        .collect();

    // Each distinct Li value is computed once.
    let mut keys = BTreeSet::new();
    for d in &cases {
        keys.extend(d.terms().iter().map(|t| (t.s, t.t, t.x, t.y)));
    }
    let keys: Vec<_> = keys.into_iter().collect();
    let li_start = Instant::now();
    let values: BTreeMap<_, ValueWithError> = keys
        .par_iter()
        .map(|&(s, t, x, y)| eval_li(s, t, x, y, cfg).map(|v| ((s, t, x, y), v)))
        .collect::<Result<_>>()?;
    let li_ms = elapsed_ms(li_start) / cases.len() as f64;

    cases
        .iter()
        .map(|d| {
            let start = Instant::now();
            let oracle = tables[&d.index].evaluate(d.alpha, d.beta)?;
            let term_values: Vec<_> = d.terms().iter().map(|t: &LiTerm| values[&t.key()]).collect();
            let rhs = combine_terms(d.terms(), &term_values)?;
            Ok(numeric_report(
                format!("MT{}[{},{}]", d.index, d.alpha, d.beta),
                &oracle,
                &rhs,
                elapsed_ms(start) + table_ms + li_ms,
            ))
        })
        .collect()
}

/// Pass iff `|lhs - rhs| <= bound(lhs) + bound(rhs)`.
pub(crate) fn numeric_report(label: String, lhs: &ValueWithError, rhs: &ValueWithError, ms: f64) -> Report {
    let absdiff = (lhs.value - rhs.value).norm();
    let bound = lhs.error_bound + rhs.error_bound;
    Report {
        label,
        status: Status::from_bool(absdiff <= bound),
        lhs: format!("{lhs:.12}"),
        rhs: format!("{rhs:.12}"),
        absdiff: Some(absdiff),
        bound: Some(bound),
        ms,
        detail: (absdiff > bound).then(|| format!("disagreement {absdiff:.3e} exceeds combined bound {bound:.3e}")),
        checks: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_pairs_deduplicate() {
        assert_eq!(color_pairs(&[1, 2]).unwrap().len(), 4);
        assert_eq!(color_pairs(&[2, 4]).unwrap().len(), 16);
        assert_eq!(color_pairs(&[1, 2, 3, 4]).unwrap().len(), 36);
        assert!(color_pairs(&[]).is_err());
    }

    #[test]
    fn small_grid_passes() {
        let cfg = EvalConfig::default().with_oracle_cutoff(2000).with_tolerance(1e-8);
        let reports = cross_check_grid(4, &[4], &cfg).unwrap();
        assert_eq!(reports.len(), MtIndex::enumerate(4).len() * 16);
        for r in &reports {
            assert!(r.passed(), "{} {:?}", r.label, r.detail);
        }
        assert!(reports.iter().any(|r| r.label.contains("[1/4,")));
    }

    #[test]
    fn rejects_bad_arguments() {
        let cfg = EvalConfig::default();
        assert!(cross_check_grid(2, &[1], &cfg).is_err());
        assert!(cross_check_grid(4, &[0], &cfg).is_err());
    }
}
