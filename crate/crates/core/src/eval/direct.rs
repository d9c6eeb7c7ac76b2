//! Direct summation of `Σ_{m,n≥1} α^n β^{m+n} / (m^p n^q (m+n)^r)`.
//!
//! Terms are grouped by anti-diagonal `N = m + n` and summed for `N <= M`.
//! On each diagonal the positive weights `(N-n)^{-p} n^{-q}` are accumulated
//! per residue class of `n` modulo a fixed modulus `L`, and the diagonal total
//! is accumulated per residue class of `N`. The result is an `L × L` table of
//! color-free positive sums; any pair of colors whose orders divide `L` is then
//! a finite combination of table cells. This lets one pass over the diagonals
//! serve every color pair and every `r` at once.
//!
//! Truncation bound (`u, v ∈ {p, q}`): split each diagonal at `n = N/2`. On the
//! half where the `u`-variable is at least `N/2`,
//!
//! ```text
//! Σ_{n} (N-n)^{-u} n^{-v} <= (2/N)^u · A_v(N/2),
//! A_0(x) = x,   A_1(x) = 1 + ln x,   A_v(x) <= 1 + 2^{-v} + 2^{1-v}/(v-1),
//! ```
//!
//! and the remaining `Σ_{N>M} N^{-r-u} (...)` is bounded by the integral of the
//! (decreasing) continuous summand over `[M, ∞)`. The bound ignores colors, so
//! it holds for every `α, β` on the unit circle.

use num_integer::Integer;

use super::kahan::{ComplexSum, CompensatedSum};
use super::{EvalConfig, ValueWithError, ROUNDING};
use crate::algebra::{MtIndex, RootOfUnity};
use crate::error::{Error, Result};

/// Residue-class table of the truncated double series for one `(p, q, r)`.
#[derive(Debug, Clone)]
pub struct MtTable {
    index: MtIndex,
    modulus: u64,
    cutoff: u64,
    /// `cells[e * L + c] = Σ_{N ≡ e, n ≡ c} N^{-r} (N-n)^{-p} n^{-q}`.
    cells: Vec<f64>,
    magnitude: f64,
}

impl MtTable {
    pub fn index(&self) -> MtIndex {
        self.index
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The truncated series for colors `(α, β)`; both orders must divide the
    /// table modulus.
    pub fn evaluate(&self, alpha: RootOfUnity, beta: RootOfUnity) -> Result<ValueWithError> {
        let l = self.modulus;
        for root in [alpha, beta] {
            if !l.is_multiple_of(root.order()) {
                return Err(Error::ModulusMismatch { root: root.as_fraction(), modulus: l });
            }
        }
        let alpha_pow = alpha.power_table();
        let beta_pow = beta.power_table();
        let mut sum = ComplexSum::new();
        for e in 0..l {
            let be = beta_pow[(e % beta.order()) as usize];
            let mut row = ComplexSum::new();
            for c in 0..l {
                let cell = self.cells[(e * l + c) as usize];
                row.add(alpha_pow[(c % alpha.order()) as usize] * cell);
            }
            sum.add(be * row.total());
        }
        let bound = direct_tail_bound(self.index, self.cutoff) + ROUNDING * self.magnitude;
        ValueWithError::new(sum.total(), bound)
    }
}

/// One pass over all diagonals `2 <= N <= cutoff` for fixed `(p, q)`, producing
/// a table for every requested `r`.
pub struct DiagonalSums;

impl DiagonalSums {
    pub fn tables(p: u32, q: u32, rs: &[u32], modulus: u64, cutoff: u64) -> Result<Vec<MtTable>> {
        let indices = rs.iter().map(|&r| MtIndex::new(p, q, r)).collect::<Result<Vec<_>>>()?;
        if modulus == 0 || cutoff < 2 {
            return Err(Error::InvalidConfig("modulus >= 1 and cutoff >= 2 required".into()));
        }
        let l = modulus as usize;
        let m = cutoff as usize;
        let inv_pow = |e: u32| -> Vec<f64> {
            (0..=m).map(|k| if k == 0 { 0.0 } else { (k as f64).powi(-(e as i32)) }).collect()
        };
        let outer = inv_pow(p);
        let inner = inv_pow(q);

        let mut cells = vec![vec![CompensatedSum::new(); l * l]; rs.len()];
        let mut class = vec![CompensatedSum::new(); l];
        for n_total in 2..=m {
            class.iter_mut().for_each(|c| *c = CompensatedSum::new());
            let mut c = 1 % l;
            for n in 1..n_total {
                class[c].add(outer[n_total - n] * inner[n]);
                c += 1;
                if c == l {
                    c = 0;
                }
            }
            let e = n_total % l;
            for (k, &r) in rs.iter().enumerate() {
                let weight = (n_total as f64).powi(-(r as i32));
                let row = &mut cells[k][e * l..(e + 1) * l];
                for (cell, acc) in row.iter_mut().zip(&class) {
                    cell.add(weight * acc.total());
                }
            }
        }

        Ok(indices
            .into_iter()
            .zip(cells)
            .map(|(index, acc)| {
                let cells: Vec<f64> = acc.iter().map(CompensatedSum::total).collect();
                let magnitude = cells.iter().sum();
                MtTable { index, modulus, cutoff, cells, magnitude }
            })
            .collect())
    }
}

/// `ζ_MT(p,q,r; α, β)` by direct summation over `m + n <= cfg.oracle_cutoff`.
pub fn eval_mt_direct(
    idx: MtIndex,
    alpha: RootOfUnity,
    beta: RootOfUnity,
    cfg: &EvalConfig,
) -> Result<ValueWithError> {
    cfg.validate()?;
    let modulus = alpha.order().lcm(&beta.order());
    let tables = DiagonalSums::tables(idx.p(), idx.q(), &[idx.r()], modulus, cfg.oracle_cutoff)?;
    tables[0].evaluate(alpha, beta)
}

/// Upper bound on `Σ_{m+n>M} 1/(m^p n^q (m+n)^r)`.
pub fn direct_tail_bound(idx: MtIndex, cutoff: u64) -> f64 {
    let (p, q, r) = (idx.p(), idx.q(), idx.r());
    half_bound(p, q, r, cutoff) + half_bound(q, p, r, cutoff)
}

/// `Σ_{N>M} N^{-r} (2/N)^u A_v(N/2)`.
fn half_bound(u: u32, v: u32, r: u32, cutoff: u64) -> f64 {
    let m = cutoff as f64;
    let scale = 2f64.powi(u as i32);
    let e = f64::from(r + u);
    // ∫_M^∞ x^{-e} dx
    let power = |e: f64| m.powf(1.0 - e) / (e - 1.0);
    match v {
        0 => 0.5 * scale * power(e - 1.0),
        1 => {
            // ∫_M^∞ x^{-e} (1 - ln 2 + ln x) dx
            let a = 1.0 - std::f64::consts::LN_2;
            scale * m.powf(1.0 - e) * ((a + m.ln()) / (e - 1.0) + 1.0 / ((e - 1.0) * (e - 1.0)))
        }
        v => {
            let zeta_bound = 1.0 + 2f64.powi(-(v as i32)) + 2f64.powi(1 - v as i32) / f64::from(v - 1);
            scale * zeta_bound * power(e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn idx(p: u32, q: u32, r: u32) -> MtIndex {
        MtIndex::new(p, q, r).unwrap()
    }

    /// Double loop over `m, n` with `m + n <= cutoff`.
    fn naive(index: MtIndex, alpha: RootOfUnity, beta: RootOfUnity, cutoff: u64) -> Complex64 {
        let mut acc = ComplexSum::new();
        for m in 1..cutoff {
            for n in 1..=(cutoff - m) {
                let w = (m as f64).powi(-(index.p() as i32))
                    * (n as f64).powi(-(index.q() as i32))
                    * ((m + n) as f64).powi(-(index.r() as i32));
                acc.add(alpha.pow(n).value() * beta.pow(m + n).value() * w);
            }
        }
        acc.total()
    }

    #[test]
    fn table_matches_naive_double_loop() {
        let i4 = RootOfUnity::new(1, 4).unwrap();
        let w = RootOfUnity::new(1, 3).unwrap();
        for (index, a, b) in [
            (idx(2, 1, 2), RootOfUnity::MINUS_ONE, RootOfUnity::ONE),
            (idx(1, 1, 1), i4, w),
            (idx(0, 2, 2), w, i4),
            (idx(3, 0, 2), i4.inv(), RootOfUnity::MINUS_ONE),
        ] {
            let cfg = EvalConfig::default().with_oracle_cutoff(300);
            let v = eval_mt_direct(index, a, b, &cfg).unwrap();
            assert!((v.value - naive(index, a, b, 300)).norm() < 1e-13, "{index}");
            // A table with a larger modulus gives the same number.
            let t = DiagonalSums::tables(index.p(), index.q(), &[index.r()], 12, 300).unwrap();
            assert!((t[0].evaluate(a, b).unwrap().value - v.value).norm() < 1e-14);
        }
    }

    #[test]
    fn tail_bound_dominates_measured_tail() {
        // Positive series: the gap between two cutoffs is a partial tail.
        for index in [idx(1, 1, 1), idx(2, 1, 2), idx(0, 2, 2), idx(2, 0, 2), idx(2, 2, 0), idx(1, 0, 2)] {
            let one = RootOfUnity::ONE;
            let lo = eval_mt_direct(index, one, one, &EvalConfig::default().with_oracle_cutoff(200)).unwrap();
            let hi = eval_mt_direct(index, one, one, &EvalConfig::default().with_oracle_cutoff(4000)).unwrap();
            let gap = hi.value.re - lo.value.re;
            assert!(gap > 0.0 && gap <= direct_tail_bound(index, 200), "{index}: {gap}");
        }
    }

    #[test]
    fn modulus_mismatch_is_rejected() {
        let t = DiagonalSums::tables(1, 1, &[1], 2, 50).unwrap();
        let w = RootOfUnity::new(1, 3).unwrap();
        assert!(matches!(t[0].evaluate(w, RootOfUnity::ONE), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn one_pass_serves_several_r() {
        let tables = DiagonalSums::tables(1, 2, &[1, 2, 3], 4, 500).unwrap();
        for t in &tables {
            let single = DiagonalSums::tables(1, 2, &[t.index().r()], 4, 500).unwrap();
            assert_eq!(single[0].cells, t.cells);
        }
        assert!(DiagonalSums::tables(1, 0, &[1], 4, 500).is_err());
    }
}
