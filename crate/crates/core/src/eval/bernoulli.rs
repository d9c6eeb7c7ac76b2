//! Even-index Bernoulli numbers `B_2 .. B_34` as exact fractions.

/// `(numerator, denominator)` of `B_{2k}` for `k = 1..=17`.
const EVEN_BERNOULLI: [(i64, i64); 17] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
    (2577687858367, 6),
];

/// Largest Euler–Maclaurin order usable with the table: the error bound of
/// order `P` needs `B_{2P+2}`.
pub const MAX_ORDER: u32 = EVEN_BERNOULLI.len() as u32 - 1;

pub fn even_bernoulli(k: u32) -> (i64, i64) {
    assert!((1..=EVEN_BERNOULLI.len() as u32).contains(&k), "B_{} not tabulated", 2 * k);
    EVEN_BERNOULLI[k as usize - 1]
}

/// Coefficient `B_{2k}/(2k)! · s(s+1)…(s+2k-2)` of `a^{-s-2k+1}` in the
/// Euler–Maclaurin expansion of `Σ_{i≥0} (a+i)^{-s}`.
pub fn em_coefficient(s: u32, k: u32) -> f64 {
    let (num, den) = even_bernoulli(k);
    let mut c = num as f64 / den as f64;
    // (s)_{2k-1} / (2k)!, interleaved to stay in range.
    for j in 0..(2 * k - 1) {
        c *= f64::from(s + j) / f64::from(j + 1);
    }
    c / f64::from(2 * k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    /// `Σ_{j=0}^{n} C(n+1, j) B_j = 0` for `n >= 1`, solved for `B_n`.
    fn bernoulli_by_recurrence(max: usize) -> Vec<Ratio<i128>> {
        let mut b = vec![Ratio::from_integer(1i128)];
        for n in 1..=max {
            let mut binom = vec![1i128; n + 2];
            for j in 1..=n + 1 {
                binom[j] = binom[j - 1] * (n + 2 - j) as i128 / j as i128;
            }
            let mut acc = Ratio::from_integer(0i128);
            for (j, bj) in b.iter().enumerate() {
                acc += *bj * Ratio::from_integer(binom[j]);
            }
            b.push(-acc / Ratio::from_integer((n + 1) as i128));
        }
        b
    }

    #[test]
    fn table_matches_recurrence() {
        let b = bernoulli_by_recurrence(34);
        for k in 1..=17u32 {
            let (num, den) = even_bernoulli(k);
            assert_eq!(b[2 * k as usize], Ratio::new(num as i128, den as i128), "B_{}", 2 * k);
        }
    }

    #[test]
    fn coefficients_for_trigamma() {
        // ψ'(a) ~ 1/a + 1/(2a²) + 1/(6a³) - 1/(30a⁵) + 1/(42a⁷)
        assert!((em_coefficient(2, 1) - 1.0 / 6.0).abs() < 1e-16);
        assert!((em_coefficient(2, 2) + 1.0 / 30.0).abs() < 1e-16);
        assert!((em_coefficient(2, 3) - 1.0 / 42.0).abs() < 1e-16);
    }
}
