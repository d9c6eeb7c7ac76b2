use crate::error::{Error, Result};

/// Binomial coefficient through the falling factorial
/// `n (n-1) ... (n-k+1) / k!`, accepting `n = -1`.
///
/// The convention gives `binomial(-1, 0) = 1` (empty product) and
/// `binomial(m, k) = 0` for `0 <= m < k`, which is what the decomposition
/// needs when one of `p`, `q` is zero. `binomial(-1, k)` for `k >= 1` would be
/// `(-1)^k`; the decomposer never asks for it and it is rejected here since the
/// result type is unsigned.
pub fn binomial(n: i64, k: u64) -> Result<u64> {
    if n < -1 {
        return Err(Error::BinomialDomain { n, k, reason: "n >= -1 required" });
    }
    if k == 0 {
        return Ok(1);
    }
    if n == -1 {
        return Err(Error::BinomialDomain {
            n,
            k,
            reason: "negative result (-1)^k not representable",
        });
    }
    let n = n as u64;
    if n < k {
        return Ok(0);
    }
    let k = k.min(n - k);
    // Multiplicative form: after step i the accumulator is C(n-k+i, i), exact.
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * u128::from(n - k + i) / u128::from(i);
        if acc > u128::from(u64::MAX) {
            return Err(Error::BinomialOverflow { n: n as i64, k });
        }
    }
    Ok(acc as u64)
}
