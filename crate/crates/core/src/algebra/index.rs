use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Exponent triple `(p, q, r)` of `Σ_{m,n≥1} α^n β^{m+n} / (m^p n^q (m+n)^r)`.
///
/// Construction enforces `p+q > 0`, `p+r > 1`, `q+r > 1`, `p+q+r > 2`, which
/// makes the series absolutely convergent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MtIndex {
    p: u32,
    q: u32,
    r: u32,
}

impl MtIndex {
    pub fn new(p: u32, q: u32, r: u32) -> Result<Self> {
        let fail = |constraint| Err(Error::InvalidIndex { p, q, r, constraint });
        if p + q == 0 {
            return fail("p+q>0");
        }
        if p + r <= 1 {
            return fail("p+r>1");
        }
        if q + r <= 1 {
            return fail("q+r>1");
        }
        if p + q + r <= 2 {
            return fail("p+q+r>2");
        }
        Ok(MtIndex { p, q, r })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn weight(&self) -> u32 {
        self.p + self.q + self.r
    }

    /// All valid indices of weight at most `max_weight`, in lexicographic
    /// `(p, q, r)` order.
    pub fn enumerate(max_weight: u32) -> Vec<MtIndex> {
        let mut out = Vec::new();
        for p in 0..=max_weight {
            for q in 0..=max_weight - p {
                for r in 0..=max_weight - p - q {
                    if let Ok(idx) = MtIndex::new(p, q, r) {
                        out.push(idx);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for MtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_messages() {
        let msg = |p, q, r| MtIndex::new(p, q, r).unwrap_err().to_string();
        assert!(msg(0, 0, 3).contains("p+q>0"));
        assert!(msg(1, 0, 1).contains("q+r>1"));
        assert!(msg(0, 1, 1).contains("p+r>1"));
        // p+q+r>2 follows from the other three; the check stays for clarity.
        assert!(msg(1, 1, 0).contains("p+r>1"));
        assert!(MtIndex::new(1, 1, 1).is_ok());
        assert!(MtIndex::new(0, 2, 2).is_ok());
        assert!(MtIndex::new(2, 2, 0).is_ok());
    }

    #[test]
    fn enumeration_matches_filter() {
        let all = MtIndex::enumerate(6);
        let mut brute = 0;
        for p in 0..=6u32 {
            for q in 0..=6u32 {
                for r in 0..=6u32 {
                    let ok = p + q > 0 && p + r > 1 && q + r > 1 && p + q + r > 2 && p + q + r <= 6;
                    brute += ok as usize;
                }
            }
        }
        assert_eq!(all.len(), brute);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
