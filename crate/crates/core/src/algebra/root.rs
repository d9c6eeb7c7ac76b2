use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};

/// An `N`th root of unity `exp(2πi k/N)`, stored exactly.
///
/// The representation is canonical: `gcd(k, N) = 1` and `0 <= k < N`, with the
/// identity stored as `0/1`. Structural equality is therefore equality on the
/// unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { order: 1, exponent: 0 };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity { order: 2, exponent: 1 };

    /// `exp(2πi k/N)`; `k` may be any integer, it is reduced mod `N`.
    pub fn new(exponent: i64, order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::RootParse {
                input: format!("{exponent}/{order}"),
                reason: "order must be positive".into(),
            });
        }
        let k = exponent.rem_euclid(order as i64) as u64;
        Ok(Self::canonical(k, order))
    }

    fn canonical(k: u64, n: u64) -> Self {
        let k = k % n;
        if k == 0 {
            return Self::ONE;
        }
        let g = k.gcd(&n);
        RootOfUnity { order: n / g, exponent: k / g }
    }

    /// Multiplicative order of the root (after reduction).
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: RootOfUnity) -> RootOfUnity {
        let l = self.order.lcm(&other.order);
        let k = (self.exponent * (l / self.order) + other.exponent * (l / other.order)) % l;
        Self::canonical(k, l)
    }

    pub fn inv(self) -> RootOfUnity {
        Self::canonical(self.order - self.exponent, self.order)
    }

    pub fn conj(self) -> RootOfUnity {
        self.inv()
    }

    pub fn pow(self, e: u64) -> RootOfUnity {
        let k = ((u128::from(self.exponent) * u128::from(e)) % u128::from(self.order)) as u64;
        Self::canonical(k, self.order)
    }

    /// Double-precision value. Exact for ±1, ±i; conjugate roots map to
    /// bitwise conjugate values.
    pub fn value(&self) -> Complex64 {
        unit_value(self.exponent, self.order)
    }

    /// `k/N` form, used in structured output.
    pub fn as_fraction(&self) -> String {
        format!("{}/{}", self.exponent, self.order)
    }

    /// Values of `self^j` for `j = 0..order`, each computed from its exact
    /// exponent.
    pub fn power_table(&self) -> Vec<Complex64> {
        (0..self.order)
            .map(|j| unit_value((self.exponent * j) % self.order, self.order))
            .collect()
    }

    /// `sup_n |x + x^2 + ... + x^n| = 1/|sin(πk/N)|` for `x != 1`.
    pub(crate) fn partial_sum_bound(&self) -> f64 {
        debug_assert!(!self.is_one());
        let k = self.exponent.min(self.order - self.exponent) as f64;
        1.0 / (std::f64::consts::PI * k / self.order as f64).sin()
    }
}

fn unit_value(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * k > n {
        return unit_value(n - k, n).conj();
    }
    if 2 * k == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == n {
        return Complex64::new(0.0, 1.0);
    }
    let (s, c) = (2.0 * std::f64::consts::PI * k as f64 / n as f64).sin_cos();
    Complex64::new(c, s)
}

impl fmt::Display for RootOfUnity {
    /// `1` and `-1` print as such, everything else as `k/N`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.exponent, self.order) {
            (0, 1) => f.write_str("1"),
            (1, 2) => f.write_str("-1"),
            (k, n) => write!(f, "{k}/{n}"),
        }
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    /// Accepts `k/N`, `1` and `-1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::RootParse { input: s.to_string(), reason: reason.into() };
        let t = s.trim();
        match t {
            "1" => return Ok(Self::ONE),
            "-1" => return Ok(Self::MINUS_ONE),
            _ => {}
        }
        let (k, n) = t.split_once('/').ok_or_else(|| bad("expected k/N, 1 or -1"))?;
        let k: i64 = k.trim().parse().map_err(|_| bad("exponent k is not an integer"))?;
        let n: u64 = n.trim().parse().map_err(|_| bad("order N is not a positive integer"))?;
        if n == 0 {
            return Err(bad("order N must be positive"));
        }
        Self::new(k, n)
    }
}

impl serde::Serialize for RootOfUnity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.as_fraction())
    }
}

impl<'de> serde::Deserialize<'de> for RootOfUnity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
