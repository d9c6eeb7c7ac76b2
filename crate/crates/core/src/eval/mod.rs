//! Numerical evaluation with rigorous truncation bounds.
//!
//! Every public routine returns a [`ValueWithError`]: the computed value and
//! an absolute error bound covering all truncation (series tails,
//! Euler–Maclaurin remainders) plus a generous allowance for floating-point
//! round-off.
//!
//! * [`tail_sum`] computes `Σ_{m>n} x^m / m^s` by splitting `m` into residue
//!   classes mod `ord(x)`; each class is a Hurwitz zeta tail evaluated by direct
//!   summation followed by Euler–Maclaurin.
//! * [`eval_li`] sums `Σ_{n≥1} y^n n^{-t} T(s,x,n)` over the inner index. The
//!   tail of that sum is bounded by Abel summation when `x != 1`, and is
//!   expanded asymptotically (and summed with [`tail_sum`]) when `x = 1`.
//! * [`eval_mt_direct`] is the independent ground truth: the defining double
//!   series summed over anti-diagonals `m + n <= cutoff`.

mod bernoulli;
mod direct;
mod kahan;
mod li;
mod tail;

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::decompose::{Decomposition, LiTerm};
use crate::error::{Error, Result};

pub use direct::{direct_tail_bound, eval_mt_direct, DiagonalSums, MtTable};
pub use kahan::{ComplexSum, CompensatedSum};
pub use li::eval_li;
pub use tail::{hurwitz_zeta, tail_sum};

/// Relative allowance for accumulated round-off in compensated sums of
/// individually rounded terms.
pub(crate) const ROUNDING: f64 = 16.0 * f64::EPSILON;

/// A complex value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValueWithError {
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub error_bound: f64,
}

fn ser_complex<S: serde::Serializer>(v: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &v.re)?;
    st.serialize_field("im", &v.im)?;
    st.end()
}

impl ValueWithError {
    pub fn new(value: Complex64, error_bound: f64) -> Result<Self> {
        if !value.re.is_finite() || !value.im.is_finite() || !error_bound.is_finite() || error_bound < 0.0 {
            return Err(Error::NonFinite { context: "ValueWithError" });
        }
        Ok(ValueWithError { value, error_bound })
    }

    pub fn real(value: f64, error_bound: f64) -> Result<Self> {
        Self::new(Complex64::new(value, 0.0), error_bound)
    }

    pub fn zero() -> Self {
        ValueWithError { value: Complex64::new(0.0, 0.0), error_bound: 0.0 }
    }

    /// Whether two values are consistent within their combined bounds.
    pub fn agrees_with(&self, other: &ValueWithError) -> bool {
        (self.value - other.value).norm() <= self.error_bound + other.error_bound
    }
}

impl fmt::Display for ValueWithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(10);
        if self.value.im == 0.0 {
            write!(f, "{:.prec$} ± {:.0e}", self.value.re, self.error_bound)
        } else {
            let sign = if self.value.im < 0.0 { '-' } else { '+' };
            write!(
                f,
                "{:.prec$} {sign} {:.prec$}i ± {:.0e}",
                self.value.re,
                self.value.im.abs(),
                self.error_bound
            )
        }
    }
}

/// Numerical knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalConfig {
    /// Requested absolute error for each double polylogarithm.
    pub tolerance: f64,
    /// Anti-diagonal cutoff `m + n <= cutoff` of the direct double sum.
    pub oracle_cutoff: u64,
    /// Cap on the number of inner-index terms summed explicitly.
    pub max_inner_terms: u64,
    /// Number of Bernoulli correction terms in Euler–Maclaurin tails.
    pub euler_maclaurin_order: u32,
    /// Multiplier applied to every adaptively chosen truncation point.
    pub cutoff_scale: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            tolerance: 1e-10,
            oracle_cutoff: 20_000,
            max_inner_terms: 200_000,
            euler_maclaurin_order: 8,
            cutoff_scale: 1,
        }
    }
}

impl EvalConfig {
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_oracle_cutoff(mut self, cutoff: u64) -> Self {
        self.oracle_cutoff = cutoff;
        self
    }

    /// Same config with every truncation point doubled.
    pub fn doubled(mut self) -> Self {
        self.oracle_cutoff *= 2;
        self.max_inner_terms *= 2;
        self.cutoff_scale *= 2;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.tolerance.is_nan() || self.tolerance < 1e-13 || !self.tolerance.is_finite() {
            return fail(format!("tolerance >= 1e-13 required, got {}", self.tolerance));
        }
        if self.oracle_cutoff < 2 {
            return fail("oracle cutoff >= 2 required".into());
        }
        if self.max_inner_terms == 0 || self.cutoff_scale == 0 {
            return fail("counters must be positive".into());
        }
        let order = self.euler_maclaurin_order;
        if order == 0 || !order.is_multiple_of(2) || order > bernoulli::MAX_ORDER {
            return fail(format!(
                "Euler-Maclaurin order must be even and in 2..={}, got {order}",
                bernoulli::MAX_ORDER
            ));
        }
        Ok(())
    }
}

/// `ζ(s)` for integer `s >= 2`.
pub fn zeta_const(s: u32, cfg: &EvalConfig) -> Result<ValueWithError> {
    tail_sum(s, crate::algebra::RootOfUnity::ONE, 0, cfg)
}

/// π, to within one rounding.
pub fn pi_const() -> ValueWithError {
    ValueWithError { value: Complex64::new(std::f64::consts::PI, 0.0), error_bound: 2e-16 }
}

/// Evaluates every term of a decomposition (in parallel) and combines them in
/// term order.
pub fn eval_decomposition(d: &Decomposition, cfg: &EvalConfig) -> Result<ValueWithError> {
    let values = d
        .terms()
        .par_iter()
        .map(|term| eval_li(term.s, term.t, term.x, term.y, cfg))
        .collect::<Result<Vec<_>>>()?;
    combine_terms(d.terms(), &values)
}

/// `Σ coeff_i · value_i`, summed in the given order.
pub fn combine_terms(terms: &[LiTerm], values: &[ValueWithError]) -> Result<ValueWithError> {
    assert_eq!(terms.len(), values.len());
    let mut sum = ComplexSum::new();
    let mut bound = 0.0;
    let mut magnitude = 0.0;
    for (term, v) in terms.iter().zip(values) {
        let c = term.coeff as f64;
        sum.add(v.value * c);
        bound += c * v.error_bound;
        magnitude += c * v.value.norm();
    }
    ValueWithError::new(sum.total(), bound + ROUNDING * magnitude)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(EvalConfig::default().validate().is_ok());
        assert!(EvalConfig::default().with_tolerance(1e-14).validate().is_err());
        assert!(EvalConfig::default().with_tolerance(f64::NAN).validate().is_err());
        let mut cfg = EvalConfig::default();
        cfg.euler_maclaurin_order = 7;
        assert!(cfg.validate().is_err());
        cfg.euler_maclaurin_order = 18;
        assert!(cfg.validate().is_err());
        cfg.euler_maclaurin_order = 16;
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn value_with_error_rejects_non_finite() {
        assert!(ValueWithError::real(f64::NAN, 0.0).is_err());
        assert!(ValueWithError::real(1.0, f64::INFINITY).is_err());
        assert!(ValueWithError::real(1.0, -1.0).is_err());
        assert!(ValueWithError::new(Complex64::new(0.0, f64::INFINITY), 0.0).is_err());
    }

    #[test]
    fn empty_decomposition_is_zero() {
        let v = combine_terms(&[], &[]).unwrap();
        assert_eq!(v, ValueWithError::zero());
    }

    #[test]
    fn zeta_constants() {
        let cfg = EvalConfig::default();
        for (s, expected) in [(2, 1.6449340668482264), (3, 1.2020569031595943), (5, 1.0369277551433699)] {
            let z = zeta_const(s, &cfg).unwrap();
            assert!((z.value.re - expected).abs() < 1e-12, "s={s} {}", z.value.re);
            assert!(z.error_bound < 1e-12);
            assert_eq!(z.value.im, 0.0);
        }
        assert!((pi_const().value.re - std::f64::consts::PI).abs() <= pi_const().error_bound);
    }
}
