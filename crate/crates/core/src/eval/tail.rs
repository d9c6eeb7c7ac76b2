use num_complex::Complex64;

use super::bernoulli::em_coefficient;
use super::kahan::{ComplexSum, CompensatedSum};
use super::{EvalConfig, ValueWithError, ROUNDING};
use crate::algebra::RootOfUnity;
use crate::error::{Error, Result};

/// Value, truncation bound and absolute-value sum of one Hurwitz-type series.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Partial {
    pub value: f64,
    pub bound: f64,
    pub magnitude: f64,
}

/// Smallest shift `A` for which the order-`order` Euler–Maclaurin remainder of
/// `Σ_{i≥0} (A+i)^{-s}` is below `1e-17` relative to the leading term.
fn em_threshold(s: u32, order: u32) -> f64 {
    let c = em_coefficient(s, order + 1).abs();
    (c * f64::from(s - 1) * 1e17).powf(1.0 / f64::from(2 * order + 2))
}

/// Euler–Maclaurin for `Σ_{i≥0} (a+i)^{-s}` at a large real `a`. The remainder
/// of a completely monotone summand is bounded by the first omitted term.
fn em_tail(s: u32, a: f64, order: u32) -> Partial {
    let mut sum = CompensatedSum::new();
    let a_pow = a.powi(-(s as i32));
    sum.add(a * a_pow / f64::from(s - 1));
    sum.add(0.5 * a_pow);
    let inv_a2 = 1.0 / (a * a);
    let mut p = a_pow / a;
    let mut magnitude = a * a_pow / f64::from(s - 1) + 0.5 * a_pow;
    for k in 1..=order {
        let term = em_coefficient(s, k) * p;
        sum.add(term);
        magnitude += term.abs();
        p *= inv_a2;
    }
    let bound = em_coefficient(s, order + 1).abs() * p;
    Partial { value: sum.total(), bound, magnitude }
}

/// `Σ_{i≥0} (start + step·i)^{-s}` for integers `start, step >= 1`.
pub(crate) fn residue_series(s: u32, start: u64, step: u64, cfg: &EvalConfig) -> Partial {
    let order = cfg.euler_maclaurin_order;
    let a = start as f64 / step as f64;
    let threshold = em_threshold(s, order);
    let direct = if a >= threshold { 0 } else { (threshold - a).ceil() as u64 };
    let direct = direct * u64::from(cfg.cutoff_scale);

    let mut sum = CompensatedSum::new();
    let mut magnitude = 0.0;
    // Smallest terms first.
    let em = em_tail(s, a + direct as f64, order);
    let step_pow = (step as f64).powi(-(s as i32));
    sum.add(em.value * step_pow);
    for i in (0..direct).rev() {
        let term = ((start + step * i) as f64).powi(-(s as i32));
        sum.add(term);
        magnitude += term;
    }
    Partial {
        value: sum.total(),
        bound: em.bound * step_pow,
        magnitude: magnitude + em.magnitude * step_pow,
    }
}

/// Hurwitz zeta `Σ_{i≥0} (a+i)^{-s}` for real `a > 0` and integer `s >= 2`.
pub fn hurwitz_zeta(s: u32, a: f64, cfg: &EvalConfig) -> Result<ValueWithError> {
    cfg.validate()?;
    if s < 2 {
        return Err(Error::InvalidExponents { s, t: 0, constraint: "s>=2" });
    }
    if a.is_nan() || a <= 0.0 || !a.is_finite() {
        return Err(Error::InvalidConfig(format!("Hurwitz shift must be positive, got {a}")));
    }
    let order = cfg.euler_maclaurin_order;
    let threshold = em_threshold(s, order);
    let direct = if a >= threshold { 0 } else { (threshold - a).ceil() as u64 } * u64::from(cfg.cutoff_scale);
    let em = em_tail(s, a + direct as f64, order);
    let mut sum = CompensatedSum::new();
    sum.add(em.value);
    let mut magnitude = em.magnitude;
    for i in (0..direct).rev() {
        let term = (a + i as f64).powi(-(s as i32));
        sum.add(term);
        magnitude += term;
    }
    ValueWithError::real(sum.total(), em.bound + ROUNDING * magnitude)
}

/// `T(s, x, n) = Σ_{m>n} x^m / m^s` for integer `s >= 2`.
///
/// With `N = ord(x)` the sum splits into the residue classes
/// `m = n + δ + N·i`, `δ = 1..=N`, each a Hurwitz zeta tail:
/// `T = Σ_δ x^{n+δ} Σ_{i≥0} (n + δ + N i)^{-s}`.
pub fn tail_sum(s: u32, x: RootOfUnity, n: u64, cfg: &EvalConfig) -> Result<ValueWithError> {
    cfg.validate()?;
    if s < 2 {
        return Err(Error::InvalidExponents { s, t: 0, constraint: "s>=2" });
    }
    let (value, bound, magnitude) = tail_parts(s, x, n, cfg);
    ValueWithError::new(value, bound + ROUNDING * magnitude)
}

/// Unchecked core of [`tail_sum`]: value, truncation bound, magnitude.
pub(crate) fn tail_parts(s: u32, x: RootOfUnity, n: u64, cfg: &EvalConfig) -> (Complex64, f64, f64) {
    let order = x.order();
    let powers = x.power_table();
    let mut sum = ComplexSum::new();
    let mut bound = 0.0;
    let mut magnitude = 0.0;
    for delta in (1..=order).rev() {
        let start = n + delta;
        let part = residue_series(s, start, order, cfg);
        sum.add(powers[(start % order) as usize] * part.value);
        bound += part.bound;
        magnitude += part.magnitude;
    }
    (sum.total(), bound, magnitude)
}
