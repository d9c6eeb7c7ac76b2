use num_complex::Complex64;

use super::bernoulli::em_coefficient;
use super::kahan::ComplexSum;
use super::tail::tail_parts;
use super::{EvalConfig, ValueWithError, ROUNDING};
use crate::algebra::RootOfUnity;
use crate::error::{Error, Result};

/// `Li_{s,t}(x, y) = Σ_{m>n≥1} x^m y^n / (m^s n^t)` with `s >= 2`, `t >= 1`.
///
/// Summed over the inner index: `Σ_{n≥1} y^n n^{-t} T(s,x,n)` where
/// `T(s,x,n) = Σ_{m>n} x^m m^{-s}`. The first `K` terms are summed
/// explicitly, with `T` obtained by backward recurrence from `T(s,x,K)`.
///
/// Tail `n > K`:
/// * `x != 1`: `T(s,x,n) = x^n G(n)` with `|G(n)| <= C_x (n+1)^{-s}` by Abel
///   summation (`C_x = 1/|sin(π k/N)|`), so the tail is at most
///   `C_x K^{1-w}/(w-1)` when `xy = 1` and `C_{xy} C_x K^{-w}` otherwise.
/// * `x = 1`: `T(s,1,n)` is replaced by its Euler–Maclaurin expansion in
///   `1/n`; each resulting single sum `Σ_{n>K} y^n n^{-e}` is a [`tail_sum`]
///   and the expansion remainder is bounded by its first omitted term.
///
/// [`tail_sum`]: super::tail_sum
pub fn eval_li(s: u32, t: u32, x: RootOfUnity, y: RootOfUnity, cfg: &EvalConfig) -> Result<ValueWithError> {
    cfg.validate()?;
    if s < 2 {
        return Err(Error::InvalidExponents { s, t, constraint: "s>=2" });
    }
    if t < 1 {
        return Err(Error::InvalidExponents { s, t, constraint: "t>=1" });
    }
    let w = s + t;
    let tol = cfg.tolerance;
    let scale = u64::from(cfg.cutoff_scale);

    let (cut, tail, tail_bound) = if x.is_one() {
        let order = cfg.euler_maclaurin_order;
        let c_next = em_coefficient(s, order + 1).abs();
        let e = f64::from(w + 2 * order);
        let remainder = |k: u64| c_next * (k as f64).powf(-e) / e;
        let mut cut = 8u64;
        while remainder(cut) > tol / 8.0 {
            cut *= 2;
        }
        let cut = cut * scale;
        let (tail, bound) = unit_outer_tail(s, t, y, cut, cfg);
        (cut, tail, bound + remainder(cut))
    } else {
        let cx = x.partial_sum_bound();
        let z = x.mul(y);
        let target = tol / 4.0;
        let (needed, truncation): (f64, Box<dyn Fn(u64) -> f64>) = if z.is_one() {
            let wm1 = f64::from(w - 1);
            (
                (cx / (wm1 * target)).powf(1.0 / wm1),
                Box::new(move |k| cx * (k as f64).powf(-wm1) / wm1),
            )
        } else {
            let cz = z.partial_sum_bound();
            let wf = f64::from(w);
            ((cz * cx / target).powf(1.0 / wf), Box::new(move |k| cz * cx * (k as f64).powf(-wf)))
        };
        let cut = (needed.ceil().max(1.0) as u64).saturating_mul(scale).min(cfg.max_inner_terms);
        (cut, Complex64::new(0.0, 0.0), truncation(cut))
    };

    let (head, head_bound) = inner_head(s, t, x, y, cut, cfg);
    ValueWithError::new(head + tail, head_bound + tail_bound)
}

/// `Σ_{n=1}^{cut} y^n n^{-t} T(s,x,n)` and its error bound.
fn inner_head(s: u32, t: u32, x: RootOfUnity, y: RootOfUnity, cut: u64, cfg: &EvalConfig) -> (Complex64, f64) {
    let (t_cut, t_cut_bound, t_cut_magnitude) = tail_parts(s, x, cut, cfg);
    let xs = x.power_table();
    let ys = y.power_table();
    let (nx, ny) = (x.order(), y.order());

    let mut outer = ComplexSum::new();
    let mut tail = ComplexSum::new();
    tail.add(t_cut);
    // Running bound on Σ_{m>n} m^{-s}, for the round-off allowance.
    let mut tail_magnitude = t_cut_magnitude;
    let mut weight_sum = 0.0;
    let mut magnitude = 0.0;
    for n in (1..=cut).rev() {
        let nf = n as f64;
        let inner_weight = nf.powi(-(t as i32));
        let current = tail.total();
        outer.add(ys[(n % ny) as usize] * (current * inner_weight));
        weight_sum += inner_weight;
        magnitude += inner_weight * tail_magnitude;
        let outer_weight = nf.powi(-(s as i32));
        tail.add(xs[(n % nx) as usize] * outer_weight);
        tail_magnitude += outer_weight;
    }
    // An error e in T(s,x,cut) shifts every T(s,x,n), n <= cut, by e.
    let bound = t_cut_bound * weight_sum + ROUNDING * magnitude;
    (outer.total(), bound)
}

/// Tail `Σ_{n>cut} y^n n^{-t} T(s,1,n)` via
/// `T(s,1,n) ≈ n^{1-s}/(s-1) - n^{-s}/2 + Σ_k c_k n^{-s-2k+1}`.
fn unit_outer_tail(s: u32, t: u32, y: RootOfUnity, cut: u64, cfg: &EvalConfig) -> (Complex64, f64) {
    let mut parts: Vec<(u32, f64)> = vec![(s - 1, 1.0 / f64::from(s - 1)), (s, -0.5)];
    for k in 1..=cfg.euler_maclaurin_order {
        parts.push((s + 2 * k - 1, em_coefficient(s, k)));
    }
    let mut sum = ComplexSum::new();
    let mut bound = 0.0;
    // Highest powers are smallest; add them first.
    for &(e, coeff) in parts.iter().rev() {
        let (v, b, m) = tail_parts(t + e, y, cut, cfg);
        sum.add(v * coeff);
        bound += coeff.abs() * (b + ROUNDING * m);
    }
    (sum.total(), bound)
}
