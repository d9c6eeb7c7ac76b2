//! Colored Tornheim (Mordell–Tornheim) double series
//!
//! ```text
//! ζ_MT(p,q,r; α,β) = Σ_{m,n≥1} α^n β^{m+n} / (m^p n^q (m+n)^r)
//! ```
//!
//! for roots of unity `α, β`: exact decomposition into double polylogarithm
//! values `Li_{s,t}(x,y)` at roots of unity, error-bounded numerics for both
//! sides, and a verification harness.

pub mod algebra;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod eval;
pub mod verify;

pub use algebra::{binomial, MtIndex, Rational, RootOfUnity};
pub use decompose::{
    decompose, partial_fraction, r_decomposition, s_decomposition, to_level2, Decomposition, EulerTerm, LiTerm,
};
pub use error::{Error, Result};
pub use eval::{eval_decomposition, eval_li, eval_mt_direct, tail_sum, EvalConfig, ValueWithError};
