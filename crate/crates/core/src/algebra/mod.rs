//! Exact arithmetic used by the decomposer: roots of unity as modular
//! exponents, Tornheim indices, integer binomials and rationals.

mod binomial;
mod index;
mod root;

pub use binomial::binomial;
pub use index::MtIndex;
pub use root::RootOfUnity;

/// Exact rational coefficients (reduced, positive denominator).
pub type Rational = num_rational::Rational64;
