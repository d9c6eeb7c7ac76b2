use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Tornheim index ({p},{q},{r}): {constraint} required")]
    InvalidIndex {
        p: u32,
        q: u32,
        r: u32,
        constraint: &'static str,
    },

    #[error("binomial({n},{k}) overflows u64")]
    BinomialOverflow { n: i64, k: u64 },

    #[error("binomial({n},{k}) undefined: {reason}")]
    BinomialDomain { n: i64, k: u64, reason: &'static str },

    #[error("partial fraction needs p >= 1 and q >= 1, got p={p}, q={q}")]
    PartialFractionDomain { p: u32, q: u32 },

    #[error("cannot parse root of unity {input:?}: {reason}")]
    RootParse { input: String, reason: String },

    #[error("bar notation needs arguments in {{1,-1}}, but term {term} has argument {root} of order {order}")]
    NotLevelTwo {
        term: String,
        root: String,
        order: u64,
    },

    #[error("invalid polylog exponents s={s}, t={t}: {constraint} required")]
    InvalidExponents { s: u32, t: u32, constraint: &'static str },

    #[error("invalid evaluation config: {0}")]
    InvalidConfig(String),

    #[error("non-finite value produced in {context}")]
    NonFinite { context: &'static str },

    #[error("root {root} has order not dividing table modulus {modulus}")]
    ModulusMismatch { root: String, modulus: u64 },

    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
