//! Exact rewriting of a colored Tornheim double series as an integer
//! combination of double polylogarithm values.
//!
//! Subscript convention: `Li_{s,t}(x, y) = Σ_{m>n≥1} x^m y^n / (m^s n^t)`.
//! The first exponent and the first argument belong to the *outer* (larger)
//! index `m`. Parts of the multiple zeta literature use the reverse order.
//!
//! The rewriting splits `1/(m^p n^q)` with the partial-fraction identity
//!
//! ```text
//! 1/(x^p y^q) = Σ_{a<p} C(q+a-1,a) / (x^{p-a} (x+y)^{q+a})
//!             + Σ_{b<q} C(p+b-1,b) / (y^{q-b} (x+y)^{p+b})
//! ```
//!
//! and substitutes `x = m`, `y = n`, `x + y` as the new outer index:
//!
//! ```text
//! ζ_MT(p,q,r; α,β) = Σ_{a<p} C(q+a-1,a) Li_{r+q+a, p-a}(αβ, α⁻¹)
//!                  + Σ_{b<q} C(p+b-1,b) Li_{r+p+b, q-b}(β, α)
//! ```
//!
//! With `p = 0` or `q = 0` the same loops collapse to a single term because of
//! the falling-factorial binomial convention (`C(-1,0) = 1`, `C(b-1,b) = 0`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{binomial, MtIndex, RootOfUnity};
use crate::error::{Error, Result};

/// One term `coeff · Li_{s,t}(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LiTerm {
    pub coeff: u64,
    pub s: u32,
    pub t: u32,
    pub x: RootOfUnity,
    pub y: RootOfUnity,
}

impl LiTerm {
    pub fn new(coeff: u64, s: u32, t: u32, x: RootOfUnity, y: RootOfUnity) -> Result<Self> {
        if s < 2 {
            return Err(Error::InvalidExponents { s, t, constraint: "s>=2" });
        }
        if t < 1 {
            return Err(Error::InvalidExponents { s, t, constraint: "t>=1" });
        }
        Ok(LiTerm { coeff, s, t, x, y })
    }

    pub fn weight(&self) -> u32 {
        self.s + self.t
    }

    pub(crate) fn key(&self) -> (u32, u32, RootOfUnity, RootOfUnity) {
        (self.s, self.t, self.x, self.y)
    }
}

impl fmt::Display for LiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff != 1 {
            write!(f, "{}*", self.coeff)?;
        }
        write!(f, "Li[{},{}]({},{})", self.s, self.t, self.x, self.y)
    }
}

/// Right-hand side of the decomposition for one `(index, α, β)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub index: MtIndex,
    pub alpha: RootOfUnity,
    pub beta: RootOfUnity,
    terms: Vec<LiTerm>,
}

impl Decomposition {
    pub fn terms(&self) -> &[LiTerm] {
        &self.terms
    }

    /// Assemble from explicit terms (merging repeats); used for re-parsed
    /// output and tests.
    pub fn from_terms(
        index: MtIndex,
        alpha: RootOfUnity,
        beta: RootOfUnity,
        terms: impl IntoIterator<Item = LiTerm>,
    ) -> Self {
        let mut d = Decomposition { index, alpha, beta, terms: Vec::new() };
        for term in terms {
            d.push(term);
        }
        d
    }

    fn push(&mut self, term: LiTerm) {
        if term.coeff == 0 {
            return;
        }
        match self.terms.iter_mut().find(|t| t.key() == term.key()) {
            Some(existing) => existing.coeff += term.coeff,
            None => self.terms.push(term),
        }
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.terms.iter().map(|t| t.coeff).sum()
    }

    /// Structured form: `{"terms":[{"coeff":1,"s":3,"t":2,"x":"1/2","y":"1/2"}, ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "terms": self.terms })
    }

    pub fn terms_from_json(text: &str) -> Result<Vec<LiTerm>> {
        #[derive(Deserialize)]
        struct Wire {
            terms: Vec<LiTerm>,
        }
        let wire: Wire = serde_json::from_str(text)
            .map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
        wire.terms
            .into_iter()
            .map(|t| LiTerm::new(t.coeff, t.s, t.t, t.x, t.y))
            .collect()
    }
}

impl fmt::Display for Decomposition {
    /// Canonical text form, e.g. `Li[4,1](-1,-1) + Li[4,1](1,-1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join_terms(f, &self.terms)
    }
}

fn join_terms<T: fmt::Display>(f: &mut fmt::Formatter<'_>, terms: &[T]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(" + ")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

/// Which variable carries the power that is not a power of `x + y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    X,
    Y,
}

/// `coeff / (carrier^carrier_exp · (x+y)^sum_exp)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FractionTerm {
    pub coeff: u64,
    pub carrier: Carrier,
    pub carrier_exp: u32,
    pub sum_exp: u32,
}

impl FractionTerm {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let base = match self.carrier {
            Carrier::X => x,
            Carrier::Y => y,
        };
        self.coeff as f64 / (base.powi(self.carrier_exp as i32) * (x + y).powi(self.sum_exp as i32))
    }
}

/// The `p + q` terms splitting `1/(x^p y^q)`, `x`-family first.
pub fn partial_fraction(p: u32, q: u32) -> Result<Vec<FractionTerm>> {
    if p == 0 || q == 0 {
        return Err(Error::PartialFractionDomain { p, q });
    }
    let mut out = Vec::with_capacity((p + q) as usize);
    for a in 0..p {
        out.push(FractionTerm {
            coeff: binomial(i64::from(q + a) - 1, u64::from(a))?,
            carrier: Carrier::X,
            carrier_exp: p - a,
            sum_exp: q + a,
        });
    }
    for b in 0..q {
        out.push(FractionTerm {
            coeff: binomial(i64::from(p + b) - 1, u64::from(b))?,
            carrier: Carrier::Y,
            carrier_exp: q - b,
            sum_exp: p + b,
        });
    }
    Ok(out)
}

/// Exact decomposition of `ζ_MT(p,q,r; α, β)`.
pub fn decompose(idx: MtIndex, alpha: RootOfUnity, beta: RootOfUnity) -> Decomposition {
    let (p, q, r) = (idx.p(), idx.q(), idx.r());
    let first_args = (alpha.mul(beta), alpha.inv());
    let mut d = Decomposition { index: idx, alpha, beta, terms: Vec::new() };

    for a in 0..p {
        let coeff = binomial(i64::from(q + a) - 1, u64::from(a)).expect("binomial within u64 range");
        push_term(&mut d, coeff, r + q + a, p - a, first_args);
    }
    for b in 0..q {
        let coeff = binomial(i64::from(p + b) - 1, u64::from(b)).expect("binomial within u64 range");
        push_term(&mut d, coeff, r + p + b, q - b, (beta, alpha));
    }
    d
}

fn push_term(d: &mut Decomposition, coeff: u64, s: u32, t: u32, (x, y): (RootOfUnity, RootOfUnity)) {
    if coeff == 0 {
        return;
    }
    // s >= 2 follows from p+r > 1 and q+r > 1.
    assert!(s >= 2 && t >= 1, "outer exponent {s} / inner exponent {t} out of range for {}", d.index);
    debug_assert_eq!(s + t, d.index.weight());
    d.push(LiTerm { coeff, s, t, x, y });
}

/// `coeff · ζ(s or s̄, t or t̄)`, an alternating double zeta value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EulerTerm {
    pub coeff: u64,
    pub s: u32,
    pub t: u32,
    pub s_bar: bool,
    pub t_bar: bool,
}

impl EulerTerm {
    fn signed(v: u32, bar: bool) -> String {
        if bar {
            format!("-{v}")
        } else {
            v.to_string()
        }
    }

    /// `z(-4,-1)` style; negative entries mean barred slots.
    pub fn to_signed_string(&self) -> String {
        let body = format!("z({},{})", Self::signed(self.s, self.s_bar), Self::signed(self.t, self.t_bar));
        if self.coeff == 1 {
            body
        } else {
            format!("{}*{body}", self.coeff)
        }
    }

    /// `ζ(4̄,1̄)` style.
    pub fn to_pretty_string(&self) -> String {
        fn slot(v: u32, bar: bool) -> String {
            if !bar {
                return v.to_string();
            }
            v.to_string().chars().flat_map(|c| [c, '\u{0304}']).collect()
        }
        let body = format!("ζ({},{})", slot(self.s, self.s_bar), slot(self.t, self.t_bar));
        if self.coeff == 1 {
            body
        } else {
            format!("{}{body}", self.coeff)
        }
    }

    pub fn to_li(&self) -> LiTerm {
        let arg = |bar| if bar { RootOfUnity::MINUS_ONE } else { RootOfUnity::ONE };
        LiTerm {
            coeff: self.coeff,
            s: self.s,
            t: self.t,
            x: arg(self.s_bar),
            y: arg(self.t_bar),
        }
    }

    pub fn weight(&self) -> u32 {
        self.s + self.t
    }
}

impl fmt::Display for EulerTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_signed_string())
    }
}

impl FromStr for EulerTerm {
    type Err = Error;

    /// Parses `[c*]z(±s,±t)`.
    fn from_str(text: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg} in {text:?}") };
        let t = text.trim();
        let (coeff, rest) = match t.split_once('*') {
            Some((c, rest)) => (c.trim().parse::<u64>().map_err(|_| err("bad coefficient"))?, rest.trim()),
            None => (1, t),
        };
        let inner = rest
            .strip_prefix("z(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err("expected z(s,t)"))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| err("expected two entries"))?;
        let a: i64 = a.trim().parse().map_err(|_| err("bad first entry"))?;
        let b: i64 = b.trim().parse().map_err(|_| err("bad second entry"))?;
        if a.unsigned_abs() < 2 || b == 0 || coeff == 0 {
            return Err(err("need |s|>=2, |t|>=1, coefficient>=1"));
        }
        Ok(EulerTerm {
            coeff,
            s: a.unsigned_abs() as u32,
            t: b.unsigned_abs() as u32,
            s_bar: a < 0,
            t_bar: b < 0,
        })
    }
}

/// Rewrite a decomposition whose arguments are all `±1` in bar notation.
pub fn to_level2(d: &Decomposition) -> Result<Vec<EulerTerm>> {
    d.terms.iter().map(level2_term).collect()
}

fn level2_term(term: &LiTerm) -> Result<EulerTerm> {
    let bar = |root: RootOfUnity| match root.order() {
        1 => Ok(false),
        2 => Ok(true),
        order => Err(Error::NotLevelTwo {
            term: term.to_string(),
            root: root.as_fraction(),
            order,
        }),
    };
    Ok(EulerTerm {
        coeff: term.coeff,
        s: term.s,
        t: term.t,
        s_bar: bar(term.x)?,
        t_bar: bar(term.y)?,
    })
}

/// `R(p,q,r) = Σ (-1)^n / (m^p n^q (m+n)^r)`, i.e. `α = -1, β = 1`.
pub fn r_decomposition(idx: MtIndex) -> Vec<EulerTerm> {
    to_level2(&decompose(idx, RootOfUnity::MINUS_ONE, RootOfUnity::ONE)).expect("±1 arguments")
}

/// `S(p,q,r) = Σ (-1)^{m+n} / (m^p n^q (m+n)^r)`, i.e. `α = 1, β = -1`.
pub fn s_decomposition(idx: MtIndex) -> Vec<EulerTerm> {
    to_level2(&decompose(idx, RootOfUnity::ONE, RootOfUnity::MINUS_ONE)).expect("±1 arguments")
}

/// Signed `z(...)` rendering of a list of bar-notation terms.
pub fn format_level2(terms: &[EulerTerm]) -> String {
    struct Signed<'a>(&'a [EulerTerm]);
    impl fmt::Display for Signed<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            join_terms(f, self.0)
        }
    }
    Signed(terms).to_string()
}

pub fn format_level2_pretty(terms: &[EulerTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms.iter().map(EulerTerm::to_pretty_string).collect::<Vec<_>>().join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ONE: RootOfUnity = RootOfUnity::ONE;
    const NEG: RootOfUnity = RootOfUnity::MINUS_ONE;

    fn idx(p: u32, q: u32, r: u32) -> MtIndex {
        MtIndex::new(p, q, r).unwrap()
    }

    fn li(coeff: u64, s: u32, t: u32, x: RootOfUnity, y: RootOfUnity) -> LiTerm {
        LiTerm::new(coeff, s, t, x, y).unwrap()
    }

    fn z(s: &str) -> EulerTerm {
        s.parse().unwrap()
    }

    #[test]
    fn partial_fraction_shapes() {
        let pf = partial_fraction(1, 1).unwrap();
        assert_eq!(pf.len(), 2);
        assert_eq!((pf[0].carrier, pf[0].carrier_exp, pf[0].sum_exp), (Carrier::X, 1, 1));
        assert_eq!((pf[1].carrier, pf[1].carrier_exp, pf[1].sum_exp), (Carrier::Y, 1, 1));

        let pf = partial_fraction(2, 1).unwrap();
        let shape: Vec<_> = pf.iter().map(|t| (t.coeff, t.carrier, t.carrier_exp, t.sum_exp)).collect();
        assert_eq!(shape, vec![(1, Carrier::X, 2, 1), (1, Carrier::X, 1, 2), (1, Carrier::Y, 1, 2)]);
        let at_ones: f64 = pf.iter().map(|t| t.eval(1.0, 1.0)).sum();
        assert!((at_ones - 1.0).abs() < 1e-15);
        let at_23: f64 = pf.iter().map(|t| t.eval(2.0, 3.0)).sum();
        assert!((at_23 - 1.0 / (4.0 * 3.0)).abs() < 1e-12);

        let pf = partial_fraction(2, 2).unwrap();
        let shape: Vec<_> = pf.iter().map(|t| (t.coeff, t.carrier, t.carrier_exp, t.sum_exp)).collect();
        assert_eq!(
            shape,
            vec![(1, Carrier::X, 2, 2), (2, Carrier::X, 1, 3), (1, Carrier::Y, 2, 2), (2, Carrier::Y, 1, 3)]
        );

        assert!(partial_fraction(0, 3).is_err());
        assert!(partial_fraction(3, 0).is_err());
    }

    #[test]
    fn partial_fraction_identity_on_random_points() {
        // Deterministic LCG points in [0.5, 3].
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            0.5 + 2.5 * ((state >> 11) as f64 / (1u64 << 53) as f64)
        };
        for p in 1..=6 {
            for q in 1..=6 {
                let pf = partial_fraction(p, q).unwrap();
                assert_eq!(pf.len(), (p + q) as usize);
                for _ in 0..20 {
                    let (x, y) = (next(), next());
                    let lhs = 1.0 / (x.powi(p as i32) * y.powi(q as i32));
                    let rhs: f64 = pf.iter().map(|t| t.eval(x, y)).sum();
                    assert!((lhs - rhs).abs() < 1e-12, "p={p} q={q} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn r113_and_r232() {
        let d = decompose(idx(1, 1, 3), NEG, ONE);
        assert_eq!(d.terms(), &[li(1, 4, 1, NEG, NEG), li(1, 4, 1, ONE, NEG)]);
        assert_eq!(d.to_string(), "Li[4,1](-1,-1) + Li[4,1](1,-1)");

        let d = decompose(idx(2, 3, 2), NEG, ONE);
        assert_eq!(
            d.terms(),
            &[
                li(1, 5, 2, NEG, NEG),
                li(3, 6, 1, NEG, NEG),
                li(1, 4, 3, ONE, NEG),
                li(2, 5, 2, ONE, NEG),
                li(3, 6, 1, ONE, NEG),
            ]
        );
    }

    #[test]
    fn collapse_with_p_zero() {
        let i4 = RootOfUnity::new(1, 4).unwrap();
        let w = RootOfUnity::new(1, 3).unwrap();
        let d = decompose(idx(0, 2, 2), i4, w);
        assert_eq!(d.terms(), &[li(1, 2, 2, w, i4)]);
    }

    #[test]
    fn collapse_with_q_zero() {
        let i4 = RootOfUnity::new(1, 4).unwrap();
        let w = RootOfUnity::new(1, 3).unwrap();
        let d = decompose(idx(3, 0, 2), i4, w);
        assert_eq!(d.terms(), &[li(1, 2, 3, i4.mul(w), i4.inv())]);
    }

    #[test]
    fn level2_mapping() {
        let d = Decomposition::from_terms(idx(1, 1, 3), NEG, ONE, [li(1, 4, 1, NEG, NEG)]);
        assert_eq!(to_level2(&d).unwrap(), vec![z("z(-4,-1)")]);
        let d = Decomposition::from_terms(idx(1, 1, 3), NEG, ONE, [li(1, 4, 1, ONE, NEG)]);
        assert_eq!(to_level2(&d).unwrap(), vec![z("z(4,-1)")]);
        let d = Decomposition::from_terms(idx(1, 1, 3), ONE, ONE, [li(1, 3, 2, ONE, ONE)]);
        assert_eq!(to_level2(&d).unwrap(), vec![z("z(3,2)")]);
        assert_eq!(to_level2(&d).unwrap()[0].to_pretty_string(), "ζ(3,2)");
        assert_eq!(z("z(-4,-1)").to_pretty_string(), "ζ(4\u{304},1\u{304})");
    }

    #[test]
    fn level2_rejects_higher_order() {
        let i4 = RootOfUnity::new(1, 4).unwrap();
        let err = to_level2(&decompose(idx(1, 1, 3), i4, ONE)).unwrap_err();
        assert!(err.to_string().contains("order 4"), "{err}");
    }

    #[test]
    fn level2_examples() {
        let fmt = |v: Vec<EulerTerm>| format_level2(&v);
        assert_eq!(fmt(r_decomposition(idx(1, 2, 2))), "z(-4,-1) + z(3,-2) + z(4,-1)");
        assert_eq!(fmt(r_decomposition(idx(2, 1, 2))), "z(-3,-2) + z(-4,-1) + z(4,-1)");
        assert_eq!(fmt(s_decomposition(idx(1, 1, 3))), "2*z(-4,1)");
        assert_eq!(
            fmt(r_decomposition(idx(4, 1, 2))),
            "z(-3,-4) + z(-4,-3) + z(-5,-2) + z(-6,-1) + z(6,-1)"
        );
    }

    #[test]
    fn json_round_trip() {
        let d = decompose(idx(2, 1, 2), NEG, ONE);
        let text = d.to_json().to_string();
        assert!(text.starts_with(r#"{"terms":[{"coeff":1,"s":3,"t":2,"x":"1/2","y":"1/2"}"#), "{text}");
        assert_eq!(Decomposition::terms_from_json(&text).unwrap(), d.terms());
        assert!(Decomposition::terms_from_json(r#"{"terms":[{"coeff":1,"s":1,"t":2,"x":"1/2","y":"1/2"}]}"#).is_err());
    }

    #[test]
    fn euler_term_parse_errors() {
        assert!("z(1,1)".parse::<EulerTerm>().is_err());
        assert!("z(3,0)".parse::<EulerTerm>().is_err());
        assert!("zeta(3,2)".parse::<EulerTerm>().is_err());
        assert_eq!(z("3*z(-6,1)").coeff, 3);
    }

    proptest! {
        #[test]
        fn weight_and_coefficient_sum(p in 1u32..=8, q in 1u32..=8, r in 0u32..=4, ka in 0i64..12, kb in 0i64..12) {
            let Ok(index) = MtIndex::new(p, q, r) else { return Ok(()); };
            let alpha = RootOfUnity::new(ka, 12).unwrap();
            let beta = RootOfUnity::new(kb, 12).unwrap();
            let d = decompose(index, alpha, beta);
            prop_assert!(d.terms().iter().all(|t| t.weight() == p + q + r && t.s >= 2 && t.t >= 1));
            let expected = binomial(i64::from(p + q), u64::from(p)).unwrap();
            prop_assert_eq!(d.coefficient_sum(), expected);
            let mut keys: Vec<_> = d.terms().iter().map(LiTerm::key).collect();
            keys.sort();
            keys.dedup();
            prop_assert_eq!(keys.len(), d.terms().len());
        }
    }
}
