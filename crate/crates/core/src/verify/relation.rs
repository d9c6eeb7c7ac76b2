//! Numeric checks of closed forms such as
//! `107/32*zeta(5) - 5/16*pi^2*zeta(3) == MT(2,1,2;-1,1)`.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! relation := combination "==" target
//! combination := ["+"|"-"] product (("+"|"-") product)*
//! product  := factor ("*" factor)*
//! factor   := integer ["/" integer] | "zeta(" integer ")" | "pi" ["^" integer]
//! target   := "MT(" p "," q "," r ";" root "," root ")"
//!           | "Li(" s "," t ";" root "," root ")"
//! root     := "1" | "-1" | k "/" N
//! ```

use std::time::Instant;

use super::{elapsed_ms, Report, Status};
use crate::algebra::{MtIndex, Rational, RootOfUnity};
use crate::decompose::decompose;
use crate::error::{Error, Result};
use crate::eval::{eval_decomposition, eval_li, pi_const, zeta_const, EvalConfig, ValueWithError, ROUNDING};

pub const DEFAULT_RELATIONS: &str = include_str!("../../data/relations.txt");

/// Absolute floor on the pass threshold of a relation.
const RELATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Zeta(u32),
    /// `π^k`
    Pi(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Mt { index: MtIndex, alpha: RootOfUnity, beta: RootOfUnity },
    Li { s: u32, t: u32, x: RootOfUnity, y: RootOfUnity },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationSpec {
    pub label: String,
    pub terms: Vec<(Rational, Vec<Factor>)>,
    pub target: Target,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos + 1, msg: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected '{token}'"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.err("expected an integer");
        }
        let value = self.rest()[..digits].parse().or_else(|_| self.err("integer too large"))?;
        self.pos += digits;
        Ok(value)
    }

    fn small(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.integer()?;
        u32::try_from(v).or_else(|_| {
            self.pos = start;
            self.err("exponent too large")
        })
    }

    fn combination(&mut self) -> Result<Vec<(Rational, Vec<Factor>)>> {
        let mut terms = Vec::new();
        let mut negative = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        loop {
            let (coeff, factors) = self.product()?;
            terms.push((if negative { -coeff } else { coeff }, factors));
            if self.eat("+") {
                negative = false;
            } else if self.eat("-") {
                negative = true;
            } else {
                return Ok(terms);
            }
        }
    }

    fn product(&mut self) -> Result<(Rational, Vec<Factor>)> {
        let mut coeff = Rational::from_integer(1);
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                let num = self.integer()?;
                let den = if self.eat("/") { self.integer()? } else { 1 };
                if den == 0 {
                    return self.err("zero denominator");
                }
                let (Ok(num), Ok(den)) = (i64::try_from(num), i64::try_from(den)) else {
                    return self.err("coefficient too large");
                };
                coeff *= Rational::new(num, den);
            } else if self.eat("zeta(") {
                let at = self.pos;
                let s = self.small()?;
                if s < 2 {
                    self.pos = at;
                    return self.err("zeta(s) needs s >= 2");
                }
                self.expect(")")?;
                factors.push(Factor::Zeta(s));
            } else if self.eat("pi") {
                let k = if self.eat("^") { self.small()? } else { 1 };
                factors.push(Factor::Pi(k));
            } else {
                return self.err("expected a number, zeta(s) or pi");
            }
            if !self.eat("*") {
                return Ok((coeff, factors));
            }
        }
    }

    fn root(&mut self) -> Result<RootOfUnity> {
        self.skip_ws();
        let len = self.rest().find([',', ')', ';']).unwrap_or(self.rest().len());
        let text = &self.rest()[..len];
        match text.parse::<RootOfUnity>() {
            Ok(root) => {
                self.pos += len;
                Ok(root)
            }
            Err(e) => self.err(e.to_string()),
        }
    }

    fn target(&mut self) -> Result<Target> {
        if self.eat("MT(") {
            let at = self.pos;
            let (p, _, q, _, r) = (self.small()?, self.expect(",")?, self.small()?, self.expect(",")?, self.small()?);
            let index = match MtIndex::new(p, q, r) {
                Ok(i) => i,
                Err(e) => {
                    self.pos = at;
                    return self.err(e.to_string());
                }
            };
            self.expect(";")?;
            let alpha = self.root()?;
            self.expect(",")?;
            let beta = self.root()?;
            self.expect(")")?;
            Ok(Target::Mt { index, alpha, beta })
        } else if self.eat("Li(") {
            let at = self.pos;
            let (s, _, t) = (self.small()?, self.expect(",")?, self.small()?);
            if s < 2 || t < 1 {
                self.pos = at;
                return self.err("Li(s,t;..) needs s >= 2 and t >= 1");
            }
            self.expect(";")?;
            let x = self.root()?;
            self.expect(",")?;
            let y = self.root()?;
            self.expect(")")?;
            Ok(Target::Li { s, t, x, y })
        } else {
            self.err("expected MT(p,q,r;alpha,beta) or Li(s,t;x,y)")
        }
    }
}

/// Parses the constant side on its own, e.g. `45/16*zeta(5) - 1/4*pi^2*zeta(3)`.
pub fn parse_combination(text: &str) -> Result<Vec<(Rational, Vec<Factor>)>> {
    let mut p = Parser::new(text);
    let terms = p.combination()?;
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    Ok(terms)
}

/// Parses one relation line (without comments).
pub fn parse_relation(text: &str) -> Result<RelationSpec> {
    let mut p = Parser::new(text);
    let terms = p.combination()?;
    p.expect("==")?;
    let target = p.target()?;
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    Ok(RelationSpec { label: text.trim().to_string(), terms, target })
}

/// One relation per non-empty line; `#` starts a comment. Errors carry the
/// line number in the message and the column in `pos`.
pub fn parse_relations(text: &str) -> Result<Vec<RelationSpec>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        match parse_relation(line) {
            Ok(spec) => out.push(spec),
            Err(Error::Parse { pos, msg }) => {
                return Err(Error::Parse { pos, msg: format!("line {}: {msg}", lineno + 1) });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn factor_value(f: Factor, cfg: &EvalConfig) -> Result<(f64, f64)> {
    match f {
        Factor::Zeta(s) => {
            let z = zeta_const(s, cfg)?;
            Ok((z.value.re, z.error_bound))
        }
        Factor::Pi(k) => {
            let pi = pi_const();
            let (v, e) = (pi.value.re, pi.error_bound);
            let value = v.powi(k as i32);
            let bound = (v + e).powi(k as i32) - value + ROUNDING * value;
            Ok((value, bound))
        }
    }
}

/// Value of a constant combination with a propagated error bound.
pub fn eval_combination(terms: &[(Rational, Vec<Factor>)], cfg: &EvalConfig) -> Result<ValueWithError> {
    let mut sum = crate::eval::CompensatedSum::new();
    let mut bound = 0.0;
    let mut magnitude = 0.0;
    for (coeff, factors) in terms {
        let (mut value, mut err) = (1.0f64, 0.0f64);
        for &f in factors {
            let (v, e) = factor_value(f, cfg)?;
            err = value.abs() * e + v.abs() * err + err * e;
            value *= v;
        }
        let c = *coeff.numer() as f64 / *coeff.denom() as f64;
        sum.add(c * value);
        bound += c.abs() * err;
        magnitude += (c * value).abs();
    }
    ValueWithError::real(sum.total(), bound + ROUNDING * magnitude)
}

fn eval_target(target: &Target, cfg: &EvalConfig) -> Result<ValueWithError> {
    match *target {
        Target::Mt { index, alpha, beta } => eval_decomposition(&decompose(index, alpha, beta), cfg),
        Target::Li { s, t, x, y } => eval_li(s, t, x, y, cfg),
    }
}

/// Passes iff `|combination - target| < max(1e-8, combined bounds)`.
pub fn check_relation(spec: &RelationSpec, cfg: &EvalConfig) -> Result<Report> {
    let start = Instant::now();
    let lhs = eval_combination(&spec.terms, cfg)?;
    let rhs = eval_target(&spec.target, cfg)?;
    let absdiff = (lhs.value - rhs.value).norm();
    let threshold = RELATION_TOL.max(lhs.error_bound + rhs.error_bound);
    let ok = absdiff < threshold;
    Ok(Report {
        label: spec.label.clone(),
        status: Status::from_bool(ok),
        lhs: format!("{lhs:.12}"),
        rhs: format!("{rhs:.12}"),
        absdiff: Some(absdiff),
        bound: Some(threshold),
        ms: elapsed_ms(start),
        detail: (!ok).then(|| format!("gap {absdiff:.6e} exceeds {threshold:.0e}")),
        checks: Vec::new(),
    })
}
