//! The closed-form expression language used by fixtures and configs.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := [rational] factor* ('⊗'|'(x)') factor* [('⊗'|'(x)') factor*]
//! factor   := genname ['^' int] | 'esig(' rational ')' | 'xi' ['^' int] | '1'
//! rational := int ['/' posint]
//! ```
//!
//! A term without a tensor sign has arity 1. `esig(q)` stands for
//! `e^{q sigma}` in the ambient jordanian context.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::pbw::{Series, Tensor, Uea};
use crate::rat::Rat;
use crate::twist::SigmaContext;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Gen { name: String, power: u32 },
    Esig(Rat),
}

/// One term: `coeff * xi^xi * slot_1 (x) ... (x) slot_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rat,
    pub xi: u32,
    pub slots: Vec<Vec<Factor>>,
}

impl Term {
    /// Total weight of the generator factors, ignoring `esig`.
    pub fn weight(&self, alg: &LieAlgebra, weights: &[i64]) -> Result<i64> {
        let mut w = 0;
        for f in self.slots.iter().flatten() {
            if let Factor::Gen { name, power } = f {
                let x = alg.resolve(name)?;
                let Some(wx) = weights_of(&x, weights) else {
                    return Err(Error::Config(format!("generator {name} is not weight-homogeneous")));
                };
                w += wx * *power as i64;
            }
        }
        Ok(w)
    }
}

fn weights_of(x: &crate::lie::LieElement, weights: &[i64]) -> Option<i64> {
    let mut it = x.iter().map(|(i, _)| weights[i]);
    let first = it.next()?;
    it.all(|v| v == first).then_some(first)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl Expr {
    pub fn arity(&self) -> usize {
        self.terms.first().map_or(1, |t| t.slots.len())
    }

    /// Checks every generator name against an algebra.
    pub fn validate(&self, alg: &LieAlgebra) -> Result<()> {
        for f in self.terms.iter().flat_map(|t| t.slots.iter().flatten()) {
            if let Factor::Gen { name, .. } = f {
                alg.resolve(name)?;
            }
        }
        Ok(())
    }

    pub fn uses_sigma(&self) -> bool {
        self.terms.iter().flat_map(|t| t.slots.iter().flatten()).any(|f| matches!(f, Factor::Esig(_)))
    }

    /// Expands to a series truncated at `order`.
    pub fn evaluate(&self, uea: &Uea, sigma: Option<&SigmaContext>, order: usize) -> Result<Series> {
        let alg = uea.algebra();
        let d = uea.dim();
        let mut out = Series::zero(self.arity(), d, order);
        for term in &self.terms {
            if term.xi as usize > order {
                continue;
            }
            let mut acc = Series::constant(Tensor::scalar(0, d, term.coeff.clone()), order);
            for slot in &term.slots {
                let mut s = Series::unit(1, d, order);
                for f in slot {
                    let fs = match f {
                        Factor::Gen { name, power } => {
                            let x = Series::constant(uea.lie(&alg.resolve(name)?), order);
                            let mut p = Series::unit(1, d, order);
                            for _ in 0..*power {
                                p = uea.series_mul(&p, &x)?;
                            }
                            p
                        }
                        Factor::Esig(q) => sigma.ok_or(Error::NoSigmaContext)?.esig(uea, q, order)?,
                    };
                    s = uea.series_mul(&s, &fs)?;
                }
                acc = acc.tensor(&s);
            }
            out = out.add(&acc.shifted(term.xi as usize));
        }
        Ok(out)
    }
}

/// Parses an expression and checks its generator names.
pub fn parse_expression(text: &str, alg: &LieAlgebra) -> Result<Expr> {
    let e = parse(text)?;
    e.validate(alg)?;
    Ok(e)
}

/// Syntax-only parse.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn peek_tensor(&mut self) -> bool {
        self.skip_ws();
        self.rest().starts_with('⊗') || self.rest().starts_with("(x)")
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Some(s)
    }

    fn int_literal(&mut self) -> Result<u32> {
        let s = self.digits().ok_or_else(|| self.error("expected an integer"))?;
        s.parse().map_err(|_| self.error("integer out of range"))
    }

    /// `int ['/' posint]` with an optional sign.
    fn rational(&mut self) -> Result<Rat> {
        let neg = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        let n = self.digits().ok_or_else(|| self.error("expected a rational"))?;
        let mut r: Rat =
            n.parse::<num_bigint::BigInt>().map(Rat::from_integer).map_err(|_| self.error("bad integer"))?;
        if self.eat("/") {
            let d = self.digits().ok_or_else(|| self.error("expected a denominator"))?;
            let d: num_bigint::BigInt = d.parse().map_err(|_| self.error("bad integer"))?;
            if d.is_zero() {
                return Err(self.error("zero denominator"));
            }
            r /= Rat::from_integer(d);
        }
        Ok(if neg { -r } else { r })
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() => {}
            _ => return None,
        }
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        self.pos += len;
        Some(&rest[..len])
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut sign = Rat::one();
        if self.eat("-") {
            sign = -sign;
        } else {
            self.eat("+");
        }
        loop {
            let mut t = self.term()?;
            t.coeff *= &sign;
            if let Some(first) = terms.first() {
                let first: &Term = first;
                if first.slots.len() != t.slots.len() {
                    return Err(self.error("terms of different arity"));
                }
            }
            terms.push(t);
            self.skip_ws();
            if self.eat("+") {
                sign = Rat::one();
            } else if self.eat("-") {
                sign = -Rat::one();
            } else {
                break;
            }
        }
        Ok(Expr { terms: terms.into_iter().filter(|t| !t.coeff.is_zero()).collect() })
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        let start = self.pos;
        let mut coeff = Rat::one();
        if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            coeff = self.rational()?;
        }
        let mut xi = 0u32;
        let mut slots = vec![Vec::new()];
        loop {
            if self.peek_tensor() {
                if slots.len() == 3 {
                    return Err(self.error("at most three tensor slots"));
                }
                if !self.eat("⊗") {
                    self.eat("(x)");
                }
                slots.push(Vec::new());
                continue;
            }
            self.skip_ws();
            let before = self.pos;
            if self.rest().starts_with('1') && !self.rest()[1..].starts_with(|c: char| c.is_ascii_digit() || c == '/') {
                self.pos += 1;
                continue;
            }
            match self.ident() {
                Some("xi") => {
                    xi += if self.eat("^") { self.int_literal()? } else { 1 };
                }
                Some("esig") => {
                    if !self.eat("(") {
                        return Err(self.error("expected '(' after esig"));
                    }
                    let q = self.rational()?;
                    if !self.eat(")") {
                        return Err(self.error("expected ')'"));
                    }
                    slots.last_mut().unwrap().push(Factor::Esig(q));
                }
                Some(name) => {
                    let power = if self.eat("^") { self.int_literal()? } else { 1 };
                    if power > 0 {
                        slots.last_mut().unwrap().push(Factor::Gen { name: name.to_string(), power });
                    }
                }
                None => {
                    self.pos = before;
                    break;
                }
            }
        }
        if self.pos == start {
            return Err(self.error("expected a term"));
        }
        Ok(Term { coeff, xi, slots })
    }
}

fn write_rat(out: &mut String, r: &Rat) {
    let _ = write!(out, "{r}");
}

/// Canonical text: `(x)` for tensor signs, coefficients first, then `xi`.
pub fn emit(e: &Expr) -> String {
    if e.terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, t) in e.terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        match (n, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut parts: Vec<String> = Vec::new();
        let abs = t.coeff.abs();
        if !abs.is_one() {
            let mut s = String::new();
            write_rat(&mut s, &abs);
            parts.push(s);
        }
        match t.xi {
            0 => {}
            1 => parts.push("xi".into()),
            k => parts.push(format!("xi^{k}")),
        }
        let slots: Vec<String> = t
            .slots
            .iter()
            .map(|slot| {
                let fs: Vec<String> = slot
                    .iter()
                    .map(|f| match f {
                        Factor::Gen { name, power: 1 } => name.clone(),
                        Factor::Gen { name, power } => format!("{name}^{power}"),
                        Factor::Esig(q) => format!("esig({q})"),
                    })
                    .collect();
                if fs.is_empty() {
                    "1".into()
                } else {
                    fs.join(" ")
                }
            })
            .collect();
        let body = slots.join(" (x) ");
        if parts.is_empty() {
            out.push_str(&body);
        } else if body == "1" && t.slots.len() == 1 {
            out.push_str(&parts.join(" "));
        } else {
            out.push_str(&parts.join(" "));
            out.push(' ');
            out.push_str(&body);
        }
    }
    out
}
