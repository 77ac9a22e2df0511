//! Expression syntax for elements.
//!
//! ```text
//! 1 - q2^-1*z3/z2
//! (3*s@1 + z1*z2) / (1 - q1*z1/z2)
//! ```
//!
//! Atoms are integers, `z1`..`z9`, `q1`, `q2` (torus mode) and basis names
//! (surface mode; `s@2` is `s` in tensor slot 2). Operators are `+ - * ^`
//! with the usual precedence, left associative; `^` takes an integer, and a
//! negative power needs a unit monomial. `/` accepts a unit monomial or a
//! binomial `m·(1 - c·z_a/z_b)` with `m`, `c` unit monomials.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::laurent::{BinomialFactor, CoeffRing, Integers, Laurent, LaurentError, ModelRing, RatElem, UnitCoeff};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("column {}: {message}", pos + 1)]
    Syntax { pos: usize, message: String },
    #[error("column {}: divisor is neither a unit monomial nor a binomial 1 - c*z_a/z_b", pos + 1)]
    BadDenominator { pos: usize },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

fn syntax(pos: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax { pos, message: message.into() }
}

type Resolver<E> = Box<dyn Fn(&str, Option<usize>) -> Result<E, String> + Send + Sync>;

/// What the names in an expression mean.
pub struct Symbols<R: CoeffRing> {
    ring: R,
    n_vars: usize,
    n_params: usize,
    resolve: Resolver<R::Elem>,
}

impl<R: CoeffRing> Symbols<R> {
    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }
}

impl<T: Scalar> Symbols<Integers<T>> {
    /// `ℤ[q₁^±, q₂^±]` coefficients; no basis names.
    pub fn torus(n_vars: usize) -> Self {
        Self {
            ring: Integers::new(),
            n_vars,
            n_params: 2,
            resolve: Box::new(|name, _| Err(format!("unknown name `{name}`"))),
        }
    }
}

impl<T: Scalar> Symbols<ModelRing<T>> {
    /// Coefficients in `ring`. For a tensor power, `name@k` is a basis
    /// element of the base ring in slot `k`; otherwise `name` is a basis
    /// element of `ring`.
    pub fn surface(ring: ModelRing<T>, n_vars: usize) -> Self {
        let r = ring.clone();
        let resolve = move |name: &str, slot: Option<usize>| -> Result<Vec<(usize, T)>, String> {
            match r.tensor_factors() {
                Some((base, n)) => {
                    let k = (0..base.rank())
                        .find(|&k| base.basis_name(k) == name)
                        .ok_or_else(|| format!("unknown basis name `{name}`"))?;
                    let slot = match slot {
                        Some(s) if (1..=n).contains(&s) => s - 1,
                        Some(s) => return Err(format!("slot {s} out of range 1..{n}")),
                        None if n == 1 => 0,
                        None => return Err(format!("`{name}` needs a slot, as in `{name}@1`")),
                    };
                    r.place(&[(slot, &[(k, T::one())])]).map_err(|e| e.to_string())
                }
                None => {
                    if slot.is_some() {
                        return Err("slots need a tensor-power model".into());
                    }
                    (0..r.rank())
                        .find(|&k| r.basis_name(k) == name)
                        .map(|k| vec![(k, T::one())])
                        .ok_or_else(|| format!("unknown basis name `{name}`"))
                }
            }
        };
        Self { ring, n_vars, n_params: 0, resolve: Box::new(resolve) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Name(String, Option<usize>),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(text[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = text[start..i].to_string();
            let mut slot = None;
            if i < bytes.len() && bytes[i] == b'@' {
                i += 1;
                let s = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if s == i {
                    return Err(syntax(s, "expected a slot number after `@`"));
                }
                slot = Some(text[s..i].parse().map_err(|_| syntax(s, "slot number too large"))?);
            }
            out.push((start, Tok::Name(name, slot)));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(syntax(i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// The largest `zK` index mentioned, for sizing the variable count.
pub fn max_variable(text: &str) -> usize {
    tokenize(text)
        .unwrap_or_default()
        .iter()
        .filter_map(|(_, t)| match t {
            Tok::Name(n, None) => var_index(n),
            _ => None,
        })
        .max()
        .map_or(0, |v| v + 1)
}

fn var_index(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('z')?;
    match rest.as_bytes() {
        [d @ b'1'..=b'9'] => Some((d - b'1') as usize),
        _ => None,
    }
}

struct Parser<'a, R: CoeffRing> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    sym: &'a Symbols<R>,
}

impl<R: CoeffRing> Parser<'_, R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn zero(&self) -> Laurent<R> {
        Laurent::zero(self.sym.ring.clone(), self.sym.n_vars, self.sym.n_params)
    }

    fn constant(&self, c: R::Elem) -> RatElem<R> {
        RatElem::from_laurent(Laurent::constant(self.sym.ring.clone(), self.sym.n_vars, self.sym.n_params, c))
    }

    fn expr(&mut self) -> Result<RatElem<R>, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatElem<R>, ExprError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.try_mul(&self.factor()?)?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                self.at += 1;
                let pos = self.pos();
                let d = self.factor()?;
                acc = self.divide(&acc, &d, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RatElem<R>, ExprError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        if self.eat('+') {
            return self.factor();
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let neg = self.eat('-');
        let k = match self.toks.get(self.at) {
            Some((_, Tok::Num(k))) => {
                let k = i32::try_from(k).map_err(|_| syntax(pos, "exponent too large"))?;
                self.at += 1;
                if neg {
                    -k
                } else {
                    k
                }
            }
            _ => return Err(syntax(pos, "expected an integer exponent")),
        };
        if k >= 0 {
            let mut acc = self.constant(self.sym.ring.one());
            for _ in 0..k {
                acc = acc.try_mul(&base)?;
            }
            return Ok(acc);
        }
        let inv = base
            .is_laurent()
            .then(|| unit_monomial(base.numerator()))
            .flatten()
            .ok_or_else(|| syntax(pos, "negative powers need a unit monomial"))?;
        let mut acc = self.constant(self.sym.ring.one());
        let inv = RatElem::from_laurent(inv);
        for _ in 0..-k {
            acc = acc.try_mul(&inv)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<RatElem<R>, ExprError> {
        let pos = self.pos();
        let Some((_, tok)) = self.toks.get(self.at).cloned() else {
            return Err(syntax(pos, "unexpected end of expression"));
        };
        self.at += 1;
        match tok {
            Tok::Num(v) => {
                let c = R::Scalar::from_bigint(&v).ok_or_else(|| syntax(pos, "integer out of range"))?;
                Ok(self.constant(self.sym.ring.from_scalar(c)))
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.pos(), "expected `)`"));
                }
                Ok(inner)
            }
            Tok::Op(c) => Err(syntax(pos, format!("unexpected `{c}`"))),
            Tok::Name(name, slot) => {
                let width = self.sym.n_vars + self.sym.n_params;
                if slot.is_none() {
                    if let Some(v) = var_index(&name) {
                        if v >= self.sym.n_vars {
                            return Err(syntax(pos, format!("`{name}` exceeds the {} variables", self.sym.n_vars)));
                        }
                        let mut e = vec![0; width];
                        e[v] = 1;
                        return Ok(self.monomial(e));
                    }
                    if let Some(p) = match name.as_str() {
                        "q1" => Some(0),
                        "q2" => Some(1),
                        _ => None,
                    } {
                        if p >= self.sym.n_params {
                            return Err(syntax(pos, format!("`{name}` is not available for this coefficient ring")));
                        }
                        let mut e = vec![0; width];
                        e[self.sym.n_vars + p] = 1;
                        return Ok(self.monomial(e));
                    }
                }
                let c = (self.sym.resolve)(&name, slot).map_err(|m| syntax(pos, m))?;
                Ok(self.constant(c))
            }
        }
    }

    fn monomial(&self, e: Vec<i32>) -> RatElem<R> {
        let mut x = self.zero();
        x.add_term(e, self.sym.ring.one());
        RatElem::from_laurent(x)
    }

    fn divide(&self, a: &RatElem<R>, d: &RatElem<R>, pos: usize) -> Result<RatElem<R>, ExprError> {
        if !d.is_laurent() {
            return Err(ExprError::BadDenominator { pos });
        }
        let d = d.numerator();
        if let Some(inv) = unit_monomial(d) {
            return Ok(a.mul_laurent(&inv)?);
        }
        let (m_inv, f) = binomial_parts(d).ok_or(ExprError::BadDenominator { pos })?;
        Ok(a.mul_laurent(&m_inv)?.div_binomial(f)?)
    }
}

/// The inverse of a single-term Laurent polynomial with unit coefficient.
fn unit_monomial<R: CoeffRing>(x: &Laurent<R>) -> Option<Laurent<R>> {
    if x.len() != 1 {
        return None;
    }
    let (e, c) = x.terms().next()?;
    let inv = x.ring().invert(c)?;
    let mut out = x.zero_like();
    out.add_term(e.iter().map(|v| -v).collect(), inv);
    Some(out)
}

/// Writes `d = m·(1 - u·z_a/z_b)`; returns `m⁻¹` and the factor. A term
/// with zero z-exponent is preferred as `m`.
fn binomial_parts<R: CoeffRing>(d: &Laurent<R>) -> Option<(Laurent<R>, BinomialFactor<R::Elem>)> {
    if d.len() != 2 {
        return None;
    }
    let n = d.n_vars();
    let ring = d.ring();
    let terms: Vec<(&Vec<i32>, &R::Elem)> = d.terms().collect();
    let mut order = [0usize, 1];
    if terms[1].0[..n].iter().all(|&v| v == 0) {
        order = [1, 0];
    }
    for &mi in &order {
        let (em, cm) = terms[mi];
        let (eo, co) = terms[1 - mi];
        let Some(cm_inv) = ring.invert(cm) else { continue };
        let diff: Vec<i32> = eo.iter().zip(em.iter()).map(|(a, b)| a - b).collect();
        let plus: Vec<usize> = (0..n).filter(|&i| diff[i] == 1).collect();
        let minus: Vec<usize> = (0..n).filter(|&i| diff[i] == -1).collect();
        let support = (0..n).filter(|&i| diff[i] != 0).count();
        if plus.len() != 1 || minus.len() != 1 || support != 2 {
            continue;
        }
        let coeff = ring.neg(&ring.mul(co, &cm_inv));
        let Ok(unit) = UnitCoeff::new(ring, coeff, diff[n..].to_vec()) else { continue };
        let mut m = d.zero_like();
        m.add_term(em.iter().map(|v| -v).collect(), cm_inv);
        let f = BinomialFactor::new(unit, plus[0], minus[0]).ok()?;
        return Some((m, f));
    }
    None
}

/// Parses an expression in `sym.n_vars()` variables.
pub fn parse_expression<R: CoeffRing>(text: &str, sym: &Symbols<R>) -> Result<RatElem<R>, ExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), sym };
    let x = p.expr()?;
    if p.at != p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(x)
}

fn power(name: &str, e: i32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

/// Formats a Laurent polynomial as a sum of terms `c*basis*q^a*z^e`.
pub fn format_laurent<R: CoeffRing>(x: &Laurent<R>) -> String {
    let ring = x.ring();
    let n = x.n_vars();
    let mut out = String::new();
    for (e, c) in x.terms() {
        let mut mono: Vec<String> = Vec::new();
        for (p, &v) in e[n..].iter().enumerate() {
            if v != 0 {
                mono.push(power(&format!("q{}", p + 1), v));
            }
        }
        for (i, &v) in e[..n].iter().enumerate() {
            if v != 0 {
                mono.push(power(&format!("z{}", i + 1), v));
            }
        }
        for (b, v) in ring.coords(c) {
            let mut factors = Vec::new();
            let label = ring.basis_label(b);
            if !label.is_empty() {
                factors.push(label);
            }
            factors.extend(mono.iter().cloned());
            let negative = v.is_negative();
            let abs = v.abs();
            let body = if factors.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                factors.join("*")
            } else {
                format!("{abs}*{}", factors.join("*"))
            };
            if out.is_empty() {
                let _ = write!(out, "{}{body}", if negative { "-" } else { "" });
            } else {
                let _ = write!(out, " {} {body}", if negative { "-" } else { "+" });
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `1 - c·z_a/z_b` in expression syntax.
pub fn format_factor<R: CoeffRing>(f: &BinomialFactor<R::Elem>, ring: &R, n_vars: usize) -> String {
    format_laurent(&Laurent::binomial(ring.clone(), n_vars, f.unit.params.len(), f))
}

/// The canonical text of an element; [`parse_expression`] inverts it.
pub fn format_expression<R: CoeffRing>(x: &RatElem<R>) -> String {
    let num = format_laurent(x.numerator());
    if x.is_laurent() {
        return num;
    }
    let mut out = format!("({num})");
    for f in x.denominator_factors() {
        let _ = write!(out, " / ({})", format_factor(&f, x.numerator().ring(), x.numerator().n_vars()));
    }
    out
}
