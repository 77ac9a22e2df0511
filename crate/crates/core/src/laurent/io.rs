//! Element files.
//!
//! ```text
//! # torus mode: coeff ; z-exponents ; q-exponents
//! 1 ; 0 0 1 ; 0 0
//! -1 ; 0 1 0 ; 1 0
//! denom 1 0 1 ; 2 ; 1
//! ```
//!
//! In surface mode a term is `coord_vector ; z-exponents`, and a denominator
//! is `denom coord_vector ; a ; b`. In torus mode the denominator coefficient
//! is `coeff q1exp q2exp`. Variable indices are 1-based; `#` starts a comment.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use super::poly::Laurent;
use super::rational::{BinomialFactor, RatElem};
use super::ring::CoeffRing;
use super::unit::UnitCoeff;
use super::LaurentError;
use crate::scalar::Scalar;

/// One line of an element file before it is bound to a ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTerm {
    pub coeff: Vec<BigInt>,
    pub z: Vec<i32>,
    pub q: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDenom {
    pub coeff: Vec<BigInt>,
    pub num: usize,
    pub den: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawElement {
    pub terms: Vec<RawTerm>,
    pub denoms: Vec<RawDenom>,
}

fn perr(line: usize, message: impl Into<String>) -> LaurentError {
    LaurentError::Parse { line, message: message.into() }
}

fn parse_list<X: FromStr>(line: usize, text: &str) -> Result<Vec<X>, LaurentError> {
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| perr(line, format!("bad number `{t}`"))))
        .collect()
}

fn parse_index(line: usize, text: &str) -> Result<usize, LaurentError> {
    match text.trim().parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i - 1),
        _ => Err(perr(line, format!("bad variable index `{}`", text.trim()))),
    }
}

impl RawElement {
    pub fn parse(text: &str) -> Result<Self, LaurentError> {
        let mut out = RawElement::default();
        for (idx, raw) in text.lines().enumerate() {
            let ln = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let fields: Vec<&str> = body.split(';').collect();
            if let Some(rest) = body.strip_prefix("denom") {
                let fields: Vec<&str> = rest.split(';').collect();
                if fields.len() != 3 {
                    return Err(perr(ln, "expected `denom c ; a ; b`"));
                }
                out.denoms.push(RawDenom {
                    coeff: parse_list(ln, fields[0])?,
                    num: parse_index(ln, fields[1])?,
                    den: parse_index(ln, fields[2])?,
                });
                continue;
            }
            let term = match fields.len() {
                2 => RawTerm { coeff: parse_list(ln, fields[0])?, z: parse_list(ln, fields[1])?, q: Vec::new() },
                3 => RawTerm {
                    coeff: parse_list(ln, fields[0])?,
                    z: parse_list(ln, fields[1])?,
                    q: parse_list(ln, fields[2])?,
                },
                _ => return Err(perr(ln, "expected `coeff ; z-exponents [; q-exponents]`")),
            };
            if term.coeff.is_empty() {
                return Err(perr(ln, "empty coefficient"));
            }
            out.terms.push(term);
        }
        Ok(out)
    }

    /// The number of z-variables, from the first term (or `None` if empty).
    pub fn n_vars(&self) -> Option<usize> {
        self.terms.first().map(|t| t.z.len())
    }

    /// The coefficient length, from the first term.
    pub fn coeff_len(&self) -> Option<usize> {
        self.terms.first().map(|t| t.coeff.len())
    }

    /// Binds to a coefficient ring. `coeff` converts a coefficient list; in
    /// torus mode it is a single integer, in surface mode a coordinate vector.
    pub fn build<R: CoeffRing>(
        &self,
        ring: R,
        n_vars: usize,
        n_params: usize,
        coeff: impl Fn(&[BigInt]) -> Option<R::Elem>,
    ) -> Result<RatElem<R>, LaurentError> {
        let mut num = Laurent::zero(ring.clone(), n_vars, n_params);
        for t in &self.terms {
            if t.z.len() != n_vars || t.q.len() != n_params {
                return Err(LaurentError::ModeMismatch);
            }
            let c = coeff(&t.coeff).ok_or(LaurentError::ModeMismatch)?;
            let mut e = t.z.clone();
            e.extend_from_slice(&t.q);
            num.add_term(e, c);
        }
        let mut factors = Vec::new();
        for d in &self.denoms {
            let (c, q) = if n_params > 0 {
                if d.coeff.len() != 1 + n_params {
                    return Err(LaurentError::ModeMismatch);
                }
                let q = d.coeff[1..]
                    .iter()
                    .map(|x| i32::try_from(x).map_err(|_| LaurentError::ModeMismatch))
                    .collect::<Result<Vec<_>, _>>()?;
                (&d.coeff[..1], q)
            } else {
                (&d.coeff[..], Vec::new())
            };
            let c = coeff(c).ok_or(LaurentError::ModeMismatch)?;
            factors.push(BinomialFactor::new(UnitCoeff::new(&ring, c, q)?, d.num, d.den)?);
        }
        RatElem::new(num, factors)
    }
}

fn join<X: ToString>(xs: impl IntoIterator<Item = X>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Writes an element in the file format. Surface coefficients are written
/// as dense coordinate vectors of the ring's rank.
pub fn write_element<R: CoeffRing>(x: &RatElem<R>) -> String {
    let ring = x.numerator().ring();
    let n = x.numerator().n_vars();
    let torus = x.numerator().n_params() > 0;
    let coeff_text = |c: &R::Elem| -> String {
        let coords = ring.coords(c);
        if torus {
            coords.first().map_or_else(|| "0".to_string(), |(_, v)| v.to_string())
        } else {
            let mut dense = vec![<R::Scalar as num_traits::Zero>::zero(); ring.rank()];
            for (i, v) in coords {
                dense[i] = v;
            }
            join(dense)
        }
    };
    let mut out = String::new();
    for (e, c) in x.numerator().terms() {
        let _ = write!(out, "{} ; {}", coeff_text(c), join(&e[..n]));
        if torus {
            let _ = write!(out, " ; {}", join(&e[n..]));
        }
        out.push('\n');
    }
    for f in x.denominator_factors() {
        let mut c = coeff_text(&f.unit.coeff);
        if torus {
            c = format!("{c} {}", join(&f.unit.params));
        }
        let _ = writeln!(out, "denom {c} ; {} ; {}", f.num + 1, f.den + 1);
    }
    out
}

/// Converts a single-integer coefficient list.
pub fn scalar_coeff<T: Scalar>(c: &[BigInt]) -> Option<T> {
    match c {
        [v] => T::from_bigint(v),
        _ => None,
    }
}
