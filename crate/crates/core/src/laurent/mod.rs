//! Laurent polynomials in `z_1..z_n` over a coefficient ring, and rational
//! functions whose denominators are products of binomials `1 - c·z_a/z_b`.
//!
//! In torus mode the coefficients are integers and `q₁, q₂` are two extra
//! exponent slots. In surface mode the coefficients live in a ring model,
//! usually a tensor power whose slots follow the variables under `S_n`.

mod io;
mod perm;
mod poly;
mod rational;
mod ring;
mod unit;

use thiserror::Error;

pub use io::{scalar_coeff, write_element, RawDenom, RawElement, RawTerm};
pub use perm::{permutations, transposition};
pub use poly::{add_exp, scale_exp, Exponent, Laurent};
pub use rational::{BinomialFactor, RatElem};
pub use ring::{CoeffRing, Integers, ModelRing, SlotAction};
pub use unit::UnitCoeff;

use crate::coeffrings::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("operands have different variables or coefficient rings")]
    ModeMismatch,
    #[error("coefficient is not a unit")]
    NotUnit,
    #[error("not divisible by the binomial factor")]
    NotDivisible,
    #[error("coefficient ring is not a tensor power matching the variables")]
    NotTensorPower,
    #[error("index error: {0}")]
    BadIndex(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[cfg(test)]
mod tests;
