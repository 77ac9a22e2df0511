//! Finite-rank structure-constant rings over ℤ.
//!
//! A [`RingModel`] stands in for `K(S)` of a surface; tensor powers model
//! `K(S^n)`. [`KSurfaceModel`] adds the distinguished classes the condition
//! checkers need.

mod element;
mod format;
mod model;
pub mod sparse;
mod surface;

use thiserror::Error;

pub use element::RingElem;
pub use format::{parse_model_file, write_model_file, ParsedModel};
pub use model::{
    tensor_power, tensor_power_bounded, RingModel, ValidationReport, Violation,
    DEFAULT_MAX_TENSOR_RANK,
};
pub(crate) use model::{digits, tensor_power_unchecked};
pub use sparse::Coords;
pub use surface::{augmentation, builtin_kp2, builtin_kp2_with, KSurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("elements belong to different ring models")]
    ModelMismatch,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("model is not a declared tensor power")]
    NotTensorPower,
    #[error("rank {base}^{exponent} exceeds the bound {bound}")]
    RankOverflow { base: usize, exponent: usize, bound: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("surface data: {0}")]
    Surface(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
