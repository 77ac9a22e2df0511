//! Exact checks of pole and wheel conditions on rational functions with
//! coefficients in a torus character ring or in the K-theory of a surface.
//!
//! Everything is generic over the integer scalar type (see [`scalar::Scalar`]);
//! the aliases below fix it to arbitrary-precision integers.

pub mod coeffrings;
pub mod cli;
pub mod conditions;
pub mod equivariant;
pub mod laurent;
pub mod linalg;
pub mod scalar;
pub mod shuffle;

use num_bigint::BigInt;

/// Laurent polynomials over `ℤ[q₁^±, q₂^±]`.
pub type TorusPoly = equivariant::TorusPoly;
/// Rational functions over `ℤ[q₁^±, q₂^±]` with binomial denominators.
pub type TorusRat = laurent::RatElem<laurent::Integers<BigInt>>;
/// A coefficient ring given by structure constants.
pub type Ring = laurent::ModelRing<BigInt>;
/// Laurent polynomials over a tensor power of a surface K-theory ring.
pub type SurfacePoly = conditions::SurfacePoly<BigInt>;
/// Rational functions over a tensor power of a surface K-theory ring.
pub type SurfaceRat = laurent::RatElem<laurent::ModelRing<BigInt>>;
/// A surface K-theory ring with its distinguished classes.
pub type Surface = coeffrings::KSurfaceModel<BigInt>;
