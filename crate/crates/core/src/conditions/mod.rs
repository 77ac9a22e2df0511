//! Pole and wheel conditions for classes in `K(S^n)(z_1, …, z_n)`.
//!
//! The multiplier `Φ = ∏_{i≠j} [∧•(ratio)𝒲_ij]` clears the poles; after
//! merging tensor slots `i, j, k`, the class must lie in the ideal
//! `(1 - (z_i/z_k)ω, 1 - c₁ z_j/z_k + c₂ (z_j/z_k)²)`.

mod campaign;
mod oracle;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::coeffrings::{tensor_power, KSurfaceModel, RingError, RingModel};
use crate::equivariant::check_triple;
use crate::laurent::{BinomialFactor, CoeffRing, Laurent, LaurentError, ModelRing, RatElem, UnitCoeff};
use crate::scalar::Scalar;

pub use campaign::{
    comm_cross_validation, surface_cross_validation, Checker, CrossConfig, CrossLine, CrossReport, InstanceKind,
};
pub use oracle::{comm_generators, membership_oracle, surface_generators, OracleBox, OracleOutcome, DEFAULT_MAX_UNKNOWNS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("triple indices must be distinct and below {0}")]
    BadTriple(usize),
    #[error("coefficient ring does not match the surface model")]
    RingMismatch,
    #[error("support box has {unknowns} unknowns, above the limit {limit}")]
    BoxTooLarge { unknowns: usize, limit: usize },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl From<crate::equivariant::EquivariantError> for ConditionError {
    fn from(e: crate::equivariant::EquivariantError) -> Self {
        match e {
            crate::equivariant::EquivariantError::BadTriple(n) => ConditionError::BadTriple(n),
            crate::equivariant::EquivariantError::Laurent(l) => ConditionError::Laurent(l),
            _ => ConditionError::RingMismatch,
        }
    }
}

/// Which ratio multiplies `𝒲_ij` in `Φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// `z_j / z_i`
    #[default]
    Ji,
    /// `z_i / z_j`
    Ij,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Ji => "ji",
            Orientation::Ij => "ij",
        })
    }
}

impl std::str::FromStr for Orientation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ji" => Ok(Orientation::Ji),
            "ij" => Ok(Orientation::Ij),
            _ => Err(format!("unknown orientation `{s}` (expected ji or ij)")),
        }
    }
}

pub type SurfacePoly<T> = Laurent<ModelRing<T>>;

/// `∏_{i≠j} Σ_k (-1)^k ratio^k [∧^k 𝒲]` placed in slots `(i, j)`, over
/// `K(S)^{⊗n}`.
pub fn multiplier_phi<T: Scalar>(
    n: usize,
    surf: &KSurfaceModel<T>,
    orientation: Orientation,
) -> Result<SurfacePoly<T>, ConditionError> {
    let ring = tensor_power(surf.ring(), n)?;
    let mut acc = Laurent::one(ring.clone(), n, 0);
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let mut factor = Laurent::zero(ring.clone(), n, 0);
            for (k, w) in surf.wedge_w().iter().enumerate() {
                let mut e = vec![0; n];
                let (num, den) = match orientation {
                    Orientation::Ji => (j, i),
                    Orientation::Ij => (i, j),
                };
                e[num] = k as i32;
                e[den] = -(k as i32);
                let mut c = ring.place_pair(w, i, j)?;
                if k % 2 == 1 {
                    c = ring.neg(&c);
                }
                factor.add_term(e, c);
            }
            acc = &acc * &factor;
        }
    }
    Ok(acc)
}

/// Outcome of [`pole_check`].
#[derive(Debug, Clone, PartialEq)]
pub enum PoleResult<T: Scalar> {
    /// `Φ·F` is a Laurent polynomial.
    Laurent(SurfacePoly<T>),
    /// The first denominator factor that does not divide.
    Violation(BinomialFactor<crate::coeffrings::Coords<T>>),
}

fn check_ring<T: Scalar>(ring: &Arc<RingModel<T>>, surf: &KSurfaceModel<T>, slots: usize) -> Result<(), ConditionError> {
    match ring.tensor_factors() {
        Some((base, k)) if k == slots && base == surf.ring() => Ok(()),
        _ => Err(ConditionError::RingMismatch),
    }
}

/// Multiplies by `Φ` and divides out every denominator factor.
pub fn pole_check<T: Scalar>(
    f: &RatElem<ModelRing<T>>,
    surf: &KSurfaceModel<T>,
    orientation: Orientation,
) -> Result<PoleResult<T>, ConditionError> {
    let n = f.numerator().n_vars();
    check_ring(f.numerator().ring(), surf, n)?;
    let phi = multiplier_phi(n, surf, orientation)?;
    let mut x = phi.try_mul(f.numerator())?;
    for factor in f.denominator_factors() {
        match x.divide_exact(&factor) {
            Ok(q) => x = q,
            Err(LaurentError::NotDivisible) => return Ok(PoleResult::Violation(factor)),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(PoleResult::Laurent(x))
}

/// Multiplies coefficient slots `i, j, k` together into slot `min(i, j, k)`.
/// All `n` variables are kept.
pub fn restrict_small_diagonal<T: Scalar>(
    g: &SurfacePoly<T>,
    triple: (usize, usize, usize),
) -> Result<SurfacePoly<T>, ConditionError> {
    let ring = g.ring();
    let slots = ring.slot_count().ok_or(RingError::NotTensorPower)?;
    check_triple(slots, triple)?;
    let (i, j, k) = triple;
    let (target, _) = ring.merge_slots(ring.unit(), &[i, j, k])?;
    let mut out = Laurent::zero(target, g.n_vars(), g.n_params());
    for (e, c) in g.terms() {
        let (_, merged) = ring.merge_slots(c, &[i, j, k])?;
        out.add_term(e.clone(), merged);
    }
    Ok(out)
}

/// The data of the wheel ideal `(1 - (z_i/z_k)ω, 1 - c₁v + c₂v²)`, `v = z_j/z_k`,
/// expressed in the coefficient ring of the element being tested.
#[derive(Debug, Clone)]
pub struct WheelIdeal<R: CoeffRing> {
    /// `ω`, which equals `c₂`.
    pub omega: UnitCoeff<R::Elem>,
    /// `c₁`, as a polynomial with all z-exponents zero.
    pub c1: Laurent<R>,
}

impl<T: Scalar> WheelIdeal<ModelRing<T>> {
    /// Surface data placed in slot `slot` of `ring` (the merged slot).
    pub fn surface(
        ring: &ModelRing<T>,
        n_vars: usize,
        slot: usize,
        surf: &KSurfaceModel<T>,
    ) -> Result<Self, ConditionError> {
        check_ring(ring, surf, ring.slot_count().unwrap_or(0))?;
        let omega = ring.place(&[(slot, surf.omega())])?;
        let omega_inv = ring.place(&[(slot, surf.omega_inv())])?;
        let c1 = ring.place(&[(slot, surf.c_omega())])?;
        Ok(Self {
            omega: UnitCoeff { coeff: omega, inv: omega_inv, params: Vec::new() },
            c1: Laurent::constant(ring.clone(), n_vars, 0, c1),
        })
    }
}

impl<T: Scalar> WheelIdeal<crate::laurent::Integers<T>> {
    /// `ω = c₂ = q₁q₂`, `c₁ = q₁ + q₂`.
    pub fn torus(n_vars: usize) -> Self {
        let ring = crate::laurent::Integers::<T>::new();
        let omega = UnitCoeff::param(&ring, vec![1, 1]);
        let q = |p: usize| Laurent::param(ring.clone(), n_vars, 2, p);
        Self { omega, c1: &q(0) + &q(1) }
    }
}

impl<R: CoeffRing> WheelIdeal<R> {
    /// The two generators for the triple, as Laurent polynomials.
    pub fn generators(&self, triple: (usize, usize, usize)) -> [Laurent<R>; 2] {
        let (i, j, k) = triple;
        let n = self.c1.n_vars();
        let one = self.c1.one_like();
        let mut u = vec![0; n];
        u[i] += 1;
        u[k] -= 1;
        let first = &one - &one.mul_unit(&self.omega, &u);
        let mut v = vec![0; n];
        v[j] += 1;
        v[k] -= 1;
        let v2: Vec<i32> = v.iter().map(|e| 2 * e).collect();
        let second = &(&one - &self.c1.shift(&ext(&v, self.c1.n_params()))) + &one.mul_unit(&self.omega, &v2);
        [first, second]
    }
}

fn ext(z: &[i32], n_params: usize) -> Vec<i32> {
    let mut e = z.to_vec();
    e.resize(z.len() + n_params, 0);
    e
}

/// Membership of `g` in the wheel ideal for `(i, j, k)`.
///
/// Substitutes `z_i ↦ ω⁻¹ z_k`, then reduces modulo
/// `1 - c₁v + c₂v²` from the top `v`-degree down. Both extreme coefficients
/// are units, so the remainder spans two consecutive powers of `v` and
/// vanishes exactly on ideal members.
pub fn wheel_membership<R: CoeffRing>(
    g: &Laurent<R>,
    triple: (usize, usize, usize),
    ideal: &WheelIdeal<R>,
) -> Result<bool, ConditionError> {
    let n = g.n_vars();
    check_triple(n, triple)?;
    if !g.same_mode(&ideal.c1) {
        return Err(LaurentError::ModeMismatch.into());
    }
    let (i, j, k) = triple;
    let mut to_k = vec![0; n];
    to_k[k] = 1;
    let mut h = g.substitute(i, &ideal.omega.inverse(), &to_k)?;
    let [_, quad] = ideal.generators(triple);
    let c2_inv = ideal.omega.inverse();
    loop {
        let Some((lo, hi)) = h.degree_range(j) else {
            return Ok(true);
        };
        if hi - lo < 2 {
            return Ok(false);
        }
        let top = h.slices(j).remove(&hi).expect("top slice");
        // top · c₂⁻¹ · v^{-2} · g has leading slice `top`
        let mut shift = vec![0; n];
        shift[j] = -2;
        shift[k] = 2;
        let lead = top.mul_unit(&c2_inv, &shift);
        h = &h - &(&lead * &quad);
    }
}

/// [`wheel_membership`] with the surface ideal in the merged slot
/// `min(i, j, k)`. `g` is an already restricted class.
pub fn surface_wheel_membership<T: Scalar>(
    g: &SurfacePoly<T>,
    triple: (usize, usize, usize),
    surf: &KSurfaceModel<T>,
) -> Result<bool, ConditionError> {
    let (i, j, k) = triple;
    let ideal = WheelIdeal::surface(g.ring(), g.n_vars(), i.min(j).min(k), surf)?;
    wheel_membership(g, triple, &ideal)
}

#[cfg(test)]
mod tests;
