use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::model::tensor_power;
use super::sparse::{self, Coords};
use super::{RingError, RingModel};
use crate::scalar::Scalar;

/// `K(S)` of a smooth projective surface together with the classes used by
/// the pole and wheel conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSurfaceModel<T: Scalar> {
    ring: Arc<RingModel<T>>,
    square: Arc<RingModel<T>>,
    omega: Coords<T>,
    omega_inv: Coords<T>,
    c_omega: Coords<T>,
    hyperplane: Option<Coords<T>>,
    wedge_w: Vec<Coords<T>>,
    r: usize,
}

impl<T: Scalar> KSurfaceModel<T> {
    /// `wedge_w[k]` is `[∧^k 𝒲]` in `K(S) ⊗ K(S)` (row-major coordinates of
    /// the tensor square); there must be exactly `r` of them.
    pub fn new(
        ring: Arc<RingModel<T>>,
        omega: Coords<T>,
        c_omega: Coords<T>,
        hyperplane: Option<Coords<T>>,
        wedge_w: Vec<Coords<T>>,
        r: usize,
    ) -> Result<Self, RingError> {
        if ring.tensor_factors().is_some() {
            return Err(RingError::Surface("K(S) must be given by a table".into()));
        }
        let d = ring.rank();
        let in_range = |c: &Coords<T>, len: usize| c.iter().all(|(i, _)| *i < len);
        if !in_range(&omega, d) || !in_range(&c_omega, d) || hyperplane.as_ref().is_some_and(|h| !in_range(h, d)) {
            return Err(RingError::Surface("class coordinates out of range".into()));
        }
        let omega_inv = ring
            .invert(&omega)
            .ok_or_else(|| RingError::Surface("omega is not invertible".into()))?;
        if r == 0 || wedge_w.len() != r {
            return Err(RingError::Surface(format!(
                "expected r = {r} exterior powers of W, got {}",
                wedge_w.len()
            )));
        }
        let square = tensor_power(&ring, 2)?;
        if wedge_w.iter().any(|w| !in_range(w, d * d)) {
            return Err(RingError::Surface("wedgeW coordinates out of range".into()));
        }
        if &wedge_w[0] != square.unit() {
            return Err(RingError::Surface("wedgeW[0] must be the unit of K(S)⊗K(S)".into()));
        }
        Ok(Self { ring, square, omega, omega_inv, c_omega, hyperplane, wedge_w, r })
    }

    pub fn ring(&self) -> &Arc<RingModel<T>> {
        &self.ring
    }

    /// `K(S) ⊗ K(S)`.
    pub fn square(&self) -> &Arc<RingModel<T>> {
        &self.square
    }

    pub fn omega(&self) -> &Coords<T> {
        &self.omega
    }

    pub fn omega_inv(&self) -> &Coords<T> {
        &self.omega_inv
    }

    /// `[Ω_S]`.
    pub fn c_omega(&self) -> &Coords<T> {
        &self.c_omega
    }

    pub fn hyperplane(&self) -> Option<&Coords<T>> {
        self.hyperplane.as_ref()
    }

    pub fn wedge_w(&self) -> &[Coords<T>] {
        &self.wedge_w
    }

    /// `h⁰(𝒪(1))`; `𝒲` has rank `r - 1`.
    pub fn r(&self) -> usize {
        self.r
    }
}

/// The coefficient of basis element 0.
///
/// For the builtin `K(ℙ²)` (and its tensor powers) every other basis element
/// is nilpotent, so this is the rank homomorphism `s ↦ 0`.
pub fn augmentation<T: Scalar>(x: &[(usize, T)]) -> T {
    x.iter().find(|(i, _)| *i == 0).map_or_else(T::zero, |(_, c)| c.clone())
}

/// `K(ℙ²) = ℤ[s]/(s³)` with `s = [𝒪(1)] - 1`, basis `{1, s, s²}` named
/// `one s s2`.
pub fn builtin_kp2() -> KSurfaceModel<BigInt> {
    builtin_kp2_with::<BigInt>()
}

pub fn builtin_kp2_with<T: Scalar>() -> KSurfaceModel<T> {
    let c = |v: [i64; 3]| -> Vec<T> { v.iter().map(|&x| T::from_i64(x)).collect() };
    let mut table = BTreeMap::new();
    table.insert((0, 0), c([1, 0, 0]));
    table.insert((0, 1), c([0, 1, 0]));
    table.insert((0, 2), c([0, 0, 1]));
    table.insert((1, 1), c([0, 0, 1]));
    table.insert((1, 2), c([0, 0, 0]));
    table.insert((2, 2), c([0, 0, 0]));
    let basis = vec!["one".to_string(), "s".to_string(), "s2".to_string()];
    let ring = Arc::new(RingModel::from_table(basis, &table, c([1, 0, 0])).expect("valid table"));

    let l = sparse::from_dense(&c([1, 1, 0]));
    let l_inv = ring.invert(&l).expect("line bundle");
    let l_inv2 = ring.mul(&l_inv, &l_inv);
    let omega = ring.mul(&l_inv2, &l_inv);
    // Euler sequence: [Ω] = 3 L⁻¹ - 1
    let c_omega = sparse::add(&sparse::scale(&l_inv, &T::from_i64(3)), &sparse::neg(ring.unit()));
    // 𝓡 = Ω(1) has class 3 - L; 𝒲 = 𝓡 ⊠ 𝒪(-1)
    let r_class = sparse::add(&sparse::scale(ring.unit(), &T::from_i64(3)), &sparse::neg(&l));
    let square = tensor_power(&ring, 2).expect("rank 9");
    let w1 = square.place(&[(0, &r_class), (1, &l_inv)]).expect("two slots");
    let w2 = square.place(&[(0, &l_inv), (1, &l_inv2)]).expect("two slots");
    let w0 = square.unit().clone();
    KSurfaceModel::new(ring, omega, c_omega, Some(l), vec![w0, w1, w2], 3).expect("consistent K(P2) data")
}
