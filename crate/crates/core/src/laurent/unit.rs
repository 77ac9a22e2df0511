use super::ring::CoeffRing;
use super::LaurentError;

/// An invertible coefficient `c · q^params`; the inverse of `c` is stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitCoeff<E> {
    pub coeff: E,
    pub inv: E,
    pub params: Vec<i32>,
}

impl<E: Clone> UnitCoeff<E> {
    /// Fails with [`LaurentError::NotUnit`] when `coeff` has no inverse.
    pub fn new<R: CoeffRing<Elem = E>>(ring: &R, coeff: E, params: Vec<i32>) -> Result<Self, LaurentError> {
        let inv = ring.invert(&coeff).ok_or(LaurentError::NotUnit)?;
        Ok(Self { coeff, inv, params })
    }

    pub fn one<R: CoeffRing<Elem = E>>(ring: &R, n_params: usize) -> Self {
        Self { coeff: ring.one(), inv: ring.one(), params: vec![0; n_params] }
    }

    /// The parameter monomial `q^params` with coefficient 1.
    pub fn param<R: CoeffRing<Elem = E>>(ring: &R, params: Vec<i32>) -> Self {
        Self { coeff: ring.one(), inv: ring.one(), params }
    }

    pub fn inverse(&self) -> Self {
        Self {
            coeff: self.inv.clone(),
            inv: self.coeff.clone(),
            params: self.params.iter().map(|p| -p).collect(),
        }
    }

    pub fn mul<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        Self {
            coeff: ring.mul(&self.coeff, &other.coeff),
            inv: ring.mul(&self.inv, &other.inv),
            params: self.params.iter().zip(&other.params).map(|(a, b)| super::poly::add_exp(*a, *b)).collect(),
        }
    }

    pub fn pow<R: CoeffRing<Elem = E>>(&self, ring: &R, k: i32) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::one(ring, self.params.len());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(ring, &base);
        }
        acc
    }

    pub fn neg<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        Self { coeff: ring.neg(&self.coeff), inv: ring.neg(&self.inv), params: self.params.clone() }
    }

    pub fn is_one<R: CoeffRing<Elem = E>>(&self, ring: &R) -> bool {
        ring.is_one(&self.coeff) && self.params.iter().all(|p| *p == 0)
    }
}
