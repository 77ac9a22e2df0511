use std::fmt;
use std::sync::Arc;

use super::sparse::{self, Coords};
use super::{RingError, RingModel};
use crate::scalar::Scalar;

/// An element of a [`RingModel`], with dense integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElem<T: Scalar> {
    model: Arc<RingModel<T>>,
    coords: Vec<T>,
}

impl<T: Scalar> RingElem<T> {
    pub fn new(model: Arc<RingModel<T>>, coords: Vec<T>) -> Result<Self, RingError> {
        if coords.len() != model.rank() {
            return Err(RingError::Shape(format!(
                "element has {} coordinates, model rank is {}",
                coords.len(),
                model.rank()
            )));
        }
        Ok(Self { model, coords })
    }

    pub fn from_sparse(model: Arc<RingModel<T>>, coords: &[(usize, T)]) -> Self {
        let dense = sparse::to_dense(coords, model.rank());
        Self { model, coords: dense }
    }

    pub fn zero(model: Arc<RingModel<T>>) -> Self {
        let coords = vec![T::zero(); model.rank()];
        Self { model, coords }
    }

    pub fn one(model: Arc<RingModel<T>>) -> Self {
        let coords = model.unit_dense();
        Self { model, coords }
    }

    pub fn basis(model: Arc<RingModel<T>>, i: usize) -> Self {
        let mut coords = vec![T::zero(); model.rank()];
        coords[i] = T::one();
        Self { model, coords }
    }

    pub fn model(&self) -> &Arc<RingModel<T>> {
        &self.model
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn sparse(&self) -> Coords<T> {
        sparse::from_dense(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(T::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), RingError> {
        if Arc::ptr_eq(&self.model, &other.model) || self.model == other.model {
            Ok(())
        } else {
            Err(RingError::ModelMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() + b).collect();
        Ok(Self { model: self.model.clone(), coords })
    }

    pub fn neg(&self) -> Self {
        Self { model: self.model.clone(), coords: self.coords.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check(other)?;
        let prod = self.model.mul(&self.sparse(), &other.sparse());
        Ok(Self::from_sparse(self.model.clone(), &prod))
    }

    pub fn scale(&self, k: &T) -> Self {
        Self { model: self.model.clone(), coords: self.coords.iter().map(|c| c.clone() * k).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.model.clone());
        for _ in 0..e {
            acc = acc.mul(self).expect("same model");
        }
        acc
    }

    pub fn invert(&self) -> Result<Self, RingError> {
        self.model
            .invert(&self.sparse())
            .map(|y| Self::from_sparse(self.model.clone(), &y))
            .ok_or(RingError::NotInvertible)
    }
}

impl<T: Scalar> fmt::Display for RingElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}*{}", self.model.basis_name(i)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffrings::builtin_kp2;
    use num_bigint::BigInt;

    #[test]
    fn unit_times_x() {
        let m = builtin_kp2().ring().clone();
        let x = RingElem::new(m.clone(), vec![BigInt::from(2), BigInt::from(-1), BigInt::from(7)]).unwrap();
        assert_eq!(RingElem::one(m).mul(&x).unwrap(), x);
    }

    #[test]
    fn s_squared_and_cubed() {
        let m = builtin_kp2().ring().clone();
        let s = RingElem::basis(m.clone(), 1);
        let s2 = RingElem::basis(m.clone(), 2);
        assert_eq!(s.mul(&s).unwrap(), s2);
        assert!(s.mul(&s2).unwrap().is_zero());
    }

    #[test]
    fn mismatch_is_an_error() {
        let m = builtin_kp2().ring().clone();
        let z = Arc::new(RingModel::<BigInt>::integers());
        let a = RingElem::one(m);
        let b = RingElem::one(z);
        assert_eq!(a.mul(&b), Err(RingError::ModelMismatch));
        assert_eq!(a.add(&b), Err(RingError::ModelMismatch));
    }

    #[test]
    fn wrong_length_rejected() {
        let m = builtin_kp2().ring().clone();
        assert!(RingElem::new(m, vec![BigInt::from(1)]).is_err());
    }
}
