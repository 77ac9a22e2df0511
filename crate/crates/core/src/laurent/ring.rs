use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;
use std::sync::Arc;

use crate::coeffrings::{sparse, Coords, RingModel};
use crate::scalar::Scalar;

/// How the symmetric group acts on coefficients when it permutes variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotAction {
    /// Coefficients are invariant (plain integers).
    Trivial,
    /// Coefficients live in an `n`-fold tensor power; slots are permuted.
    Slots(usize),
    /// The coefficient ring is not a declared tensor power.
    Unsupported,
}

/// A commutative coefficient ring for Laurent polynomials.
///
/// The ring value is a context object; elements are plain data.
pub trait CoeffRing: Clone + Debug + PartialEq + Send + Sync {
    type Scalar: Scalar;
    type Elem: Clone + Debug + PartialEq + Eq + Ord + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_scalar(&self, c: Self::Scalar) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn scale(&self, a: &Self::Elem, k: &Self::Scalar) -> Self::Elem {
        self.mul(a, &self.from_scalar(k.clone()))
    }

    /// Rank as a free ℤ-module.
    fn rank(&self) -> usize;
    fn coords(&self, a: &Self::Elem) -> Vec<(usize, Self::Scalar)>;
    fn basis_elem(&self, i: usize) -> Self::Elem;

    fn slot_action(&self) -> SlotAction;
    /// Moves slot `s` to slot `perm[s]`. Only called under [`SlotAction::Slots`].
    fn permute_slots(&self, a: &Self::Elem, perm: &[usize]) -> Self::Elem;

    /// Printable name of basis element `i`; the empty string for the unit.
    fn basis_label(&self, i: usize) -> String;
}

/// The integers, carried by a [`Scalar`] type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers<T>(PhantomData<T>);

impl<T> Integers<T> {
    pub fn new() -> Self {
        Integers(PhantomData)
    }
}

impl<T: Scalar> CoeffRing for Integers<T> {
    type Scalar = T;
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn from_scalar(&self, c: T) -> T {
        c
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b
    }
    fn add_assign(&self, a: &mut T, b: &T) {
        *a += b;
    }
    fn neg(&self, a: &T) -> T {
        -a.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b
    }
    fn invert(&self, a: &T) -> Option<T> {
        (a.is_one() || (-a.clone()).is_one()).then(|| a.clone())
    }
    fn scale(&self, a: &T, k: &T) -> T {
        a.clone() * k
    }
    fn rank(&self) -> usize {
        1
    }
    fn coords(&self, a: &T) -> Vec<(usize, T)> {
        if a.is_zero() {
            Vec::new()
        } else {
            vec![(0, a.clone())]
        }
    }
    fn basis_elem(&self, _i: usize) -> T {
        T::one()
    }
    fn slot_action(&self) -> SlotAction {
        SlotAction::Trivial
    }
    fn permute_slots(&self, a: &T, _perm: &[usize]) -> T {
        a.clone()
    }
    fn basis_label(&self, _i: usize) -> String {
        String::new()
    }
}

/// A structure-constant ring used as a coefficient ring.
pub type ModelRing<T> = Arc<RingModel<T>>;

impl<T: Scalar> CoeffRing for Arc<RingModel<T>> {
    type Scalar = T;
    type Elem = Coords<T>;

    fn zero(&self) -> Coords<T> {
        Vec::new()
    }
    fn one(&self) -> Coords<T> {
        self.unit().clone()
    }
    fn from_scalar(&self, c: T) -> Coords<T> {
        sparse::scale(self.unit(), &c)
    }
    fn is_zero(&self, a: &Coords<T>) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Coords<T>, b: &Coords<T>) -> Coords<T> {
        sparse::add(a, b)
    }
    fn neg(&self, a: &Coords<T>) -> Coords<T> {
        sparse::neg(a)
    }
    fn mul(&self, a: &Coords<T>, b: &Coords<T>) -> Coords<T> {
        RingModel::mul(self, a, b)
    }
    fn invert(&self, a: &Coords<T>) -> Option<Coords<T>> {
        RingModel::invert(self, a)
    }
    fn scale(&self, a: &Coords<T>, k: &T) -> Coords<T> {
        sparse::scale(a, k)
    }
    fn rank(&self) -> usize {
        RingModel::rank(self)
    }
    fn coords(&self, a: &Coords<T>) -> Vec<(usize, T)> {
        a.clone()
    }
    fn basis_elem(&self, i: usize) -> Coords<T> {
        vec![(i, T::one())]
    }
    fn slot_action(&self) -> SlotAction {
        match self.slot_count() {
            Some(n) => SlotAction::Slots(n),
            None if RingModel::rank(self) == 1 => SlotAction::Trivial,
            None => SlotAction::Unsupported,
        }
    }
    fn permute_slots(&self, a: &Coords<T>, perm: &[usize]) -> Coords<T> {
        match self.slot_count() {
            Some(_) => RingModel::permute_slots(self, a, perm).expect("slot count checked by caller"),
            None => a.clone(),
        }
    }
    fn basis_label(&self, i: usize) -> String {
        match self.tensor_factors() {
            Some((base, n)) => crate::coeffrings::digits(i, base.rank(), n)
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(s, &k)| format!("{}@{}", base.basis_name(k), s + 1))
                .collect::<Vec<_>>()
                .join("*"),
            None if i == 0 => String::new(),
            None => self.basis_name(i),
        }
    }
}
