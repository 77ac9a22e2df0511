use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::ring::{CoeffRing, SlotAction};
use super::unit::UnitCoeff;
use super::{BinomialFactor, LaurentError};

/// Exponent vector: `n_vars` z-exponents followed by `n_params` parameter
/// exponents (q₁, q₂ in torus mode).
pub type Exponent = Vec<i32>;

/// Checked exponent addition; panics on overflow.
pub fn add_exp(a: i32, b: i32) -> i32 {
    a.checked_add(b).expect("exponent overflow")
}

/// Checked exponent multiplication; panics on overflow.
pub fn scale_exp(a: i32, k: i32) -> i32 {
    a.checked_mul(k).expect("exponent overflow")
}

/// A Laurent polynomial in `z_1..z_n` (and optional parameters) with
/// coefficients in `R`, kept in canonical form: no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<R: CoeffRing> {
    ring: R,
    n_vars: usize,
    n_params: usize,
    terms: BTreeMap<Exponent, R::Elem>,
}

impl<R: CoeffRing> Laurent<R> {
    pub fn zero(ring: R, n_vars: usize, n_params: usize) -> Self {
        Self { ring, n_vars, n_params, terms: BTreeMap::new() }
    }

    pub fn constant(ring: R, n_vars: usize, n_params: usize, c: R::Elem) -> Self {
        let mut out = Self::zero(ring, n_vars, n_params);
        out.add_term(vec![0; n_vars + n_params], c);
        out
    }

    pub fn one(ring: R, n_vars: usize, n_params: usize) -> Self {
        let c = ring.one();
        Self::constant(ring, n_vars, n_params, c)
    }

    /// `c · z^exp`; `exp` covers variables and parameters.
    pub fn monomial(ring: R, n_vars: usize, n_params: usize, exp: Exponent, c: R::Elem) -> Self {
        assert_eq!(exp.len(), n_vars + n_params, "exponent length");
        let mut out = Self::zero(ring, n_vars, n_params);
        out.add_term(exp, c);
        out
    }

    /// The variable `z_{i+1}` (0-based `i`).
    pub fn var(ring: R, n_vars: usize, n_params: usize, i: usize) -> Self {
        let mut exp = vec![0; n_vars + n_params];
        exp[i] = 1;
        let c = ring.one();
        Self::monomial(ring, n_vars, n_params, exp, c)
    }

    /// The parameter `q_{j+1}` (0-based `j`).
    pub fn param(ring: R, n_vars: usize, n_params: usize, j: usize) -> Self {
        let mut exp = vec![0; n_vars + n_params];
        exp[n_vars + j] = 1;
        let c = ring.one();
        Self::monomial(ring, n_vars, n_params, exp, c)
    }

    pub fn from_terms(
        ring: R,
        n_vars: usize,
        n_params: usize,
        terms: impl IntoIterator<Item = (Exponent, R::Elem)>,
    ) -> Self {
        let mut out = Self::zero(ring, n_vars, n_params);
        for (e, c) in terms {
            assert_eq!(e.len(), n_vars + n_params, "exponent length");
            out.add_term(e, c);
        }
        out
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn width(&self) -> usize {
        self.n_vars + self.n_params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &R::Elem)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, R::Elem> {
        self.terms
    }

    pub fn coeff(&self, exp: &[i32]) -> R::Elem {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Adds `c · z^exp` in place.
    pub fn add_term(&mut self, exp: Exponent, c: R::Elem) {
        debug_assert_eq!(exp.len(), self.width());
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                self.ring.add_assign(o.get_mut(), &c);
                if self.ring.is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    /// Same ring, variable count and parameter count.
    pub fn same_mode(&self, other: &Self) -> bool {
        self.n_vars == other.n_vars && self.n_params == other.n_params && self.ring == other.ring
    }

    fn check(&self, other: &Self) -> Result<(), LaurentError> {
        if self.same_mode(other) {
            Ok(())
        } else {
            Err(LaurentError::ModeMismatch)
        }
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.ring.clone(), self.n_vars, self.n_params)
    }

    pub fn one_like(&self) -> Self {
        Self::one(self.ring.clone(), self.n_vars, self.n_params)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| add_exp(*a, *b)).collect();
                out.add_term(e, self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.ring.neg(c);
        }
        out
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = self.zero_like();
        for (e, x) in &self.terms {
            out.add_term(e.clone(), self.ring.mul(x, c));
        }
        out
    }

    pub fn scale_int(&self, k: &R::Scalar) -> Self {
        let mut out = self.zero_like();
        for (e, x) in &self.terms {
            out.add_term(e.clone(), self.ring.scale(x, k));
        }
        out
    }

    /// Multiplies by the monomial `z^shift` (variables and parameters).
    pub fn shift(&self, shift: &[i32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| add_exp(*a, *b)).collect(), c.clone()))
            .collect();
        Self { ring: self.ring.clone(), n_vars: self.n_vars, n_params: self.n_params, terms }
    }

    /// Multiplies by the unit `u` times the z-monomial with exponent `z_shift`
    /// (length `n_vars`).
    pub fn mul_unit(&self, u: &UnitCoeff<R::Elem>, z_shift: &[i32]) -> Self {
        let mut shift = z_shift.to_vec();
        shift.extend_from_slice(&u.params);
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let ne: Exponent = e.iter().zip(&shift).map(|(a, b)| add_exp(*a, *b)).collect();
            out.add_term(ne, self.ring.mul(c, &u.coeff));
        }
        out
    }

    /// Multiplies by `(1 - c·z_a/z_b)`.
    pub fn mul_binomial(&self, f: &BinomialFactor<R::Elem>) -> Self {
        let mut ratio = vec![0; self.n_vars];
        ratio[f.num] += 1;
        ratio[f.den] -= 1;
        let moved = self.mul_unit(&f.unit, &ratio);
        let mut out = self.clone();
        for (e, c) in moved.terms {
            out.add_term(e, self.ring.neg(&c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Range of the exponent of slot `i` over all terms.
    pub fn degree_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// Splits into slices by the exponent of slot `i`.
    pub fn slices(&self, i: usize) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e[i]).or_insert_with(|| self.zero_like()).add_term(e.clone(), c.clone());
        }
        out
    }

    /// The ring homomorphism `z_var ↦ u · z^replacement`, where
    /// `replacement` has length `n_vars` and does not involve `z_var`.
    pub fn substitute(
        &self,
        var: usize,
        u: &UnitCoeff<R::Elem>,
        replacement: &[i32],
    ) -> Result<Self, LaurentError> {
        if var >= self.n_vars || replacement.len() != self.n_vars {
            return Err(LaurentError::BadIndex(format!("substitution for variable {var}")));
        }
        if replacement[var] != 0 {
            return Err(LaurentError::BadIndex("replacement involves the substituted variable".into()));
        }
        let mut img = replacement.to_vec();
        img.extend_from_slice(&u.params);
        let mut powers: BTreeMap<i32, R::Elem> = BTreeMap::new();
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let k = e[var];
            let ck = powers.entry(k).or_insert_with(|| u.pow(&self.ring, k).coeff).clone();
            let mut ne = e.clone();
            ne[var] = 0;
            for (slot, m) in ne.iter_mut().zip(&img) {
                *slot = add_exp(*slot, scale_exp(*m, k));
            }
            out.add_term(ne, self.ring.mul(c, &ck));
        }
        Ok(out)
    }

    /// Maps every coefficient through `f`, keeping exponents.
    pub fn map_coeffs<S: CoeffRing>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Laurent<S> {
        let mut out = Laurent::zero(ring, self.n_vars, self.n_params);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// `σ·x` where `perm[i] = σ(i)`: `z_i` becomes `z_{σ(i)}` and coefficient
    /// slot `i` moves to slot `σ(i)`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, LaurentError> {
        self.check_perm(perm)?;
        Ok(self.permute_unchecked(perm))
    }

    pub(crate) fn check_perm(&self, perm: &[usize]) -> Result<(), LaurentError> {
        if perm.len() != self.n_vars {
            return Err(LaurentError::BadIndex(format!("permutation of length {}", perm.len())));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(LaurentError::BadIndex(format!("{perm:?} is not a permutation")));
            }
        }
        match self.ring.slot_action() {
            SlotAction::Trivial => Ok(()),
            SlotAction::Slots(n) if n == self.n_vars => Ok(()),
            _ => Err(LaurentError::NotTensorPower),
        }
    }

    pub(crate) fn permute_unchecked(&self, perm: &[usize]) -> Self {
        let slots = matches!(self.ring.slot_action(), SlotAction::Slots(_));
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.add_term(self.permute_exp(e, perm), if slots { self.ring.permute_slots(c, perm) } else { c.clone() });
        }
        out
    }

    pub(crate) fn permute_exp(&self, e: &[i32], perm: &[usize]) -> Exponent {
        let mut ne = e.to_vec();
        for (i, &p) in perm.iter().enumerate() {
            ne[p] = e[i];
        }
        ne
    }
}

impl<R: CoeffRing> Add for &Laurent<R> {
    type Output = Laurent<R>;
    fn add(self, rhs: Self) -> Laurent<R> {
        self.try_add(rhs).expect("Laurent mode mismatch")
    }
}

impl<R: CoeffRing> Sub for &Laurent<R> {
    type Output = Laurent<R>;
    fn sub(self, rhs: Self) -> Laurent<R> {
        self.try_sub(rhs).expect("Laurent mode mismatch")
    }
}

impl<R: CoeffRing> Mul for &Laurent<R> {
    type Output = Laurent<R>;
    fn mul(self, rhs: Self) -> Laurent<R> {
        self.try_mul(rhs).expect("Laurent mode mismatch")
    }
}

impl<R: CoeffRing> Neg for &Laurent<R> {
    type Output = Laurent<R>;
    fn neg(self) -> Laurent<R> {
        Laurent::neg(self)
    }
}

impl<R: CoeffRing> Add for Laurent<R> {
    type Output = Laurent<R>;
    fn add(self, rhs: Self) -> Laurent<R> {
        &self + &rhs
    }
}

impl<R: CoeffRing> Sub for Laurent<R> {
    type Output = Laurent<R>;
    fn sub(self, rhs: Self) -> Laurent<R> {
        &self - &rhs
    }
}

impl<R: CoeffRing> Mul for Laurent<R> {
    type Output = Laurent<R>;
    fn mul(self, rhs: Self) -> Laurent<R> {
        &self * &rhs
    }
}

impl<R: CoeffRing> Neg for Laurent<R> {
    type Output = Laurent<R>;
    fn neg(self) -> Laurent<R> {
        Laurent::neg(&self)
    }
}
