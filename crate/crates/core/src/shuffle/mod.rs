//! Shuffle products of symmetric rational functions with a configurable
//! kernel `ζ(x) = ∏(1 - a·x) / ∏(1 - b·x)`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::marker::PhantomData;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::Zero;
use thiserror::Error;

use crate::coeffrings::{tensor_power, tensor_power_unchecked, Coords, RingError, RingModel};
use crate::laurent::{BinomialFactor, CoeffRing, Integers, Laurent, LaurentError, ModelRing, RatElem, UnitCoeff};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShuffleError {
    #[error("element ring does not match the coefficient family in degree {0}")]
    RingMismatch(usize),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Coefficient rings indexed by degree, with the maps a shuffle product
/// needs.
pub trait CoeffFamily: Clone + Debug {
    type Ring: CoeffRing;

    fn n_params(&self) -> usize;

    /// The coefficient ring of degree-`n` elements.
    fn ring(&self, n: usize) -> Result<Self::Ring, ShuffleError>;

    /// `a ⊗ b` for `a` of degree `n` and `b` of degree `m`.
    fn outer(&self, a: &Elem<Self>, n: usize, b: &Elem<Self>, m: usize) -> Result<Elem<Self>, ShuffleError>;

    /// A kernel coefficient (living in degree 2) placed in slots `(i, j)` of
    /// degree `total`.
    fn place_pair(&self, c: &Elem<Self>, i: usize, j: usize, total: usize) -> Result<Elem<Self>, ShuffleError>;
}

pub type Elem<F> = <<F as CoeffFamily>::Ring as CoeffRing>::Elem;

/// `ℤ[q₁^±, q₂^±]` in every degree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TorusFamily<T>(PhantomData<T>);

impl<T> TorusFamily<T> {
    pub fn new() -> Self {
        TorusFamily(PhantomData)
    }
}

impl<T: Scalar> CoeffFamily for TorusFamily<T> {
    type Ring = Integers<T>;

    fn n_params(&self) -> usize {
        2
    }
    fn ring(&self, _n: usize) -> Result<Integers<T>, ShuffleError> {
        Ok(Integers::new())
    }
    fn outer(&self, a: &T, _n: usize, b: &T, _m: usize) -> Result<T, ShuffleError> {
        Ok(a.clone() * b)
    }
    fn place_pair(&self, c: &T, _i: usize, _j: usize, _total: usize) -> Result<T, ShuffleError> {
        Ok(c.clone())
    }
}

/// `K(S)^{⊗n}` in degree `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceFamily<T: Scalar> {
    base: Arc<RingModel<T>>,
}

impl<T: Scalar> SurfaceFamily<T> {
    pub fn new(base: Arc<RingModel<T>>) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &Arc<RingModel<T>> {
        &self.base
    }
}

impl<T: Scalar> CoeffFamily for SurfaceFamily<T> {
    type Ring = ModelRing<T>;

    fn n_params(&self) -> usize {
        0
    }
    fn ring(&self, n: usize) -> Result<ModelRing<T>, ShuffleError> {
        if n == 0 {
            Ok(tensor_power_unchecked(&self.base, 0))
        } else {
            Ok(tensor_power(&self.base, n)?)
        }
    }
    fn outer(&self, a: &Coords<T>, _n: usize, b: &Coords<T>, m: usize) -> Result<Coords<T>, ShuffleError> {
        let b_rank = self.base.rank().pow(m as u32);
        Ok(self.ring(_n + m)?.outer(a, b, b_rank))
    }
    fn place_pair(&self, c: &Coords<T>, i: usize, j: usize, total: usize) -> Result<Coords<T>, ShuffleError> {
        Ok(self.ring(total)?.place_pair(c, i, j)?)
    }
}

/// `ζ(x) = ∏ (1 - a·x) / ∏ (1 - b·x)` with every `a`, `b` a unit of the
/// degree-2 coefficient ring (times a parameter monomial in torus mode).
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec<E> {
    pub numerator: Vec<UnitCoeff<E>>,
    pub denominator: Vec<UnitCoeff<E>>,
}

impl<E> KernelSpec<E> {
    /// `ζ = 1`.
    pub fn trivial() -> Self {
        Self { numerator: Vec::new(), denominator: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.numerator.is_empty() && self.denominator.is_empty()
    }
}

/// `ζ(x) = (1 - q₁x)(1 - q₂x) / ((1 - x)(1 - q₁q₂x))`.
pub fn default_plane_kernel<T: Scalar>() -> KernelSpec<T> {
    let ring = Integers::<T>::new();
    let q = |a: i32, b: i32| UnitCoeff::param(&ring, vec![a, b]);
    KernelSpec { numerator: vec![q(1, 0), q(0, 1)], denominator: vec![q(0, 0), q(1, 1)] }
}

/// A homogeneous element of degree `n`: a rational function in `n`
/// variables.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedElem<R: CoeffRing> {
    pub degree: usize,
    pub body: RatElem<R>,
}

impl<R: CoeffRing> GradedElem<R> {
    pub fn new(body: RatElem<R>) -> Self {
        Self { degree: body.numerator().n_vars(), body }
    }
}

/// The unit of degree 0.
pub fn unit_element<F: CoeffFamily>(family: &F) -> Result<GradedElem<F::Ring>, ShuffleError> {
    Ok(GradedElem::new(RatElem::from_laurent(Laurent::one(family.ring(0)?, 0, family.n_params()))))
}

/// Wraps a one-variable Laurent polynomial as a degree-1 element.
pub fn generator_element<F: CoeffFamily>(family: &F, f: Laurent<F::Ring>) -> Result<GradedElem<F::Ring>, ShuffleError> {
    if f.n_vars() != 1 || f.n_params() != family.n_params() || *f.ring() != family.ring(1)? {
        return Err(ShuffleError::RingMismatch(1));
    }
    Ok(GradedElem::new(RatElem::from_laurent(f)))
}

fn check_elem<F: CoeffFamily>(family: &F, x: &GradedElem<F::Ring>) -> Result<(), ShuffleError> {
    let num = x.body.numerator();
    if num.n_vars() != x.degree || num.n_params() != family.n_params() || *num.ring() != family.ring(x.degree)? {
        return Err(ShuffleError::RingMismatch(x.degree));
    }
    Ok(())
}

/// Embeds a degree-`n` body into degree `total` at variable offset `offset`,
/// tensoring coefficients with the unit on the other side.
fn lift<F: CoeffFamily>(
    family: &F,
    x: &RatElem<F::Ring>,
    offset: usize,
    total: usize,
) -> Result<RatElem<F::Ring>, ShuffleError> {
    let n = x.numerator().n_vars();
    let p = family.n_params();
    let ring = family.ring(total)?;
    let left_one = family.ring(offset)?.one();
    let right_deg = total - offset - n;
    let right_one = family.ring(right_deg)?.one();
    let embed = |c: &Elem<F>| -> Result<Elem<F>, ShuffleError> {
        let lc = family.outer(&left_one, offset, c, n)?;
        family.outer(&lc, offset + n, &right_one, right_deg)
    };
    let mut num = Laurent::zero(ring.clone(), total, p);
    for (e, c) in x.numerator().terms() {
        let mut ne = vec![0; total + p];
        ne[offset..offset + n].copy_from_slice(&e[..n]);
        ne[total..].copy_from_slice(&e[n..]);
        num.add_term(ne, embed(c)?);
    }
    let mut den = Vec::new();
    for f in x.denominator_factors() {
        let unit = UnitCoeff { coeff: embed(&f.unit.coeff)?, inv: embed(&f.unit.inv)?, params: f.unit.params.clone() };
        den.push(BinomialFactor::new(unit, f.num + offset, f.den + offset)?);
    }
    Ok(RatElem::new(num, den)?)
}

/// The `(n, m)`-shuffles: permutations increasing on `0..n` and on `n..n+m`.
pub fn shuffle_cosets(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..n + m)
        .combinations(n)
        .map(|first| {
            let rest: Vec<usize> = (0..n + m).filter(|i| !first.contains(i)).collect();
            first.into_iter().chain(rest).collect()
        })
        .collect()
}

/// `F(z_1..z_n)·G(z_{n+1}..z_{n+m})·∏_{i≤n<j} ζ(z_i/z_j)` before
/// symmetrization.
pub fn shuffle_summand<F: CoeffFamily>(
    family: &F,
    f: &GradedElem<F::Ring>,
    g: &GradedElem<F::Ring>,
    kernel: &KernelSpec<Elem<F>>,
) -> Result<RatElem<F::Ring>, ShuffleError> {
    check_elem(family, f)?;
    check_elem(family, g)?;
    summand(family, &f.body, &g.body, kernel)
}

fn summand<F: CoeffFamily>(
    family: &F,
    f: &RatElem<F::Ring>,
    g: &RatElem<F::Ring>,
    kernel: &KernelSpec<Elem<F>>,
) -> Result<RatElem<F::Ring>, ShuffleError> {
    let (n, m) = (f.numerator().n_vars(), g.numerator().n_vars());
    let total = n + m;
    let ring = family.ring(total)?;
    let mut p = lift(family, f, 0, total)?.try_mul(&lift(family, g, n, total)?)?;
    for i in 0..n {
        for j in n..total {
            let place = |u: &UnitCoeff<Elem<F>>| -> Result<BinomialFactor<Elem<F>>, ShuffleError> {
                let unit = UnitCoeff {
                    coeff: family.place_pair(&u.coeff, i, j, total)?,
                    inv: family.place_pair(&u.inv, i, j, total)?,
                    params: u.params.clone(),
                };
                Ok(BinomialFactor::new(unit, i, j)?)
            };
            for a in &kernel.numerator {
                p = p.mul_laurent(&Laurent::binomial(ring.clone(), total, family.n_params(), &place(a)?))?;
            }
            for b in &kernel.denominator {
                p = p.div_binomial(place(b)?)?;
            }
        }
    }
    Ok(p)
}

/// Denominator multiset of an oriented term.
pub type DenomKey<R> = BTreeMap<BinomialFactor<<R as CoeffRing>::Elem>, u32>;

/// A homogeneous sum of rational terms that has not been put over a common
/// denominator. Every term is oriented (see [`RatElem::oriented`]).
#[derive(Debug, Clone, PartialEq)]
pub struct FormalSum<R: CoeffRing> {
    pub degree: usize,
    zero: RatElem<R>,
    terms: Vec<RatElem<R>>,
}

impl<R: CoeffRing> FormalSum<R> {
    pub fn from_elem(x: &GradedElem<R>) -> Self {
        Self { degree: x.degree, zero: x.body.zero_like(), terms: vec![x.body.oriented()] }
    }

    pub fn terms(&self) -> &[RatElem<R>] {
        &self.terms
    }

    /// The sum over the common denominator.
    pub fn assemble(&self) -> Result<GradedElem<R>, ShuffleError> {
        let mut acc = self.zero.clone();
        for t in &self.terms {
            acc = acc.try_add(t)?;
        }
        Ok(GradedElem { degree: self.degree, body: acc })
    }

    /// Numerators summed per denominator; zero groups dropped. Equal
    /// groupings imply equal values.
    pub fn grouped(&self) -> BTreeMap<DenomKey<R>, Laurent<R>> {
        let mut out: BTreeMap<DenomKey<R>, Laurent<R>> = BTreeMap::new();
        for t in &self.terms {
            match out.get_mut(t.denominator()) {
                Some(acc) => {
                    for (e, c) in t.numerator().terms() {
                        acc.add_term(e.clone(), c.clone());
                    }
                }
                None => {
                    out.insert(t.denominator().clone(), t.numerator().clone());
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// The shuffle product of two formal sums, term by term, without
/// assembling.
pub fn shuffle_formal<F: CoeffFamily>(
    family: &F,
    f: &FormalSum<F::Ring>,
    g: &FormalSum<F::Ring>,
    kernel: &KernelSpec<Elem<F>>,
) -> Result<FormalSum<F::Ring>, ShuffleError> {
    let (n, m) = (f.degree, g.degree);
    let cosets = shuffle_cosets(n, m);
    let mut terms = Vec::with_capacity(f.terms.len() * g.terms.len() * cosets.len());
    for tf in &f.terms {
        for tg in &g.terms {
            let p = summand(family, tf, tg, kernel)?;
            for sigma in &cosets {
                terms.push(p.permute(sigma)?.oriented());
            }
        }
    }
    let zero = RatElem::from_laurent(Laurent::zero(family.ring(n + m)?, n + m, family.n_params()));
    Ok(FormalSum { degree: n + m, zero, terms })
}

/// `F * G = Σ_σ σ·(F ⊗ G · ∏ ζ(z_i/z_j))` over the `(n, m)`-shuffles,
/// assembled over the common denominator. Factors are put in the oriented
/// form `1 - c·z_i/z_j` with `i < j`; nothing is cancelled.
pub fn shuffle_product<F: CoeffFamily>(
    family: &F,
    f: &GradedElem<F::Ring>,
    g: &GradedElem<F::Ring>,
    kernel: &KernelSpec<Elem<F>>,
) -> Result<GradedElem<F::Ring>, ShuffleError> {
    check_elem(family, f)?;
    check_elem(family, g)?;
    shuffle_formal(family, &FormalSum::from_elem(f), &FormalSum::from_elem(g), kernel)?.assemble()
}

/// `(F*G)*H = F*(G*H)` as rational functions.
///
/// Both sides are expanded into oriented coset terms and compared after
/// grouping by denominator. If the groupings differ the assembled values
/// are compared by cross-multiplication.
pub fn associativity_check<F: CoeffFamily>(
    family: &F,
    f: &GradedElem<F::Ring>,
    g: &GradedElem<F::Ring>,
    h: &GradedElem<F::Ring>,
    kernel: &KernelSpec<Elem<F>>,
) -> Result<bool, ShuffleError> {
    for x in [f, g, h] {
        check_elem(family, x)?;
    }
    let (f, g, h) = (FormalSum::from_elem(f), FormalSum::from_elem(g), FormalSum::from_elem(h));
    let left = shuffle_formal(family, &shuffle_formal(family, &f, &g, kernel)?, &h, kernel)?;
    let right = shuffle_formal(family, &f, &shuffle_formal(family, &g, &h, kernel)?, kernel)?;
    if left.grouped() == right.grouped() {
        return Ok(true);
    }
    Ok(left.assemble()?.body.value_eq(&right.assemble()?.body))
}

/// `Σ_{σ ∈ S_{n+m}} σ·(F ⊗ G) / (n! m!)`: the shuffle product for `ζ = 1`
/// computed by full symmetrization. Returns `None` if the division is not
/// exact (inputs not symmetric).
pub fn symmetrized_product<F: CoeffFamily>(
    family: &F,
    f: &GradedElem<F::Ring>,
    g: &GradedElem<F::Ring>,
) -> Result<Option<GradedElem<F::Ring>>, ShuffleError> {
    let p = shuffle_summand(family, f, g, &KernelSpec::trivial())?;
    if !p.is_laurent() {
        let s = p.symmetrize()?;
        return Ok(divide_scalar(&s, f.degree, g.degree).map(|b| GradedElem { degree: f.degree + g.degree, body: b }));
    }
    let s = RatElem::from_laurent(p.numerator().symmetrize()?);
    Ok(divide_scalar(&s, f.degree, g.degree).map(|b| GradedElem { degree: f.degree + g.degree, body: b }))
}

fn divide_scalar<R: CoeffRing>(x: &RatElem<R>, n: usize, m: usize) -> Option<RatElem<R>> {
    let k: u64 = (1..=n as u64).product::<u64>() * (1..=m as u64).product::<u64>();
    let k = <R::Scalar as Scalar>::from_i64(k as i64);
    let ring = x.numerator().ring();
    let mut num = x.numerator().zero_like();
    for (e, c) in x.numerator().terms() {
        let mut q = Vec::new();
        for (i, v) in ring.coords(c) {
            if !(v.clone() % k.clone()).is_zero() {
                return None;
            }
            q.push((i, v / k.clone()));
        }
        let mut elem = ring.zero();
        for (i, v) in q {
            elem = ring.add(&elem, &ring.scale(&ring.basis_elem(i), &v));
        }
        num.add_term(e.clone(), elem);
    }
    RatElem::new(num, x.denominator_factors()).ok()
}

#[cfg(test)]
mod tests;
