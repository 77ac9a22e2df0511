use std::collections::BTreeMap;

use super::poly::Laurent;
use super::ring::{CoeffRing, SlotAction};
use super::unit::UnitCoeff;
use super::LaurentError;

/// The binomial `1 - c·q^p·z_num/z_den` with `c·q^p` a unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinomialFactor<E> {
    pub unit: UnitCoeff<E>,
    pub num: usize,
    pub den: usize,
}

impl<E: Clone> BinomialFactor<E> {
    pub fn new(unit: UnitCoeff<E>, num: usize, den: usize) -> Result<Self, LaurentError> {
        if num == den {
            return Err(LaurentError::BadIndex(format!("binomial factor with z{0}/z{0}", num + 1)));
        }
        Ok(Self { unit, num, den })
    }

    /// `1 - z_num/z_den`.
    pub fn plain<R: CoeffRing<Elem = E>>(ring: &R, n_params: usize, num: usize, den: usize) -> Self {
        Self::new(UnitCoeff::one(ring, n_params), num, den).expect("distinct indices")
    }

    /// The image under `σ` (`perm[i] = σ(i)`); slot-permutes the unit when
    /// the ring is a tensor power.
    pub fn permute<R: CoeffRing<Elem = E>>(&self, ring: &R, perm: &[usize]) -> Self {
        let unit = match ring.slot_action() {
            SlotAction::Slots(_) => UnitCoeff {
                coeff: ring.permute_slots(&self.unit.coeff, perm),
                inv: ring.permute_slots(&self.unit.inv, perm),
                params: self.unit.params.clone(),
            },
            _ => self.unit.clone(),
        };
        Self { unit, num: perm[self.num], den: perm[self.den] }
    }
}

impl<R: CoeffRing> Laurent<R> {
    /// The binomial as a Laurent polynomial.
    pub fn binomial(ring: R, n_vars: usize, n_params: usize, f: &BinomialFactor<R::Elem>) -> Self {
        Self::one(ring, n_vars, n_params).mul_binomial(f)
    }

    /// Exact quotient by `1 - c·z_a/z_b`, or [`LaurentError::NotDivisible`].
    ///
    /// Slices by the exponent of `z_a` and solves `Q_d = x_d + c·u·Q_{d-1}`
    /// upward from the lowest slice; the top slice must cancel.
    pub fn divide_exact(&self, f: &BinomialFactor<R::Elem>) -> Result<Self, LaurentError> {
        if f.num >= self.n_vars() || f.den >= self.n_vars() || f.num == f.den {
            return Err(LaurentError::BadIndex("binomial factor out of range".into()));
        }
        let slices = self.slices(f.num);
        let (Some(&lo), Some(&hi)) = (slices.keys().next(), slices.keys().next_back()) else {
            return Ok(self.clone());
        };
        let mut ratio = vec![0; self.n_vars()];
        ratio[f.num] = 1;
        ratio[f.den] = -1;
        let mut quotient = self.zero_like();
        let mut prev = self.zero_like();
        for d in lo..=hi {
            let mut cur = prev.mul_unit(&f.unit, &ratio);
            if let Some(x) = slices.get(&d) {
                cur = &cur + x;
            }
            if d == hi {
                if !cur.is_zero() {
                    return Err(LaurentError::NotDivisible);
                }
            } else {
                quotient = &quotient + &cur;
            }
            prev = cur;
        }
        Ok(quotient)
    }
}

/// A Laurent numerator over a multiset of binomial denominators.
#[derive(Clone, Debug, PartialEq)]
pub struct RatElem<R: CoeffRing> {
    num: Laurent<R>,
    den: BTreeMap<BinomialFactor<R::Elem>, u32>,
}

impl<R: CoeffRing> RatElem<R> {
    pub fn new(
        num: Laurent<R>,
        den: impl IntoIterator<Item = BinomialFactor<R::Elem>>,
    ) -> Result<Self, LaurentError> {
        let mut out = Self::from_laurent(num);
        for f in den {
            out.check_factor(&f)?;
            *out.den.entry(f).or_insert(0) += 1;
        }
        Ok(out)
    }

    pub fn from_laurent(num: Laurent<R>) -> Self {
        Self { num, den: BTreeMap::new() }
    }

    fn check_factor(&self, f: &BinomialFactor<R::Elem>) -> Result<(), LaurentError> {
        let n = self.num.n_vars();
        if f.num >= n || f.den >= n || f.num == f.den {
            return Err(LaurentError::BadIndex("binomial factor out of range".into()));
        }
        if f.unit.params.len() != self.num.n_params() {
            return Err(LaurentError::ModeMismatch);
        }
        Ok(())
    }

    pub fn numerator(&self) -> &Laurent<R> {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<BinomialFactor<R::Elem>, u32> {
        &self.den
    }

    /// Denominator factors listed with multiplicity.
    pub fn denominator_factors(&self) -> Vec<BinomialFactor<R::Elem>> {
        self.den.iter().flat_map(|(f, &m)| std::iter::repeat_n(f.clone(), m as usize)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_empty()
    }

    pub fn zero_like(&self) -> Self {
        Self::from_laurent(self.num.zero_like())
    }

    fn times_missing(&self, target: &BTreeMap<BinomialFactor<R::Elem>, u32>) -> Laurent<R> {
        let mut out = self.num.clone();
        for (f, &m) in target {
            let have = self.den.get(f).copied().unwrap_or(0);
            for _ in have..m {
                out = out.mul_binomial(f);
            }
        }
        out
    }

    fn common_den(&self, other: &Self) -> BTreeMap<BinomialFactor<R::Elem>, u32> {
        let mut den = self.den.clone();
        for (f, &m) in &other.den {
            let e = den.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        den
    }

    /// Sum over the common denominator (max multiplicity of each factor).
    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        if !self.num.same_mode(&other.num) {
            return Err(LaurentError::ModeMismatch);
        }
        let den = self.common_den(other);
        let num = &self.times_missing(&den) + &other.times_missing(&den);
        Ok(Self { num, den })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        let num = self.num.try_mul(&other.num)?;
        let mut den = self.den.clone();
        for (f, &m) in &other.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        Ok(Self { num, den })
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.try_add(&other.neg())
    }

    pub fn mul_laurent(&self, x: &Laurent<R>) -> Result<Self, LaurentError> {
        Ok(Self { num: self.num.try_mul(x)?, den: self.den.clone() })
    }

    /// Adds `f` to the denominator.
    pub fn div_binomial(&self, f: BinomialFactor<R::Elem>) -> Result<Self, LaurentError> {
        self.check_factor(&f)?;
        let mut out = self.clone();
        *out.den.entry(f).or_insert(0) += 1;
        Ok(out)
    }

    /// Equality as rational functions, by cross-multiplication. Binomials
    /// with constant term 1 are not zero divisors, so this is exact.
    pub fn value_eq(&self, other: &Self) -> bool {
        if !self.num.same_mode(&other.num) {
            return false;
        }
        let den = self.common_den(other);
        self.times_missing(&den) == other.times_missing(&den)
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn reduce(&self) -> Self {
        let mut num = self.num.clone();
        let mut den = BTreeMap::new();
        for (f, &m) in &self.den {
            let mut left = m;
            while left > 0 {
                match num.divide_exact(f) {
                    Ok(q) => {
                        num = q;
                        left -= 1;
                    }
                    Err(_) => break,
                }
            }
            if left > 0 {
                den.insert(f.clone(), left);
            }
        }
        Self { num, den }
    }

    /// Divides the numerator by every denominator factor, or reports the
    /// first factor that does not divide.
    pub fn to_laurent(&self) -> Result<Laurent<R>, BinomialFactor<R::Elem>> {
        let mut num = self.num.clone();
        for f in self.denominator_factors() {
            num = num.divide_exact(&f).map_err(|_| f.clone())?;
        }
        Ok(num)
    }

    /// Rewrites every factor with `num > den` via
    /// `1/(1 - c·z_a/z_b) = (-c⁻¹ z_b/z_a) / (1 - c⁻¹ z_b/z_a)`, so that
    /// `(1 - c·z_a/z_b)` and `(1 - c⁻¹·z_b/z_a)` share one canonical form.
    pub fn oriented(&self) -> Self {
        let ring = self.num.ring();
        let mut unit = UnitCoeff::one(ring, self.num.n_params());
        let mut shift = vec![0; self.num.n_vars()];
        let mut den = BTreeMap::new();
        for (f, &m) in &self.den {
            if f.num < f.den {
                *den.entry(f.clone()).or_insert(0) += m;
                continue;
            }
            let inv = f.unit.inverse();
            unit = unit.mul(ring, &inv.neg(ring).pow(ring, m as i32));
            shift[f.den] += m as i32;
            shift[f.num] -= m as i32;
            *den.entry(BinomialFactor { unit: inv, num: f.den, den: f.num }).or_insert(0) += m;
        }
        let num = if unit.is_one(ring) && shift.iter().all(|&s| s == 0) { self.num.clone() } else { self.num.mul_unit(&unit, &shift) };
        Self { num, den }
    }

    pub fn permute(&self, perm: &[usize]) -> Result<Self, LaurentError> {
        self.num.check_perm(perm)?;
        Ok(self.permute_unchecked(perm))
    }

    pub(crate) fn permute_unchecked(&self, perm: &[usize]) -> Self {
        let ring = self.num.ring();
        let mut den = BTreeMap::new();
        for (f, &m) in &self.den {
            *den.entry(f.permute(ring, perm)).or_insert(0) += m;
        }
        Self { num: self.num.permute_unchecked(perm), den }
    }
}

impl<R: CoeffRing> From<Laurent<R>> for RatElem<R> {
    fn from(x: Laurent<R>) -> Self {
        Self::from_laurent(x)
    }
}
