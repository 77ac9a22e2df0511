use itertools::Itertools;

use super::poly::Laurent;
use super::rational::RatElem;
use super::ring::{CoeffRing, SlotAction};
use super::LaurentError;

/// All permutations of `0..n`, lexicographic.
pub fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).permutations(n)
}

/// The transposition of `i` and `j` in `S_n`.
pub fn transposition(n: usize, i: usize, j: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i, j);
    p
}

impl<R: CoeffRing> Laurent<R> {
    /// `Σ_{σ ∈ S_n} σ·x` (a sum, not an average).
    pub fn symmetrize(&self) -> Result<Self, LaurentError> {
        let n = self.n_vars();
        self.check_perm(&(0..n).collect::<Vec<_>>())?;
        let slots = matches!(self.ring().slot_action(), SlotAction::Slots(_));
        let mut out = self.zero_like();
        for perm in permutations(n) {
            for (e, c) in self.terms() {
                let c = if slots { self.ring().permute_slots(c, &perm) } else { c.clone() };
                out.add_term(self.permute_exp(e, &perm), c);
            }
        }
        Ok(out)
    }

    /// Invariance under the adjacent transpositions.
    pub fn is_symmetric(&self) -> Result<bool, LaurentError> {
        let n = self.n_vars();
        self.check_perm(&(0..n).collect::<Vec<_>>())?;
        Ok((0..n.saturating_sub(1)).all(|i| self.permute_unchecked(&transposition(n, i, i + 1)) == *self))
    }
}

impl<R: CoeffRing> RatElem<R> {
    /// `Σ_{σ ∈ S_n} σ·x` over the common denominator.
    pub fn symmetrize(&self) -> Result<Self, LaurentError> {
        let n = self.numerator().n_vars();
        self.numerator().check_perm(&(0..n).collect::<Vec<_>>())?;
        let mut out = self.zero_like();
        for perm in permutations(n) {
            out = out.try_add(&self.permute_unchecked(&perm))?;
        }
        Ok(out)
    }

    /// Invariance under adjacent transpositions, compared as rational
    /// functions.
    pub fn is_symmetric(&self) -> Result<bool, LaurentError> {
        let n = self.numerator().n_vars();
        self.numerator().check_perm(&(0..n).collect::<Vec<_>>())?;
        Ok((0..n.saturating_sub(1)).all(|i| self.permute_unchecked(&transposition(n, i, i + 1)).value_eq(self)))
    }
}
