use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::sparse::{self, Coords};
use super::RingError;
use crate::linalg;
use crate::scalar::Scalar;

/// Largest rank `tensor_power` builds unless asked otherwise.
pub const DEFAULT_MAX_TENSOR_RANK: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Product<T: Scalar> {
    /// `table[i * d + j]` is `e_i · e_j`.
    Table(Vec<Coords<T>>),
    /// Slot-wise multiplication on `base^{⊗factors}`. Basis indices are
    /// row-major in the slots: slot 0 is the most significant digit.
    Tensor { base: Arc<RingModel<T>>, factors: usize },
}

/// A commutative unital ring, free of finite rank over ℤ, given by
/// structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingModel<T: Scalar> {
    rank: usize,
    basis: Vec<String>,
    unit: Coords<T>,
    product: Product<T>,
}

/// One failed ring axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Commutativity { i: usize, j: usize },
    Associativity { i: usize, j: usize, k: usize },
    Unit { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Commutativity { i, j } => write!(f, "commutativity fails for (e{i}, e{j})"),
            Violation::Associativity { i, j, k } => {
                write!(f, "associativity fails for (e{i}, e{j}, e{k})")
            }
            Violation::Unit { i } => write!(f, "unit * e{i} != e{i}"),
        }
    }
}

/// Result of the exhaustive axiom check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub associativity_checks: usize,
    pub commutativity_checks: usize,
    pub unit_checks: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn total_checks(&self) -> usize {
        self.associativity_checks + self.commutativity_checks + self.unit_checks
    }
}

impl<T: Scalar> RingModel<T> {
    /// Builds a model from the upper triangle of its multiplication table.
    ///
    /// `table` must contain an entry for every `i <= j`; the lower triangle is
    /// filled in by symmetry. Ring axioms are not checked here, see
    /// [`RingModel::validate`].
    pub fn from_table(
        basis: Vec<String>,
        table: &BTreeMap<(usize, usize), Vec<T>>,
        unit: Vec<T>,
    ) -> Result<Self, RingError> {
        let d = basis.len();
        if d == 0 {
            return Err(RingError::Shape("rank must be positive".into()));
        }
        if unit.len() != d {
            return Err(RingError::Shape(format!("unit has length {}, expected {d}", unit.len())));
        }
        let mut products = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in i..d {
                let v = table
                    .get(&(i, j))
                    .ok_or_else(|| RingError::Shape(format!("missing product e{i}*e{j}")))?;
                if v.len() != d {
                    return Err(RingError::Shape(format!(
                        "product e{i}*e{j} has length {}, expected {d}",
                        v.len()
                    )));
                }
                let s = sparse::from_dense(v);
                products[i * d + j] = s.clone();
                products[j * d + i] = s;
            }
        }
        if let Some(&(i, j)) = table.keys().find(|(i, j)| i > j || *j >= d) {
            return Err(RingError::Shape(format!("unexpected table entry ({i}, {j})")));
        }
        Ok(Self { rank: d, basis, unit: sparse::from_dense(&unit), product: Product::Table(products) })
    }

    /// The rank-one model of ℤ.
    pub fn integers() -> Self {
        let mut table = BTreeMap::new();
        table.insert((0, 0), vec![T::one()]);
        Self::from_table(vec!["1".into()], &table, vec![T::one()]).expect("valid shape")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis_name(&self, i: usize) -> String {
        match &self.product {
            Product::Table(_) => self.basis[i].clone(),
            Product::Tensor { base, factors } => {
                let digits = digits(i, base.rank, *factors);
                digits.iter().map(|&k| base.basis_name(k)).collect::<Vec<_>>().join("⊗")
            }
        }
    }

    /// Names of the generating basis: the table basis, or the base basis for
    /// a tensor power.
    pub fn base_basis(&self) -> &[String] {
        match &self.product {
            Product::Table(_) => &self.basis,
            Product::Tensor { base, .. } => base.base_basis(),
        }
    }

    pub fn unit(&self) -> &Coords<T> {
        &self.unit
    }

    pub fn unit_dense(&self) -> Vec<T> {
        sparse::to_dense(&self.unit, self.rank)
    }

    /// `Some((base, n))` when this model was built as `base^{⊗n}`.
    pub fn tensor_factors(&self) -> Option<(&Arc<RingModel<T>>, usize)> {
        match &self.product {
            Product::Table(_) => None,
            Product::Tensor { base, factors } => Some((base, *factors)),
        }
    }

    /// `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Coords<T> {
        match &self.product {
            Product::Table(t) => t[i * self.rank + j].clone(),
            Product::Tensor { base, factors } => {
                let di = digits(i, base.rank, *factors);
                let dj = digits(j, base.rank, *factors);
                let mut acc: Vec<(usize, T)> = vec![(0, T::one())];
                for (a, b) in di.iter().zip(&dj) {
                    let slot = base.basis_product(*a, *b);
                    let mut next = Vec::with_capacity(acc.len() * slot.len());
                    for (idx, c) in &acc {
                        for (k, v) in &slot {
                            next.push((idx * base.rank + k, c.clone() * v));
                        }
                    }
                    acc = next;
                }
                sparse::collect(acc)
            }
        }
    }

    /// Dense structure constants of `e_i · e_j`.
    pub fn structure_constants(&self, i: usize, j: usize) -> Vec<T> {
        sparse::to_dense(&self.basis_product(i, j), self.rank)
    }

    pub fn mul(&self, a: &[(usize, T)], b: &[(usize, T)]) -> Coords<T> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut acc = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                let xy = x.clone() * y;
                for (k, c) in self.basis_product(*i, *j) {
                    acc.push((k, c * &xy));
                }
            }
        }
        sparse::collect(acc)
    }

    /// Multiplication matrix of `x`: column `j` holds `x · e_j`.
    fn mul_matrix(&self, x: &[(usize, T)]) -> Vec<Vec<T>> {
        let d = self.rank;
        let mut m = vec![vec![T::zero(); d]; d];
        for j in 0..d {
            for (k, c) in self.mul(x, &[(j, T::one())]) {
                m[k][j] = c;
            }
        }
        m
    }

    /// Multiplicative inverse with integer coordinates, if it exists.
    pub fn invert(&self, x: &[(usize, T)]) -> Option<Coords<T>> {
        let m = self.mul_matrix(x);
        let rows: Vec<Vec<BigRational>> =
            m.iter().map(|r| r.iter().map(Scalar::to_rational).collect()).collect();
        let rhs: Vec<BigRational> = self.unit_dense().iter().map(Scalar::to_rational).collect();
        let sol = linalg::solve_dense(&rows, &rhs)?;
        let dense: Option<Vec<T>> = sol.iter().map(T::from_rational).collect();
        let y = sparse::from_dense(&dense?);
        (self.mul(x, &y) == self.unit).then_some(y)
    }

    /// Exhaustive check of commutativity, associativity and the unit law on
    /// basis elements.
    pub fn validate(&self) -> ValidationReport {
        let d = self.rank;
        let mut report = ValidationReport::default();
        let products: Vec<Coords<T>> =
            (0..d * d).map(|ij| self.basis_product(ij / d, ij % d)).collect();
        for i in 0..d {
            for j in 0..d {
                report.commutativity_checks += 1;
                if products[i * d + j] != products[j * d + i] {
                    report.violations.push(Violation::Commutativity { i, j });
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    report.associativity_checks += 1;
                    let left = self.mul(&products[i * d + j], &[(k, T::one())]);
                    let right = self.mul(&[(i, T::one())], &products[j * d + k]);
                    if left != right {
                        report.violations.push(Violation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..d {
            report.unit_checks += 1;
            if self.mul(&self.unit, &[(i, T::one())]) != vec![(i, T::one())] {
                report.violations.push(Violation::Unit { i });
            }
        }
        report
    }

    /// Number of tensor slots, or `None` for a model not built as a power.
    pub fn slot_count(&self) -> Option<usize> {
        self.tensor_factors().map(|(_, n)| n)
    }

    fn tensor_parts(&self) -> Result<(&Arc<RingModel<T>>, usize), RingError> {
        self.tensor_factors().ok_or(RingError::NotTensorPower)
    }

    /// Moves the content of slot `s` to slot `perm[s]`.
    pub fn permute_slots(&self, x: &[(usize, T)], perm: &[usize]) -> Result<Coords<T>, RingError> {
        let (base, n) = self.tensor_parts()?;
        if perm.len() != n {
            return Err(RingError::Shape(format!("permutation of length {} on {n} slots", perm.len())));
        }
        let d = base.rank;
        let mut out = Vec::with_capacity(x.len());
        let mut moved = vec![0usize; n];
        for (i, c) in x {
            let dig = digits(*i, d, n);
            for (s, &k) in dig.iter().enumerate() {
                moved[perm[s]] = k;
            }
            out.push((undigits(&moved, d), c.clone()));
        }
        Ok(sparse::collect(out))
    }

    /// Places base-ring elements into the given slots, with the unit in all
    /// other slots.
    pub fn place(&self, parts: &[(usize, &[(usize, T)])]) -> Result<Coords<T>, RingError> {
        let (base, n) = self.tensor_parts()?;
        let mut slots: Vec<&[(usize, T)]> = vec![base.unit.as_slice(); n];
        for (s, e) in parts {
            if *s >= n {
                return Err(RingError::Shape(format!("slot {s} out of range for {n} slots")));
            }
            slots[*s] = e;
        }
        Ok(outer_many(base.rank, &slots))
    }

    /// Places an element of `base ⊗ base` into slots `(i, j)`.
    pub fn place_pair(&self, pair: &[(usize, T)], i: usize, j: usize) -> Result<Coords<T>, RingError> {
        let (base, n) = self.tensor_parts()?;
        if i == j || i >= n || j >= n {
            return Err(RingError::Shape(format!("bad slot pair ({i}, {j}) for {n} slots")));
        }
        let d = base.rank;
        let mut out = Vec::new();
        for (idx, c) in pair {
            let (a, b) = (idx / d, idx % d);
            if *idx >= d * d {
                return Err(RingError::Shape("pair coordinate out of range".into()));
            }
            let ea = [(a, T::one())];
            let eb = [(b, T::one())];
            for (k, v) in self.place(&[(i, &ea), (j, &eb)])? {
                out.push((k, v * c));
            }
        }
        Ok(sparse::collect(out))
    }

    /// Multiplies the contents of `slots` together in the base ring and keeps
    /// the product in the smallest of them; the remaining slots keep their
    /// order. The result lives in `base^{⊗(n - slots.len() + 1)}`.
    pub fn merge_slots(
        self: &Arc<Self>,
        x: &[(usize, T)],
        slots: &[usize],
    ) -> Result<(Arc<RingModel<T>>, Coords<T>), RingError> {
        let (base, n) = self.tensor_parts()?;
        let mut sorted = slots.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != slots.len() || sorted.iter().any(|&s| s >= n) || sorted.is_empty() {
            return Err(RingError::Shape(format!("bad slot set {slots:?} for {n} slots")));
        }
        let keep = sorted[0];
        let m = n - sorted.len() + 1;
        let target = tensor_power_unchecked(base, m);
        let d = base.rank;
        let mut out = Vec::new();
        for (i, c) in x {
            let dig = digits(*i, d, n);
            let mut merged: Coords<T> = vec![(dig[sorted[0]], T::one())];
            for &s in &sorted[1..] {
                merged = base.mul(&merged, &[(dig[s], T::one())]);
            }
            let rest: Vec<usize> = (0..n).filter(|s| !sorted[1..].contains(s)).collect();
            for (k, v) in merged {
                let nd: Vec<usize> = rest.iter().map(|&s| if s == keep { k } else { dig[s] }).collect();
                out.push((undigits(&nd, d), v * c));
            }
        }
        Ok((target, sparse::collect(out)))
    }

    /// Outer product `a ⊗ b` of elements of `base^{⊗n}` and `base^{⊗m}`,
    /// living in `base^{⊗(n+m)}` (which must be `self`).
    pub fn outer(&self, a: &[(usize, T)], b: &[(usize, T)], b_rank: usize) -> Coords<T> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for (i, x) in a {
            for (j, y) in b {
                out.push((i * b_rank + j, x.clone() * y));
            }
        }
        sparse::collect(out)
    }
}

fn outer_many<T: Scalar>(d: usize, slots: &[&[(usize, T)]]) -> Coords<T> {
    let mut acc: Vec<(usize, T)> = vec![(0, T::one())];
    for s in slots {
        let mut next = Vec::with_capacity(acc.len() * s.len());
        for (idx, c) in &acc {
            for (k, v) in s.iter() {
                next.push((idx * d + k, c.clone() * v));
            }
        }
        acc = next;
    }
    sparse::collect(acc)
}

/// Row-major digits of `i` in base `d` with `n` places.
pub(crate) fn digits(mut i: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for s in (0..n).rev() {
        out[s] = i % d;
        i /= d;
    }
    out
}

pub(crate) fn undigits(dig: &[usize], d: usize) -> usize {
    dig.iter().fold(0, |acc, &k| acc * d + k)
}

/// `model^{⊗n}` with the default rank bound.
pub fn tensor_power<T: Scalar>(model: &Arc<RingModel<T>>, n: usize) -> Result<Arc<RingModel<T>>, RingError> {
    tensor_power_bounded(model, n, DEFAULT_MAX_TENSOR_RANK)
}

/// `model^{⊗n}`, refusing ranks above `max_rank`.
///
/// Basis indices are row-major over slots: `e_{i_1} ⊗ … ⊗ e_{i_n}` has index
/// `((i_1 d + i_2) d + …) d + i_n`. A tensor power of a tensor power is
/// flattened into a single power of the underlying table.
pub fn tensor_power_bounded<T: Scalar>(
    model: &Arc<RingModel<T>>,
    n: usize,
    max_rank: usize,
) -> Result<Arc<RingModel<T>>, RingError> {
    if n == 0 {
        return Err(RingError::Shape("tensor power exponent must be positive".into()));
    }
    let (base, factors) = match model.tensor_factors() {
        Some((b, k)) => (b.clone(), k * n),
        None => (model.clone(), n),
    };
    let rank = checked_rank(base.rank, factors).filter(|r| *r <= max_rank);
    if rank.is_none() {
        return Err(RingError::RankOverflow { base: base.rank, exponent: factors, bound: max_rank });
    }
    Ok(tensor_power_unchecked(&base, factors))
}

fn checked_rank(d: usize, n: usize) -> Option<usize> {
    (0..n).try_fold(1usize, |acc, _| acc.checked_mul(d))
}

/// Tensor power without bound checks; `n = 0` yields the rank-one ring.
pub(crate) fn tensor_power_unchecked<T: Scalar>(base: &Arc<RingModel<T>>, n: usize) -> Arc<RingModel<T>> {
    let base = match base.tensor_factors() {
        Some((b, 1)) => b.clone(),
        _ => base.clone(),
    };
    let rank = base.rank.pow(n as u32);
    let units: Vec<&[(usize, T)]> = vec![base.unit.as_slice(); n];
    let unit = outer_many(base.rank, &units);
    Arc::new(RingModel {
        rank,
        basis: Vec::new(),
        unit,
        product: Product::Tensor { base, factors: n },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffrings::builtin_kp2;
    use num_bigint::BigInt;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn integers_model_is_valid() {
        let z = RingModel::<i64>::integers();
        assert!(z.validate().is_valid());
    }

    #[test]
    fn kp2_basis_products() {
        let surf = builtin_kp2();
        let m = surf.ring();
        assert_eq!(m.basis_product(1, 1), vec![(2, b(1))]);
        assert!(m.basis_product(1, 2).is_empty());
        assert!(m.basis_product(2, 2).is_empty());
    }

    #[test]
    fn invert_cases() {
        let surf = builtin_kp2();
        let m = surf.ring();
        assert_eq!(m.invert(m.unit()), Some(m.unit().clone()));
        let l = vec![(0, b(1)), (1, b(1))];
        assert_eq!(m.invert(&l), Some(vec![(0, b(1)), (1, b(-1)), (2, b(1))]));
        assert_eq!(m.invert(&[(1, b(1))]), None);
        // 2 is invertible over ℚ but not over ℤ
        assert_eq!(m.invert(&[(0, b(2))]), None);
    }

    #[test]
    fn tensor_square_slotwise() {
        let surf = builtin_kp2();
        let sq = tensor_power(surf.ring(), 2).unwrap();
        assert_eq!(sq.rank(), 9);
        // (s⊗1)·(1⊗s) = s⊗s
        let s1 = sq.place(&[(0, &[(1, b(1))])]).unwrap();
        let s2 = sq.place(&[(1, &[(1, b(1))])]).unwrap();
        assert_eq!(sq.mul(&s1, &s2), vec![(4, b(1))]);
        assert_eq!(sq.basis_name(5), "s⊗s2");
    }

    #[test]
    fn tensor_power_rank_guard() {
        let surf = builtin_kp2();
        let err = tensor_power_bounded(surf.ring(), 5, 100).unwrap_err();
        assert!(matches!(err, RingError::RankOverflow { .. }));
        assert!(tensor_power(surf.ring(), 0).is_err());
    }

    #[test]
    fn tensor_power_of_integers_is_rank_one() {
        let z = Arc::new(RingModel::<i64>::integers());
        let z5 = tensor_power(&z, 5).unwrap();
        assert_eq!(z5.rank(), 1);
        assert!(z5.validate().is_valid());
        assert_eq!(z5.basis_product(0, 0), vec![(0, 1)]);
    }

    #[test]
    fn permute_slots_moves_content() {
        let surf = builtin_kp2();
        let cube = tensor_power(surf.ring(), 3).unwrap();
        let (s, s2) = ([(1usize, b(1))], [(2usize, b(1))]);
        let x = cube.place(&[(0, &s), (1, &s2)]).unwrap(); // s⊗s2⊗1
        let y = cube.permute_slots(&x, &[2, 0, 1]).unwrap();
        assert_eq!(y, cube.place(&[(2, &s), (0, &s2)]).unwrap()); // s2⊗1⊗s
        assert_eq!(cube.permute_slots(&y, &[1, 2, 0]).unwrap(), x);
    }

    #[test]
    fn merge_slots_multiplies() {
        let surf = builtin_kp2();
        let cube = tensor_power(surf.ring(), 3).unwrap();
        let s = [(1usize, b(1))];
        let ssu = cube.place(&[(0, &s), (1, &s)]).unwrap();
        let (one, merged) = cube.merge_slots(&ssu, &[0, 1, 2]).unwrap();
        assert_eq!(one.rank(), 3);
        assert_eq!(merged, vec![(2, b(1))]);
        let sss = cube.place(&[(0, &s), (1, &s), (2, &s)]).unwrap();
        assert!(cube.merge_slots(&sss, &[0, 1, 2]).unwrap().1.is_empty());
    }

    #[test]
    fn digits_roundtrip() {
        for i in 0..27 {
            assert_eq!(undigits(&digits(i, 3, 3), 3), i);
        }
        assert_eq!(digits(5, 3, 2), vec![1, 2]);
    }
}
