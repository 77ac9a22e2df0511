use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ConditionError, WheelIdeal};
use crate::equivariant::{check_triple, Ordering, TorusPoly};
use crate::laurent::{CoeffRing, Integers, Laurent};
use crate::linalg::{EchelonSolver, SparseRow};
use crate::scalar::Scalar;

/// Default limit on the number of unknowns in [`membership_oracle`].
pub const DEFAULT_MAX_UNKNOWNS: usize = 20_000;

/// Inclusive exponent bounds for every variable and parameter slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleBox {
    pub lo: Vec<i32>,
    pub hi: Vec<i32>,
    pub max_unknowns: usize,
}

impl OracleBox {
    /// The same range `[lo, hi]` in every slot.
    pub fn cube(width: usize, lo: i32, hi: i32) -> Self {
        Self { lo: vec![lo; width], hi: vec![hi; width], max_unknowns: DEFAULT_MAX_UNKNOWNS }
    }

    fn monomials(&self) -> Vec<Vec<i32>> {
        let mut out = vec![Vec::new()];
        for (lo, hi) in self.lo.iter().zip(&self.hi) {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (*lo..=*hi).map(move |e| {
                        let mut m = m.clone();
                        m.push(e);
                        m
                    })
                })
                .collect();
        }
        out
    }

    fn count(&self) -> usize {
        self.lo.iter().zip(&self.hi).map(|(l, h)| (h - l + 1).max(0) as usize).product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// A combination with multipliers supported in the box exists.
    /// `integral` records whether the certificate found has integer entries.
    Certified { integral: bool },
    /// No combination with multipliers supported in the box.
    NotInBox,
}

impl OracleOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, OracleOutcome::Certified { .. })
    }
}

/// Decides whether `x = Σ a_m g_m` with every `a_m` supported in `bounds`,
/// by an exact linear solve over ℚ in the coordinates of the coefficient
/// ring.
pub fn membership_oracle<R: CoeffRing>(
    x: &Laurent<R>,
    generators: &[Laurent<R>],
    bounds: &OracleBox,
) -> Result<OracleOutcome, ConditionError> {
    let ring = x.ring();
    let width = x.width();
    if bounds.lo.len() != width || bounds.hi.len() != width {
        return Err(ConditionError::RingMismatch);
    }
    for g in generators {
        if !g.same_mode(x) {
            return Err(crate::laurent::LaurentError::ModeMismatch.into());
        }
    }
    let d = ring.rank();
    let unknowns = generators.len() * bounds.count() * d;
    if unknowns > bounds.max_unknowns {
        return Err(ConditionError::BoxTooLarge { unknowns, limit: bounds.max_unknowns });
    }
    let monos = bounds.monomials();
    let mut rows: BTreeMap<(Vec<i32>, usize), SparseRow> = BTreeMap::new();
    let mut col = 0usize;
    for g in generators {
        for m in &monos {
            for b in 0..d {
                let basis = ring.basis_elem(b);
                for (e, c) in g.terms() {
                    let ne: Vec<i32> = e.iter().zip(m).map(|(a, s)| crate::laurent::add_exp(*a, *s)).collect();
                    for (idx, v) in ring.coords(&ring.mul(c, &basis)) {
                        let entry = rows.entry((ne.clone(), idx)).or_default().entry(col).or_insert_with(BigRational::zero);
                        *entry += v.to_rational();
                    }
                }
                col += 1;
            }
        }
    }
    let mut rhs: BTreeMap<(Vec<i32>, usize), BigRational> = BTreeMap::new();
    for (e, c) in x.terms() {
        for (idx, v) in ring.coords(c) {
            rhs.insert((e.clone(), idx), v.to_rational());
        }
    }
    if rhs.keys().any(|key| !rows.contains_key(key)) {
        return Ok(OracleOutcome::NotInBox);
    }
    let mut solver = EchelonSolver::new(col);
    for (key, row) in rows {
        let b = rhs.get(&key).cloned().unwrap_or_else(BigRational::zero);
        solver.push(row, b);
        if !solver.is_consistent() {
            return Ok(OracleOutcome::NotInBox);
        }
    }
    match solver.solution() {
        Some(sol) => Ok(OracleOutcome::Certified { integral: sol.iter().all(|v| v.is_integer()) }),
        None => Ok(OracleOutcome::NotInBox),
    }
}

/// `z_k - q_x z_j` and `z_j - q_y z_i`.
pub fn comm_generators(n: usize, triple: (usize, usize, usize), ordering: Ordering) -> Result<[TorusPoly; 2], ConditionError> {
    check_triple(n, triple)?;
    let (i, j, k) = triple;
    let (qx, qy) = match ordering {
        Ordering::Q1Q2 => ([1, 0], [0, 1]),
        Ordering::Q2Q1 => ([0, 1], [1, 0]),
    };
    let mono = |v: usize, q: [i32; 2]| {
        let mut e = vec![0; n + 2];
        e[v] = 1;
        e[n] = q[0];
        e[n + 1] = q[1];
        Laurent::monomial(Integers::new(), n, 2, e, One::one())
    };
    Ok([&mono(k, [0, 0]) - &mono(j, qx), &mono(j, [0, 0]) - &mono(i, qy)])
}

/// The two generators of a wheel ideal, for use with the oracle.
pub fn surface_generators<R: CoeffRing>(ideal: &WheelIdeal<R>, triple: (usize, usize, usize)) -> Result<[Laurent<R>; 2], ConditionError> {
    check_triple(ideal.c1.n_vars(), triple)?;
    Ok(ideal.generators(triple))
}

