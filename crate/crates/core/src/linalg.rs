//! Exact sparse linear solving over the rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// A sparse row: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, BigRational>;

/// Incremental row-echelon solver for `A x = b` over ℚ.
///
/// Every stored pivot row has its pivot as its smallest column and pivot
/// entry one. Inconsistent systems are detected as soon as an equation
/// reduces to `0 = c` with `c != 0`.
#[derive(Debug, Clone)]
pub struct EchelonSolver {
    ncols: usize,
    pivots: BTreeMap<usize, (SparseRow, BigRational)>,
    inconsistent: bool,
}

impl EchelonSolver {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, pivots: BTreeMap::new(), inconsistent: false }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Adds the equation `row · x = rhs`.
    pub fn push(&mut self, mut row: SparseRow, mut rhs: BigRational) {
        if self.inconsistent {
            return;
        }
        row.retain(|c, v| {
            debug_assert!(*c < self.ncols);
            !v.is_zero()
        });
        let mut cursor = 0usize;
        loop {
            let Some((&col, _)) = row.range(cursor..).next() else {
                if !rhs.is_zero() {
                    self.inconsistent = true;
                }
                return;
            };
            match self.pivots.get(&col) {
                Some((prow, prhs)) => {
                    let factor = row.remove(&col).unwrap();
                    for (c, v) in prow.range(col + 1..) {
                        let entry = row.entry(*c).or_insert_with(BigRational::zero);
                        *entry -= &factor * v;
                        if entry.is_zero() {
                            row.remove(c);
                        }
                    }
                    rhs -= &factor * prhs;
                    cursor = col + 1;
                }
                None => {
                    let lead = row[&col].clone();
                    if !lead.is_one() {
                        for v in row.values_mut() {
                            *v /= &lead;
                        }
                        rhs /= &lead;
                    }
                    self.pivots.insert(col, (row, rhs));
                    return;
                }
            }
        }
    }

    /// A particular solution with all free variables set to zero.
    pub fn solution(&self) -> Option<Vec<BigRational>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.ncols];
        for (&col, (row, rhs)) in self.pivots.iter().rev() {
            let mut val = rhs.clone();
            for (c, v) in row.range(col + 1..) {
                if !x[*c].is_zero() {
                    val -= v * &x[*c];
                }
            }
            x[col] = val;
        }
        Some(x)
    }
}

/// Solves a dense square or rectangular system; `None` if inconsistent.
pub fn solve_dense(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut solver = EchelonSolver::new(ncols);
    for (row, b) in rows.iter().zip(rhs) {
        let sparse: SparseRow = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        solver.push(sparse, b.clone());
    }
    solver.solution()
}
