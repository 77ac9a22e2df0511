//! Torus weights of `gl_n ⊕ gl_n`, coordinate subspaces of the commuting
//! variety, their Koszul restriction classes, and membership in the ideals
//! `(z_k - q·z_j, z_j - q'·z_i)`.
//!
//! Indices are 0-based in the API and 1-based in printed output.

mod campaign;
mod enumerate;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::laurent::{add_exp, scale_exp, Integers, Laurent, LaurentError, UnitCoeff};

pub use campaign::{comm3_campaign, CampaignConfig, CampaignReport, CheckLine, OrderingTally, Subject};
pub use enumerate::{enumerate_comm_subspaces, enumerate_comm_subspaces_brute};

/// `ℤ[q₁^±, q₂^±][z^±]`: integer coefficients with two parameter slots.
pub type TorusPoly = Laurent<Integers<BigInt>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivariantError {
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("subspaces live in different gl_n")]
    SizeMismatch,
    #[error("triple indices must be distinct and below {0}")]
    BadTriple(usize),
    #[error("index pair out of range")]
    OutOfRange,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// A coordinate of `gl_n ⊕ gl_n`: `X(a, b)` is `(E_ab, 0)`, `Y(c, d)` is
/// `(0, E_cd)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    X(usize, usize),
    Y(usize, usize),
}

/// The character `q₁^{q[0]} q₂^{q[1]} ∏ z_i^{z[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightMonomial {
    pub q: [i32; 2],
    pub z: Vec<i32>,
}

impl WeightMonomial {
    pub fn of(n: usize, c: Coord) -> Self {
        let (q, a, b) = match c {
            Coord::X(a, b) => ([1, 0], a, b),
            Coord::Y(a, b) => ([0, 1], a, b),
        };
        let mut z = vec![0; n];
        z[a] += 1;
        z[b] -= 1;
        Self { q, z }
    }

    pub fn inverse(&self) -> Self {
        Self { q: [-self.q[0], -self.q[1]], z: self.z.iter().map(|e| -e).collect() }
    }

    /// Exponent vector in the torus layout `[z…, q₁, q₂]`.
    pub fn exponent(&self) -> Vec<i32> {
        let mut e = self.z.clone();
        e.extend_from_slice(&self.q);
        e
    }

    pub fn to_poly(&self) -> TorusPoly {
        Laurent::monomial(Integers::new(), self.z.len(), 2, self.exponent(), BigInt::from(1))
    }
}

/// Weights of all `2n²` coordinates: the X block row-major, then the Y block.
pub fn weights_of_glpair(n: usize) -> Vec<WeightMonomial> {
    all_coords(n).into_iter().map(|c| WeightMonomial::of(n, c)).collect()
}

pub fn all_coords(n: usize) -> Vec<Coord> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    pairs.iter().map(|&(a, b)| Coord::X(a, b)).chain(pairs.iter().map(|&(a, b)| Coord::Y(a, b))).collect()
}

/// `[E_ab, E_cd] = 0`.
pub fn coords_commute(x: (usize, usize), y: (usize, usize)) -> bool {
    let ((a, b), (c, d)) = (x, y);
    (b != c && d != a) || (a == b && b == c && c == d)
}

/// A torus-stable subspace of `gl_n ⊕ gl_n` spanned by elementary matrices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordSubspace {
    n: usize,
    a: BTreeSet<(usize, usize)>,
    b: BTreeSet<(usize, usize)>,
}

impl CoordSubspace {
    pub fn new(
        n: usize,
        a: impl IntoIterator<Item = (usize, usize)>,
        b: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, EquivariantError> {
        let a: BTreeSet<_> = a.into_iter().collect();
        let b: BTreeSet<_> = b.into_iter().collect();
        if a.iter().chain(&b).any(|&(i, j)| i >= n || j >= n) {
            return Err(EquivariantError::OutOfRange);
        }
        Ok(Self { n, a, b })
    }

    pub fn zero(n: usize) -> Self {
        Self { n, a: BTreeSet::new(), b: BTreeSet::new() }
    }

    pub fn full(n: usize) -> Self {
        let all: BTreeSet<_> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        Self { n, a: all.clone(), b: all }
    }

    pub fn from_coords(n: usize, coords: impl IntoIterator<Item = Coord>) -> Result<Self, EquivariantError> {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for c in coords {
            match c {
                Coord::X(i, j) => a.push((i, j)),
                Coord::Y(i, j) => b.push((i, j)),
            }
        }
        Self::new(n, a, b)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set_a(&self) -> &BTreeSet<(usize, usize)> {
        &self.a
    }

    pub fn set_b(&self) -> &BTreeSet<(usize, usize)> {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn coords(&self) -> impl Iterator<Item = Coord> + '_ {
        self.a.iter().map(|&(i, j)| Coord::X(i, j)).chain(self.b.iter().map(|&(i, j)| Coord::Y(i, j)))
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.n == other.n && other.a.is_subset(&self.a) && other.b.is_subset(&self.b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, EquivariantError> {
        if self.n != other.n {
            return Err(EquivariantError::SizeMismatch);
        }
        Ok(Self {
            n: self.n,
            a: self.a.intersection(&other.a).copied().collect(),
            b: self.b.intersection(&other.b).copied().collect(),
        })
    }

    /// The image under `(X, Y) ↦ (Y, X)`.
    pub fn mirror(&self) -> Self {
        Self { n: self.n, a: self.b.clone(), b: self.a.clone() }
    }

    /// Whether the generic element lies in `Comm_n`. Distinct coordinate
    /// pairs contribute distinct monomials to `[X, Y]`, so this is pairwise.
    pub fn is_commuting(&self) -> bool {
        self.a.iter().all(|&x| self.b.iter().all(|&y| coords_commute(x, y)))
    }
}

impl fmt::Display for CoordSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &BTreeSet<(usize, usize)>| s.iter().map(|(i, j)| format!("{}{}", i + 1, j + 1)).collect::<Vec<_>>().join(",");
        write!(f, "A{{{}}} B{{{}}}", show(&self.a), show(&self.b))
    }
}

pub fn is_commuting_subspace(l: &CoordSubspace) -> bool {
    l.is_commuting()
}

/// `∏_{w ∈ wt(M∖L)} (1 - w⁻¹)`.
pub fn koszul_restrict_class(l: &CoordSubspace, m: &CoordSubspace) -> Result<TorusPoly, EquivariantError> {
    if !m.contains(l) {
        return Err(EquivariantError::NotContained);
    }
    let mut acc = Laurent::one(Integers::new(), m.n, 2);
    let missing = m.coords().filter(|c| match c {
        Coord::X(i, j) => !l.a.contains(&(*i, *j)),
        Coord::Y(i, j) => !l.b.contains(&(*i, *j)),
    });
    for c in missing {
        let shift = WeightMonomial::of(m.n, c).inverse().exponent();
        acc = &acc - &acc.shift(&shift);
    }
    Ok(acc)
}

/// Koszul classes relative to a fixed ambient, memoized.
#[derive(Debug, Clone)]
pub struct ClassCache {
    ambient: CoordSubspace,
    classes: HashMap<CoordSubspace, TorusPoly>,
}

impl ClassCache {
    pub fn new(ambient: CoordSubspace) -> Self {
        Self { ambient, classes: HashMap::new() }
    }

    pub fn ambient(&self) -> &CoordSubspace {
        &self.ambient
    }

    pub fn class(&mut self, l: &CoordSubspace) -> Result<TorusPoly, EquivariantError> {
        if let Some(c) = self.classes.get(l) {
            return Ok(c.clone());
        }
        let c = koszul_restrict_class(l, &self.ambient)?;
        self.classes.insert(l.clone(), c.clone());
        Ok(c)
    }

    /// Inclusion–exclusion over intersections of `parts`.
    pub fn union_class(&mut self, parts: &[CoordSubspace]) -> Result<TorusPoly, EquivariantError> {
        if parts.len() >= usize::BITS as usize {
            return Err(EquivariantError::OutOfRange);
        }
        let mut acc = Laurent::zero(Integers::new(), self.ambient.n, 2);
        for mask in 1usize..(1 << parts.len()) {
            let mut idx = (0..parts.len()).filter(|i| mask >> i & 1 == 1);
            let mut inter = parts[idx.next().expect("nonempty mask")].clone();
            for i in idx {
                inter = inter.intersection(&parts[i])?;
            }
            let c = self.class(&inter)?;
            acc = if mask.count_ones() % 2 == 1 { &acc + &c } else { &acc - &c };
        }
        Ok(acc)
    }
}

/// Inclusion–exclusion class of `∪ parts` inside `m`.
pub fn union_class(parts: &[CoordSubspace], m: &CoordSubspace) -> Result<TorusPoly, EquivariantError> {
    ClassCache::new(m.clone()).union_class(parts)
}

/// Which parameter goes with which generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ordering {
    /// `(z_k - q₁ z_j, z_j - q₂ z_i)`
    Q1Q2,
    /// `(z_k - q₂ z_j, z_j - q₁ z_i)`
    Q2Q1,
}

impl Ordering {
    pub const BOTH: [Ordering; 2] = [Ordering::Q1Q2, Ordering::Q2Q1];

    /// The ordering obtained by exchanging `q₁` and `q₂`.
    pub fn mirror(self) -> Self {
        match self {
            Ordering::Q1Q2 => Ordering::Q2Q1,
            Ordering::Q2Q1 => Ordering::Q1Q2,
        }
    }

    fn params(self) -> ([i32; 2], [i32; 2]) {
        match self {
            Ordering::Q1Q2 => ([1, 0], [0, 1]),
            Ordering::Q2Q1 => ([0, 1], [1, 0]),
        }
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ordering::Q1Q2 => "q1q2",
            Ordering::Q2Q1 => "q2q1",
        })
    }
}

impl std::str::FromStr for Ordering {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "q1q2" => Ok(Ordering::Q1Q2),
            "q2q1" => Ok(Ordering::Q2Q1),
            _ => Err(format!("unknown ordering `{s}` (expected q1q2 or q2q1)")),
        }
    }
}

pub fn check_triple(n: usize, (i, j, k): (usize, usize, usize)) -> Result<(), EquivariantError> {
    if i >= n || j >= n || k >= n || i == j || j == k || i == k {
        return Err(EquivariantError::BadTriple(n));
    }
    Ok(())
}

/// All ordered triples of distinct indices below `n`, lexicographic.
pub fn ordered_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// Membership in `(z_k - q_x z_j, z_j - q_y z_i)`: eliminate `z_k`, then `z_j`,
/// and test for zero. Both substitutions are applied in one pass per term.
pub fn comm_wheel_membership(
    x: &TorusPoly,
    triple: (usize, usize, usize),
    ordering: Ordering,
) -> Result<bool, EquivariantError> {
    if x.n_params() != 2 {
        return Err(LaurentError::ModeMismatch.into());
    }
    let n = x.n_vars();
    check_triple(n, triple)?;
    let (i, j, k) = triple;
    let (qx, qy) = ordering.params();
    let mut image: HashMap<Vec<i32>, BigInt> = HashMap::with_capacity(x.len());
    for (e, c) in x.terms() {
        let (ej, ek) = (e[j], e[k]);
        let to_i = add_exp(ej, ek);
        let mut ne = e.clone();
        ne[i] = add_exp(ne[i], to_i);
        ne[j] = 0;
        ne[k] = 0;
        for p in 0..2 {
            ne[n + p] = add_exp(ne[n + p], add_exp(scale_exp(qx[p], ek), scale_exp(qy[p], to_i)));
        }
        *image.entry(ne).or_default() += c;
    }
    Ok(image.values().all(|c| c.sign() == num_bigint::Sign::NoSign))
}

/// Reference version of [`comm_wheel_membership`] built from two calls to
/// [`Laurent::substitute`].
pub fn comm_wheel_membership_stepwise(
    x: &TorusPoly,
    triple: (usize, usize, usize),
    ordering: Ordering,
) -> Result<bool, EquivariantError> {
    let n = x.n_vars();
    check_triple(n, triple)?;
    let (i, j, k) = triple;
    let (qx, qy) = ordering.params();
    let ring = Integers::new();
    let mut to_j = vec![0; n];
    to_j[j] = 1;
    let mut to_i = vec![0; n];
    to_i[i] = 1;
    let y = x.substitute(k, &UnitCoeff::param(&ring, qx.to_vec()), &to_j)?;
    let y = y.substitute(j, &UnitCoeff::param(&ring, qy.to_vec()), &to_i)?;
    Ok(y.is_zero())
}

/// Membership for every ordered triple and both orderings, in that order.
pub fn wheel_table(x: &TorusPoly) -> Result<Vec<((usize, usize, usize), Ordering, bool)>, EquivariantError> {
    let mut out = Vec::new();
    for t in ordered_triples(x.n_vars()) {
        for o in Ordering::BOTH {
            out.push((t, o, comm_wheel_membership(x, t, o)?));
        }
    }
    Ok(out)
}

/// Symmetric and in the intersection of all the ideals (every triple, both
/// orderings).
pub fn symmetric_wheel_check(x: &TorusPoly) -> Result<bool, EquivariantError> {
    if !x.is_symmetric()? {
        return Ok(false);
    }
    Ok(wheel_table(x)?.iter().all(|(_, _, ok)| *ok))
}

/// Exchanges `q₁` and `q₂`.
pub fn swap_q(x: &TorusPoly) -> TorusPoly {
    let n = x.n_vars();
    Laurent::from_terms(
        Integers::new(),
        n,
        2,
        x.terms().map(|(e, c)| {
            let mut e = e.clone();
            e.swap(n, n + 1);
            (e, c.clone())
        }),
    )
}
