//! Cross-validation of the substitution checkers against the linear-algebra
//! oracle on random instances.

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{membership_oracle, wheel_membership, ConditionError, OracleBox, OracleOutcome, WheelIdeal};
use crate::coeffrings::{tensor_power, Coords, KSurfaceModel};
use crate::equivariant::{comm_wheel_membership, ordered_triples, Ordering, TorusPoly};
use crate::laurent::{CoeffRing, Integers, Laurent, ModelRing};

#[derive(Debug, Clone)]
pub struct CrossConfig {
    /// Constructed ideal members `a·f + b·g` per checker.
    pub members: usize,
    /// Random elements per checker.
    pub randoms: usize,
    pub seed: u64,
}

impl Default for CrossConfig {
    fn default() -> Self {
        Self { members: 200, randoms: 200, seed: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    Member,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Checker {
    Surface,
    Comm(Ordering),
}

impl fmt::Display for Checker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Checker::Surface => f.write_str("surface"),
            Checker::Comm(o) => write!(f, "comm-{o}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossLine {
    pub index: usize,
    pub kind: InstanceKind,
    pub checker: Checker,
    pub triple: (usize, usize, usize),
    pub member: bool,
    pub oracle: OracleOutcome,
}

impl CrossLine {
    /// A constructed member must be accepted; a certified element must be
    /// accepted. An uncertified element constrains nothing.
    pub fn agrees(&self) -> bool {
        match (self.kind, &self.oracle) {
            (InstanceKind::Member, _) => self.member && self.oracle.is_certified(),
            (InstanceKind::Random, OracleOutcome::Certified { .. }) => self.member,
            (InstanceKind::Random, OracleOutcome::NotInBox) => true,
        }
    }
}

impl fmt::Display for CrossLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(
            f,
            "{} #{} {} triple={},{},{} checker={} oracle={}",
            if self.agrees() { "PASS" } else { "FAIL" },
            self.index,
            match self.kind {
                InstanceKind::Member => "member",
                InstanceKind::Random => "random",
            },
            i + 1,
            j + 1,
            k + 1,
            if self.member { "MEMBER" } else { "NOT-MEMBER" },
            match self.oracle {
                OracleOutcome::Certified { integral: true } => "certified",
                OracleOutcome::Certified { integral: false } => "certified-rational",
                OracleOutcome::NotInBox => "not-in-box",
            },
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct CrossReport {
    pub lines: Vec<CrossLine>,
}

impl CrossReport {
    pub fn total(&self) -> usize {
        self.lines.len()
    }

    pub fn passed(&self) -> usize {
        self.lines.iter().filter(|l| l.agrees()).count()
    }

    pub fn failed(&self) -> usize {
        self.total() - self.passed()
    }

    pub fn summary(&self) -> String {
        format!("total={} pass={} fail={}", self.total(), self.passed(), self.failed())
    }
}

/// Random Laurent polynomial with exponents in `[-1, 1]` on every slot.
fn random_poly<R: CoeffRing>(
    rng: &mut ChaCha8Rng,
    like: &Laurent<R>,
    terms: usize,
    coeff: &mut impl FnMut(&mut ChaCha8Rng) -> R::Elem,
) -> Laurent<R> {
    let mut out = like.zero_like();
    for _ in 0..terms {
        let e = (0..like.width()).map(|_| rng.gen_range(-1..=1)).collect();
        let c = coeff(rng);
        out.add_term(e, c);
    }
    out
}

fn random_coords(rng: &mut ChaCha8Rng, rank: usize) -> Coords<BigInt> {
    let dense: Vec<BigInt> = (0..rank).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect();
    crate::coeffrings::sparse::from_dense(&dense)
}

fn run<R: CoeffRing>(
    cfg: &CrossConfig,
    rng: &mut ChaCha8Rng,
    zero: &Laurent<R>,
    coeff: &mut impl FnMut(&mut ChaCha8Rng) -> R::Elem,
    mut instance: impl FnMut(&mut ChaCha8Rng) -> (Checker, (usize, usize, usize), [Laurent<R>; 2]),
    check: impl Fn(&Laurent<R>, Checker, (usize, usize, usize)) -> Result<bool, ConditionError>,
) -> Result<Vec<CrossLine>, ConditionError> {
    let bounds = OracleBox::cube(zero.width(), -1, 1);
    let mut lines = Vec::new();
    for index in 0..cfg.members + cfg.randoms {
        let kind = if index < cfg.members { InstanceKind::Member } else { InstanceKind::Random };
        let (checker, triple, gens) = instance(rng);
        let x = match kind {
            InstanceKind::Member => {
                let n_a = rng.gen_range(1..=3);
                let a = random_poly(rng, zero, n_a, coeff);
                let n_b = rng.gen_range(1..=3);
                let b = random_poly(rng, zero, n_b, coeff);
                &(&a * &gens[0]) + &(&b * &gens[1])
            }
            InstanceKind::Random => {
                let n_t = rng.gen_range(1..=5);
                random_poly(rng, zero, n_t, coeff)
            }
        };
        let member = check(&x, checker, triple)?;
        let oracle = membership_oracle(&x, &gens, &bounds)?;
        lines.push(CrossLine { index, kind, checker, triple, member, oracle });
    }
    Ok(lines)
}

/// The `K(S)` wheel checker on restricted classes in three variables.
pub fn surface_cross_validation(
    surf: &KSurfaceModel<BigInt>,
    cfg: &CrossConfig,
) -> Result<CrossReport, ConditionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let ring: ModelRing<BigInt> = tensor_power(surf.ring(), 1)?;
    let d = ring.rank();
    let ideal = WheelIdeal::surface(&ring, 3, 0, surf)?;
    let triples = ordered_triples(3);
    let zero = Laurent::zero(ring.clone(), 3, 0);
    let lines = run(
        cfg,
        &mut rng,
        &zero,
        &mut |r| random_coords(r, d),
        |r| {
            let t = triples[r.gen_range(0..triples.len())];
            (Checker::Surface, t, ideal.generators(t))
        },
        |x, _, t| wheel_membership(x, t, &ideal),
    )?;
    Ok(CrossReport { lines })
}

/// The commuting-variety checker in three variables, both orderings.
pub fn comm_cross_validation(cfg: &CrossConfig) -> Result<CrossReport, ConditionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let triples = ordered_triples(3);
    let zero: TorusPoly = Laurent::zero(Integers::new(), 3, 2);
    let lines = run(
        cfg,
        &mut rng,
        &zero,
        &mut |r| BigInt::from(r.gen_range(-3..=3)),
        |r| {
            let t = triples[r.gen_range(0..triples.len())];
            let o = Ordering::BOTH[r.gen_range(0..2)];
            let gens = super::comm_generators(3, t, o).expect("valid triple");
            (Checker::Comm(o), t, gens)
        },
        |x, c, t| match c {
            Checker::Comm(o) => Ok(comm_wheel_membership(x, t, o)?),
            Checker::Surface => unreachable!(),
        },
    )?;
    Ok(CrossReport { lines })
}
