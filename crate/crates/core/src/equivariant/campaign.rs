use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    comm_wheel_membership, enumerate_comm_subspaces, ordered_triples, ClassCache, CoordSubspace, EquivariantError,
    Ordering,
};

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub n: usize,
    pub size_bound: usize,
    /// Number of distinct pairwise unions to sample.
    pub unions: usize,
    pub seed: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self { n: 3, size_bound: 18, unions: 500, seed: 1 }
    }
}

/// A single subspace or a union of two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Single(CoordSubspace),
    Union(CoordSubspace, CoordSubspace),
}

impl Subject {
    pub fn parts(&self) -> Vec<CoordSubspace> {
        match self {
            Subject::Single(l) => vec![l.clone()],
            Subject::Union(a, b) => vec![a.clone(), b.clone()],
        }
    }

    pub fn mirror(&self) -> Self {
        match self {
            Subject::Single(l) => Subject::Single(l.mirror()),
            Subject::Union(a, b) => Subject::Union(a.mirror(), b.mirror()),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Single(l) => write!(f, "{l}"),
            Subject::Union(a, b) => write!(f, "{a} | {b}"),
        }
    }
}

/// The outcome of one membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub subject: usize,
    pub triple: (usize, usize, usize),
    pub ordering: Ordering,
    pub pass: bool,
}

/// How many subjects pass every triple in a given ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderingTally {
    pub ordering: Ordering,
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub subjects: Vec<Subject>,
    pub singles: usize,
    pub lines: Vec<CheckLine>,
    /// Per subject: some ordering passes every triple and the mirrored
    /// class passes the mirrored ordering on every triple.
    pub verdicts: Vec<bool>,
    pub tallies: Vec<OrderingTally>,
}

impl CampaignReport {
    pub fn total(&self) -> usize {
        self.verdicts.len()
    }

    pub fn passed(&self) -> usize {
        self.verdicts.iter().filter(|v| **v).count()
    }

    pub fn failed(&self) -> usize {
        self.total() - self.passed()
    }

    pub fn summary(&self) -> String {
        format!("total={} pass={} fail={}", self.total(), self.passed(), self.failed())
    }
}

/// Every commuting coordinate subspace of `gl_n ⊕ gl_n` up to the size
/// bound, plus sampled pairwise unions, checked against both orderings.
pub fn comm3_campaign(config: &CampaignConfig) -> Result<CampaignReport, EquivariantError> {
    let spaces = enumerate_comm_subspaces(config.n, config.size_bound);
    let mut subjects: Vec<Subject> = spaces.iter().cloned().map(Subject::Single).collect();
    let singles = subjects.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let max_pairs = spaces.len() * spaces.len().saturating_sub(1) / 2;
    let mut seen = BTreeSet::new();
    while seen.len() < config.unions.min(max_pairs) {
        let a = rng.gen_range(0..spaces.len());
        let b = rng.gen_range(0..spaces.len());
        if a != b && seen.insert((a.min(b), a.max(b))) {
            subjects.push(Subject::Union(spaces[a.min(b)].clone(), spaces[a.max(b)].clone()));
        }
    }

    let triples = ordered_triples(config.n);
    let mut cache = ClassCache::new(CoordSubspace::full(config.n));
    let mut lines = Vec::new();
    let mut verdicts = Vec::new();
    let mut tallies: Vec<OrderingTally> =
        Ordering::BOTH.iter().map(|&ordering| OrderingTally { ordering, pass: 0, fail: 0 }).collect();
    for (idx, subject) in subjects.iter().enumerate() {
        let class = cache.union_class(&subject.parts())?;
        let mirrored = cache.union_class(&subject.mirror().parts())?;
        let mut ok = false;
        for (slot, &o) in Ordering::BOTH.iter().enumerate() {
            let mut all = true;
            for &t in &triples {
                let pass = comm_wheel_membership(&class, t, o)?;
                all &= pass;
                lines.push(CheckLine { subject: idx, triple: t, ordering: o, pass });
            }
            if all {
                tallies[slot].pass += 1;
            } else {
                tallies[slot].fail += 1;
            }
            if all && !ok {
                let mut mirror_all = true;
                for &t in &triples {
                    mirror_all &= comm_wheel_membership(&mirrored, t, o.mirror())?;
                }
                ok = mirror_all;
            }
        }
        verdicts.push(ok);
    }
    Ok(CampaignReport { subjects, singles, lines, verdicts, tallies })
}
