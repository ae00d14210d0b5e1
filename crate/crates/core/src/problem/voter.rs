//! Grounding of the six-rule political voting program over a synthetic
//! social network.
//!
//! `Votes(A, P)` atoms are the consensus variables. Every rule instance is a
//! linear hinge subproblem, and each person gets a simplex subproblem that
//! keeps their votes a distribution over parties.

use alloc::string::ToString;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{HingePower, Objective, ProblemError, SubproblemSpec};
use crate::graph::BipartiteGraph;
use crate::math;

/// Weight of `RegisteredAs(A, P) → Votes(A, P)`.
pub const REGISTRATION_WEIGHT: f64 = 0.5;

/// Default ADMM step size for voter instances, on the scale of the rule
/// weights.
pub const VOTER_RHO: f64 = 0.1;

/// Observed relation in `Votes(A, P) ∧ Rel(B, A) → Votes(B, P)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    KnowsWell,
    Knows,
    Boss,
    Mentor,
    OlderRelative,
}

impl Relation {
    pub const ALL: [Relation; 5] =
        [Relation::KnowsWell, Relation::Knows, Relation::Boss, Relation::Mentor, Relation::OlderRelative];

    pub fn weight(self) -> f64 {
        match self {
            Relation::KnowsWell => 0.3,
            Relation::Knows => 0.1,
            Relation::Boss => 0.05,
            Relation::Mentor => 0.1,
            Relation::OlderRelative => 0.7,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::KnowsWell => "knows_well",
            Relation::Knows => "knows",
            Relation::Boss => "boss",
            Relation::Mentor => "mentor",
            Relation::OlderRelative => "older_relative",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VoterConfig {
    pub num_persons: usize,
    pub num_parties: usize,
    /// Mean out-degree per person of each relation, indexed like
    /// [`Relation::ALL`].
    pub relation_degree: [f64; 5],
    /// Fraction of persons with an observed registration.
    pub registered_fraction: f64,
    pub seed: u64,
}

impl VoterConfig {
    pub fn new(num_persons: usize, seed: u64) -> Self {
        Self {
            num_persons,
            num_parties: 2,
            relation_degree: [0.5, 1.0, 0.25, 0.25, 0.25],
            registered_fraction: 0.5,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.num_persons < 1 {
            return Err(ProblemError::InvalidConfig("num_persons must be >= 1"));
        }
        if self.num_parties < 2 {
            return Err(ProblemError::InvalidConfig("num_parties must be >= 2"));
        }
        if self.num_persons.saturating_mul(self.num_parties) > u32::MAX as usize {
            return Err(ProblemError::InvalidConfig("too many vote variables"));
        }
        let max_degree = (self.num_persons - 1) as f64;
        if self.relation_degree.iter().any(|&d| !(d >= 0.0) || !d.is_finite() || d > max_degree) {
            return Err(ProblemError::InvalidConfig("relation degrees must lie in [0, num_persons - 1]"));
        }
        if !(0.0..=1.0).contains(&self.registered_fraction) {
            return Err(ProblemError::InvalidConfig("registered_fraction must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// A grounded voter problem: graph plus one spec per subproblem, with the
/// bookkeeping to recover every `Votes` value.
#[derive(Debug, Clone, PartialEq)]
pub struct VoterInstance {
    pub graph: BipartiteGraph,
    pub specs: Vec<SubproblemSpec>,
    pub num_persons: usize,
    pub num_parties: usize,
    /// Consensus id of `Votes(A, P)` at `A·parties + P`, or `None` when the
    /// atom only appeared in its person's simplex and was folded into it.
    pub variable: Vec<Option<u32>>,
    /// Party each registered person is registered with.
    pub registration: Vec<Option<u16>>,
}

impl VoterInstance {
    /// Full `Votes` table (person-major) from consensus values. Folded atoms
    /// share the mass their person's simplex left over.
    pub fn votes(&self, consensus: &[f64]) -> Vec<f64> {
        let p = self.num_parties;
        let mut out = alloc::vec![0.0; self.num_persons * p];
        for person in 0..self.num_persons {
            let row = &self.variable[person * p..(person + 1) * p];
            let used: f64 = row.iter().flatten().map(|&l| consensus[l as usize]).sum();
            let folded = row.iter().filter(|v| v.is_none()).count();
            let share = if folded > 0 { (1.0 - used).max(0.0) / folded as f64 } else { 0.0 };
            for (k, v) in row.iter().enumerate() {
                out[person * p + k] = v.map_or(share, |l| consensus[l as usize]);
            }
        }
        out
    }
}

/// Samples `count` distinct ordered pairs `(b, a)` with `b != a`.
fn random_relation(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(count);
    while pairs.len() < count {
        let missing = count - pairs.len();
        for _ in 0..missing {
            let b = rng.random_range(0..n as u32);
            let mut a = rng.random_range(0..n as u32 - 1);
            if a >= b {
                a += 1;
            }
            pairs.push((b, a));
        }
        pairs.sort_unstable();
        pairs.dedup();
    }
    pairs
}

pub fn ground_voter_model(cfg: &VoterConfig) -> Result<VoterInstance, ProblemError> {
    cfg.validate()?;
    let n = cfg.num_persons;
    let p = cfg.num_parties;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let relations: Vec<Vec<(u32, u32)>> = if n < 2 {
        alloc::vec![Vec::new(); Relation::ALL.len()]
    } else {
        cfg.relation_degree
            .iter()
            .map(|&d| random_relation(n, math::round(n as f64 * d) as usize, &mut rng))
            .collect()
    };

    let mut registration = alloc::vec![None; n];
    let mut persons: Vec<u32> = (0..n as u32).collect();
    persons.shuffle(&mut rng);
    let registered = math::round(n as f64 * cfg.registered_fraction) as usize;
    for &a in &persons[..registered] {
        registration[a as usize] = Some(rng.random_range(0..p) as u16);
    }

    // Atom index A·p + P before folding.
    let atom = |person: u32, party: usize| person * p as u32 + party as u32;
    let mut degree = alloc::vec![1u32; n * p];
    for (a, r) in registration.iter().enumerate() {
        if let Some(party) = r {
            degree[atom(a as u32, *party as usize) as usize] += 1;
        }
    }
    for rel in &relations {
        for &(b, a) in rel {
            for party in 0..p {
                degree[atom(a, party) as usize] += 1;
                degree[atom(b, party) as usize] += 1;
            }
        }
    }
    let mut variable = alloc::vec![None; n * p];
    let mut next = 0u32;
    for (k, &d) in degree.iter().enumerate() {
        if d >= 2 {
            variable[k] = Some(next);
            next += 1;
        }
    }
    let num_consensus = next as usize;
    if num_consensus == 0 {
        return Err(ProblemError::EmptyInstance);
    }
    let var = |person: u32, party: usize| variable[atom(person, party) as usize].unwrap();

    let mut specs = Vec::new();
    for a in 0..n as u32 {
        let slots: Vec<u32> = (0..p).filter_map(|party| variable[atom(a, party) as usize]).collect();
        if !slots.is_empty() {
            specs.push(SubproblemSpec::new(slots, Objective::Simplex { dimension: p }));
        }
        if let Some(party) = registration[a as usize] {
            specs.push(SubproblemSpec::new(
                alloc::vec![var(a, party as usize)],
                Objective::Hinge {
                    weight: REGISTRATION_WEIGHT,
                    a: alloc::vec![-1.0],
                    b: 1.0,
                    power: HingePower::Linear,
                },
            ));
        }
    }
    for (rel, pairs) in Relation::ALL.iter().zip(&relations) {
        for &(b, a) in pairs {
            for party in 0..p {
                // w·max(0, v_AP − v_BP) with slots in ascending id order.
                let (va, vb) = (var(a, party), var(b, party));
                let (slots, coeffs) = if va < vb {
                    (alloc::vec![va, vb], alloc::vec![1.0, -1.0])
                } else {
                    (alloc::vec![vb, va], alloc::vec![-1.0, 1.0])
                };
                specs.push(SubproblemSpec::new(
                    slots,
                    Objective::Hinge { weight: rel.weight(), a: coeffs, b: 0.0, power: HingePower::Linear },
                ));
            }
        }
    }

    let adjacency = specs.iter().map(|s| s.slots.clone()).collect();
    let graph = BipartiteGraph::from_adjacency(num_consensus, adjacency)
        .map_err(|e| ProblemError::Graph(e.to_string()))?;
    Ok(VoterInstance { graph, specs, num_persons: n, num_parties: p, variable, registration })
}
