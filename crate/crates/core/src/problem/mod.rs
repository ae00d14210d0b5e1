//! Subproblem objectives `φ_i` and their proximal operators.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

mod prox;
mod quadratic;
mod voter;

pub use prox::{prox_hinge, prox_quadratic, prox_simplex};
pub use quadratic::random_quadratic;
pub use voter::{ground_voter_model, Relation, VoterConfig, VoterInstance, REGISTRATION_WEIGHT, VOTER_RHO};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProblemError {
    #[error("subproblem {subproblem}: slots must be strictly ascending")]
    UnsortedSlots { subproblem: usize },
    #[error("subproblem {subproblem}: expected {expected} parameters, got {got}")]
    ParameterCount { subproblem: usize, expected: usize, got: usize },
    #[error("subproblem {subproblem}: quadratic term is not symmetric positive semidefinite")]
    NotPsd { subproblem: usize },
    #[error("subproblem {subproblem}: hinge weight must be finite and >= 0, got {weight}")]
    NegativeWeight { subproblem: usize, weight: f64 },
    #[error("subproblem {subproblem}: simplex of dimension {dimension} cannot hold {slots} slots")]
    SimplexShape { subproblem: usize, dimension: usize, slots: usize },
    #[error("subproblem {subproblem}: non-finite parameter")]
    NonFinite { subproblem: usize },
    #[error("subproblem {subproblem} touches consensus {slot:?}, graph has {expected:?}")]
    SlotMismatch { subproblem: usize, slot: Vec<u32>, expected: Vec<u32> },
    #[error("problem has {got} subproblems, graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid voter config: {0}")]
    InvalidConfig(&'static str),
    #[error("voter config grounds an empty graph")]
    EmptyInstance,
    #[error("grounded graph is invalid: {0}")]
    Graph(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HingePower {
    Linear,
    Squared,
}

impl HingePower {
    pub fn exponent(self) -> u32 {
        match self {
            HingePower::Linear => 1,
            HingePower::Squared => 2,
        }
    }

    pub fn from_exponent(p: u32) -> Option<Self> {
        match p {
            1 => Some(HingePower::Linear),
            2 => Some(HingePower::Squared),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Objective {
    /// `½xᵀQx + cᵀx`, `q` row-major.
    Quadratic { q: Vec<f64>, c: Vec<f64> },
    /// `w·max(0, aᵀx + b)^p`.
    Hinge { weight: f64, a: Vec<f64>, b: f64, power: HingePower },
    /// Indicator of the probability simplex over `dimension` coordinates.
    /// When the subproblem holds fewer slots than `dimension`, the others
    /// are implicit and the slots are only required to sum to at most 1.
    Simplex { dimension: usize },
}

impl Objective {
    pub fn kind(&self) -> &'static str {
        match self {
            Objective::Quadratic { .. } => "quad",
            Objective::Hinge { .. } => "hinge",
            Objective::Simplex { .. } => "simplex",
        }
    }
}

/// One subproblem: its objective over the consensus variables in `slots`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubproblemSpec {
    pub slots: Vec<u32>,
    pub objective: Objective,
}

/// Slack allowed when judging simplex membership.
pub const SIMPLEX_TOL: f64 = 1e-9;

impl SubproblemSpec {
    pub fn new(slots: Vec<u32>, objective: Objective) -> Self {
        Self { slots, objective }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Checks shape and parameter ranges; `index` labels errors.
    pub fn validate(&self, index: usize) -> Result<(), ProblemError> {
        let n = self.slots.len();
        if self.slots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ProblemError::UnsortedSlots { subproblem: index });
        }
        let count = |expected: usize, got: usize| {
            if expected == got {
                Ok(())
            } else {
                Err(ProblemError::ParameterCount { subproblem: index, expected, got })
            }
        };
        match &self.objective {
            Objective::Quadratic { q, c } => {
                count(n * n, q.len())?;
                count(n, c.len())?;
                if q.iter().chain(c).any(|v| !v.is_finite()) {
                    return Err(ProblemError::NonFinite { subproblem: index });
                }
                if !is_psd(q, n) {
                    return Err(ProblemError::NotPsd { subproblem: index });
                }
            }
            Objective::Hinge { weight, a, b, .. } => {
                count(n, a.len())?;
                if !(*weight >= 0.0) || !weight.is_finite() {
                    return Err(ProblemError::NegativeWeight { subproblem: index, weight: *weight });
                }
                if a.iter().any(|v| !v.is_finite()) || !b.is_finite() {
                    return Err(ProblemError::NonFinite { subproblem: index });
                }
            }
            Objective::Simplex { dimension } => {
                if *dimension < 2 || n == 0 || n > *dimension {
                    return Err(ProblemError::SimplexShape {
                        subproblem: index,
                        dimension: *dimension,
                        slots: n,
                    });
                }
            }
        }
        Ok(())
    }

    /// `φ(x)`; infinite outside the simplex for simplex subproblems.
    pub fn value(&self, x: &[f64]) -> f64 {
        match &self.objective {
            Objective::Quadratic { q, c } => {
                let n = x.len();
                let mut v = prox::dot(c, x);
                for i in 0..n {
                    v += 0.5 * x[i] * prox::dot(&q[i * n..(i + 1) * n], x);
                }
                v
            }
            Objective::Hinge { weight, a, b, power } => {
                let s = (prox::dot(a, x) + b).max(0.0);
                match power {
                    HingePower::Linear => weight * s,
                    HingePower::Squared => weight * s * s,
                }
            }
            Objective::Simplex { dimension } => {
                let sum: f64 = x.iter().sum();
                let nonneg = x.iter().all(|&v| v >= -SIMPLEX_TOL);
                let fits = if x.len() < *dimension {
                    sum <= 1.0 + SIMPLEX_TOL
                } else {
                    (sum - 1.0).abs() <= SIMPLEX_TOL
                };
                if nonneg && fits {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// Writes `argmin_x φ(x) + λᵀx + (ρ/2)||x − X̂||²` into `out`.
    pub fn prox(&self, lambda: &[f64], xhat: &[f64], rho: f64, out: &mut [f64]) {
        match &self.objective {
            Objective::Quadratic { q, c } => prox_quadratic(q, c, lambda, xhat, rho, out),
            Objective::Hinge { weight, a, b, power } => {
                prox_hinge(*weight, a, *b, *power, lambda, xhat, rho, out)
            }
            Objective::Simplex { dimension } => {
                prox_simplex(self.slots.len() < *dimension, lambda, xhat, rho, out)
            }
        }
    }
}

impl fmt::Display for SubproblemSpec {
    /// The problem-file line: `<kind> <n> <slots…> <parameters…>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.objective.kind(), self.slots.len())?;
        for s in &self.slots {
            write!(f, " {s}")?;
        }
        match &self.objective {
            Objective::Quadratic { q, c } => {
                for v in q.iter().chain(c) {
                    write!(f, " {v:?}")?;
                }
            }
            Objective::Hinge { weight, a, b, power } => {
                write!(f, " {weight:?} {} {b:?}", power.exponent())?;
                for v in a {
                    write!(f, " {v:?}")?;
                }
            }
            Objective::Simplex { dimension } => write!(f, " {dimension}")?,
        }
        Ok(())
    }
}

/// Symmetric and positive semidefinite, up to a relative tolerance.
fn is_psd(q: &[f64], n: usize) -> bool {
    let scale = q.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    for i in 0..n {
        for j in 0..i {
            if (q[i * n + j] - q[j * n + i]).abs() > 1e-12 * scale {
                return false;
            }
        }
    }
    // Cholesky of Q + δI succeeds for PSD Q.
    let delta = 1e-10 * scale;
    let mut l = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = q[i * n + j] + if i == j { delta } else { 0.0 };
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if s <= 0.0 {
                    return false;
                }
                l[i * n + i] = crate::math::sqrt(s);
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn validation() {
        let ok = SubproblemSpec::new(vec![1, 4], Objective::Simplex { dimension: 2 });
        assert!(ok.validate(0).is_ok());
        let unsorted = SubproblemSpec::new(vec![4, 1], Objective::Simplex { dimension: 2 });
        assert!(matches!(unsorted.validate(3), Err(ProblemError::UnsortedSlots { subproblem: 3 })));
        let too_many = SubproblemSpec::new(vec![1, 2, 3], Objective::Simplex { dimension: 2 });
        assert!(too_many.validate(0).is_err());
        let neg = SubproblemSpec::new(
            vec![0],
            Objective::Hinge { weight: -1.0, a: vec![1.0], b: 0.0, power: HingePower::Linear },
        );
        assert!(matches!(neg.validate(0), Err(ProblemError::NegativeWeight { .. })));
        let indefinite = SubproblemSpec::new(
            vec![0, 1],
            Objective::Quadratic { q: vec![1.0, 2.0, 2.0, 1.0], c: vec![0.0, 0.0] },
        );
        assert!(matches!(indefinite.validate(0), Err(ProblemError::NotPsd { .. })));
        let asym = SubproblemSpec::new(
            vec![0, 1],
            Objective::Quadratic { q: vec![1.0, 0.5, 0.0, 1.0], c: vec![0.0, 0.0] },
        );
        assert!(matches!(asym.validate(0), Err(ProblemError::NotPsd { .. })));
    }

    #[test]
    fn values() {
        let q = SubproblemSpec::new(vec![0], Objective::Quadratic { q: vec![2.0], c: vec![-2.0] });
        // (x − 1)² − 1 at x = 3
        assert_eq!(q.value(&[3.0]), 3.0);
        let h = SubproblemSpec::new(
            vec![0, 1],
            Objective::Hinge { weight: 0.3, a: vec![1.0, -1.0], b: 0.0, power: HingePower::Linear },
        );
        assert!((h.value(&[0.9, 0.4]) - 0.15).abs() < 1e-15);
        assert_eq!(h.value(&[0.1, 0.4]), 0.0);
        let s = SubproblemSpec::new(vec![0], Objective::Simplex { dimension: 2 });
        assert_eq!(s.value(&[0.4]), 0.0);
        assert_eq!(s.value(&[1.4]), f64::INFINITY);
    }

    #[test]
    fn display_line() {
        let h = SubproblemSpec::new(
            vec![2, 7],
            Objective::Hinge { weight: 0.3, a: vec![1.0, -1.0], b: 0.0, power: HingePower::Linear },
        );
        assert_eq!(h.to_string(), "hinge 2 2 7 0.3 1 0.0 1.0 -1.0");
        let s = SubproblemSpec::new(vec![3], Objective::Simplex { dimension: 2 });
        assert_eq!(s.to_string(), "simplex 1 3 2");
    }
}
