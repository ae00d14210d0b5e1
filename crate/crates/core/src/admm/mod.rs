//! Consensus ADMM as synchronous gather-apply-scatter vertex programs on a
//! simulated vertex-cut cluster.
//!
//! Per superstep, active subproblems gather `X̂_i` from the consensus
//! replicas on their edges' machines, apply the dual step of their previous
//! solve against it, `λ_i ← λ_i + ρ(x_i − X̂_i)`, then solve
//! `x_i ← argmin φ_i(x) + λ_iᵀx + (ρ/2)||x − X̂_i||²` and push `x_i` to
//! their mirrors. Consensus vertices with an active neighbor then average
//! their copies, check local convergence, sync mirrors, and notify
//! neighbors unless converged.
//!
//! Deferring the dual step to the next gather means it always sees the
//! consensus value averaged from the same `x_i`, which is what makes the
//! fixed point the consensus optimum.

use alloc::vec::Vec;

mod cluster;

pub use cluster::{build_cluster, check_local_convergence, ClusterState, Residuals};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AdmmError {
    #[error("problem has {got} subproblems, graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("assignment does not cover this graph")]
    AssignmentMismatch,
    #[error("subproblem {subproblem}: {reason}")]
    Spec { subproblem: usize, reason: alloc::string::String },
    #[error("invalid configuration: {0}")]
    Config(&'static str),
    #[error("non-finite iterate at subproblem {subproblem} in superstep {step}")]
    Divergence { subproblem: usize, step: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StopRule {
    /// Every consensus vertex converged, so no subproblem is active.
    Full,
    /// At least this fraction of consensus vertices converged.
    Fraction(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmmConfig {
    pub rho: f64,
    pub eps_primal: f64,
    pub eps_dual: f64,
    /// Skip subproblems whose consensus neighbors all converged. When off,
    /// every vertex runs every superstep.
    pub local_convergence: bool,
}

impl Default for AdmmConfig {
    fn default() -> Self {
        Self { rho: 1.0, eps_primal: 1e-4, eps_dual: 1e-4, local_convergence: true }
    }
}

impl AdmmConfig {
    pub fn validate(&self) -> Result<(), AdmmError> {
        if !(self.rho > 0.0) || !self.rho.is_finite() {
            return Err(AdmmError::Config("rho must be positive and finite"));
        }
        if !(self.eps_primal > 0.0) || !(self.eps_dual > 0.0) {
            return Err(AdmmError::Config("tolerances must be positive"));
        }
        Ok(())
    }
}

/// What one superstep did.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    /// 1-based superstep number.
    pub iter: u64,
    pub active_subproblems: usize,
    pub updated_consensus: usize,
    pub frac_converged: f64,
    pub max_primal: f64,
    pub max_dual: f64,
    /// Mirror synchronizations this superstep.
    pub payload: u64,
    pub cum_payload: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub steps: Vec<StepReport>,
    /// Whether the stop rule was met before the iteration limit.
    pub stopped: bool,
    /// `Σ_i φ_i(x_i)` at the final iterate.
    pub objective: f64,
    /// Mirror synchronizations charged to each machine (by master).
    pub machine_payload: Vec<u64>,
}

impl RunReport {
    pub fn iterations(&self) -> u64 {
        self.steps.last().map_or(0, |s| s.iter)
    }

    pub fn total_payload(&self) -> u64 {
        self.steps.last().map_or(0, |s| s.cum_payload)
    }

    pub fn final_fraction(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.frac_converged)
    }
}
