//! Heuristic and exact solvers for the WSP.

pub mod beam;
pub mod exact;
pub mod random;

pub use beam::{beam_search, BeamConfig};
pub use exact::{brute_force, search_space_estimate, BruteForceLimits};
pub use random::random_search;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::allocation::Allocation;
use crate::error::{Result, WspError};
use crate::fire::{arrival_for_mask, FireOutcome};
use crate::graph::{Minutes, VertexId};
use crate::instance::WspInstance;

/// Stopping rule: wall-clock seconds, iterations, or both (first hit wins).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverBudget {
    max_seconds: Option<f64>,
    max_iterations: Option<u64>,
}

impl SolverBudget {
    pub fn new(max_seconds: Option<f64>, max_iterations: Option<u64>) -> Result<Self> {
        if max_seconds.is_none() && max_iterations.is_none() {
            return Err(WspError::domain("solver budget needs a time or iteration bound"));
        }
        if let Some(s) = max_seconds {
            if !(s.is_finite() && s > 0.0) {
                return Err(WspError::domain(format!("time budget must be positive, got {s}")));
            }
        }
        if max_iterations == Some(0) {
            return Err(WspError::domain("iteration budget must be positive"));
        }
        Ok(SolverBudget { max_seconds, max_iterations })
    }

    pub fn iterations(n: u64) -> Result<Self> {
        Self::new(None, Some(n))
    }

    pub fn seconds(s: f64) -> Result<Self> {
        Self::new(Some(s), None)
    }

    pub fn max_seconds(&self) -> Option<f64> {
        self.max_seconds
    }

    pub fn max_iterations(&self) -> Option<u64> {
        self.max_iterations
    }

    pub(crate) fn exhausted(&self, started: Instant, iterations: u64) -> bool {
        if self.max_iterations.is_some_and(|m| iterations >= m) {
            return true;
        }
        self.max_seconds
            .is_some_and(|s| started.elapsed() >= Duration::from_secs_f64(s))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverResult {
    pub allocation: Allocation,
    pub objective: usize,
    /// Iterations (random search), expanded nodes (beam) or leaves (exact).
    pub iterations: u64,
    pub elapsed_secs: f64,
}

/// Search state shared by the constructive solvers: a partial allocation
/// and its protected mask.
#[derive(Debug, Clone)]
pub(crate) struct Partial {
    pub alloc: Allocation,
    pub mask: Vec<bool>,
}

impl Partial {
    pub fn empty(instance: &WspInstance) -> Self {
        Partial { alloc: Allocation::empty(), mask: vec![false; instance.vertex_count()] }
    }

    pub fn outcome(&self, instance: &WspInstance) -> FireOutcome {
        arrival_for_mask(instance, &self.mask)
    }

    /// Assigns the resources of `level`, in order, to `vertices` (sorted by id).
    pub fn extend(&self, instance: &WspInstance, level: usize, vertices: &[VertexId]) -> Self {
        let mut next = self.clone();
        for (r, &v) in instance.level_resources(level).zip(vertices) {
            next.alloc.assign(r, v);
            next.mask[v] = true;
        }
        next
    }
}

/// Unburned, unprotected vertices at time `t`, ascending by id. The
/// ignition vertex is never a candidate.
pub(crate) fn candidate_set(instance: &WspInstance, mask: &[bool], arrival: &[Minutes], t: Minutes) -> Vec<VertexId> {
    (0..instance.vertex_count())
        .filter(|&v| v != instance.ignition() && !mask[v] && arrival[v] >= t)
        .collect()
}

/// Candidates at time `t` under `alloc`, ordered for expansion: vertices
/// with an in-neighbour already reached by the fire first, then by
/// arrival time, then by id.
pub fn perimeter_candidates(instance: &WspInstance, alloc: &Allocation, t: Minutes) -> Result<Vec<VertexId>> {
    let outcome = crate::fire::compute_arrival_times(instance, alloc)?;
    let mask = alloc.protected_mask(instance.vertex_count());
    Ok(perimeter_order(instance, &mask, &outcome.arrival, t))
}

pub(crate) fn perimeter_order(
    instance: &WspInstance,
    mask: &[bool],
    arrival: &[Minutes],
    t: Minutes,
) -> Vec<VertexId> {
    let g = instance.graph();
    let mut c = candidate_set(instance, mask, arrival, t);
    let on_front = |v: VertexId| g.in_arcs(v).any(|a| arrival[a.tail] <= t);
    c.sort_by(|&a, &b| {
        on_front(b)
            .cmp(&on_front(a))
            .then(arrival[a].total_cmp(&arrival[b]))
            .then(a.cmp(&b))
    });
    c
}

pub(crate) fn elapsed(started: Instant) -> f64 {
    started.elapsed().as_secs_f64()
}
