//! Weighted suppression with forbidden vertices and resources available
//! at time zero, and the reduction from MVNP.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::mvnp::{subset_count, MvnpInstance};
use crate::allocation::Allocation;
use crate::error::{Result, WspError};
use crate::fire::propagate;
use crate::graph::{DirectedGraph, Minutes, VertexId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WwspInstance {
    pub graph: DirectedGraph,
    pub weights: Vec<f64>,
    pub ignition: VertexId,
    pub k: usize,
    pub forbidden: Vec<VertexId>,
    pub delay: Minutes,
    pub horizon: Minutes,
}

impl WwspInstance {
    pub fn validate(&self) -> Result<()> {
        let n = self.graph.vertex_count();
        self.graph.check_vertex(self.ignition)?;
        if self.weights.len() != n || self.weights.iter().any(|w| !w.is_finite()) {
            return Err(WspError::structural("weights must be finite, one per vertex"));
        }
        for &f in &self.forbidden {
            self.graph.check_vertex(f)?;
        }
        if !(self.delay >= 0.0 && self.horizon >= 0.0) {
            return Err(WspError::structural("delay and horizon must be nonnegative"));
        }
        Ok(())
    }
}

/// Weighted loss `Σ_{a_v < H} w_v`; protecting a forbidden vertex, an
/// unknown resource or more than `k` resources is an error.
pub fn evaluate_wwsp(inst: &WwspInstance, alloc: &Allocation) -> Result<f64> {
    let n = inst.graph.vertex_count();
    let (dup_r, dup_v) = alloc.duplicates();
    if !dup_r.is_empty() || !dup_v.is_empty() {
        return Err(WspError::domain("allocation repeats a resource or vertex"));
    }
    let mut extra = vec![0.0; n];
    for &(r, v) in alloc.assignments() {
        inst.graph.check_vertex(v)?;
        if r >= inst.k {
            return Err(WspError::domain(format!("unknown resource {r}")));
        }
        if inst.forbidden.contains(&v) {
            return Err(WspError::domain(format!("vertex {v} may not be protected")));
        }
        extra[v] = inst.delay;
    }
    let arrival = propagate(&inst.graph, inst.ignition, &extra);
    Ok((0..n).filter(|&v| arrival[v] < inst.horizon).map(|v| inst.weights[v]).sum())
}

/// Least weighted loss over every protected set of size at most `k` that
/// avoids the forbidden vertices.
pub fn solve_wwsp_brute(inst: &WwspInstance, cap: u64) -> Result<(f64, Vec<VertexId>)> {
    let allowed: Vec<VertexId> = (0..inst.graph.vertex_count()).filter(|v| !inst.forbidden.contains(v)).collect();
    let estimate = subset_count(allowed.len(), inst.k);
    if estimate > cap as f64 {
        return Err(WspError::LimitExceeded { estimate, limit: cap });
    }
    let mut best: Option<(f64, Vec<VertexId>)> = None;
    for size in 0..=inst.k.min(allowed.len()) {
        for set in allowed.iter().copied().combinations(size) {
            let alloc = Allocation::from_pairs(set.iter().copied().enumerate());
            let loss = evaluate_wwsp(inst, &alloc)?;
            if best.as_ref().is_none_or(|(b, _)| loss < *b) {
                best = Some((loss, set));
            }
        }
    }
    Ok(best.expect("the empty set is always evaluated"))
}

/// Same graph, `F = {s, t}`, `H = Δ = h`, `w_v = [v = t]`, budget 0.
pub fn mvnp_to_wwsp(mvnp: &MvnpInstance) -> (WwspInstance, f64) {
    let n = mvnp.graph().vertex_count();
    let inst = WwspInstance {
        graph: mvnp.graph().clone(),
        weights: (0..n).map(|v| if v == mvnp.sink() { 1.0 } else { 0.0 }).collect(),
        ignition: mvnp.source(),
        k: mvnp.k(),
        forbidden: vec![mvnp.source(), mvnp.sink()],
        delay: mvnp.h(),
        horizon: mvnp.h(),
    };
    (inst, 0.0)
}
