//! Fire arrival times under an allocation.
//!
//! Fire spreads from the ignition vertex along shortest paths. A protected
//! vertex adds the instance delay to each of its outgoing arcs, so arrival
//! times are single-source shortest-path distances over the delayed costs.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::allocation::Allocation;
use crate::error::{Result, WspError};
use crate::graph::{DirectedGraph, Minutes, VertexId};
use crate::instance::WspInstance;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Dijkstra from `source` where arc `(u, v)` costs `t_uv + extra[u]`.
///
/// Unreachable vertices get `+inf`.
pub fn propagate(graph: &DirectedGraph, source: VertexId, extra: &[Minutes]) -> Vec<Minutes> {
    debug_assert_eq!(extra.len(), graph.vertex_count());
    let mut dist = vec![f64::INFINITY; graph.vertex_count()];
    let mut done = vec![false; graph.vertex_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Reverse((Key(0.0), source)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for arc in graph.out_arcs(u) {
            let nd = d + (arc.time + extra[u]);
            if nd < dist[arc.head] {
                dist[arc.head] = nd;
                heap.push(Reverse((Key(nd), arc.head)));
            }
        }
    }
    dist
}

/// Fire arrival time per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct FireOutcome {
    pub arrival: Vec<Minutes>,
}

impl FireOutcome {
    /// Vertices with arrival strictly before `t`.
    pub fn burned_set(&self, t: Minutes) -> Vec<VertexId> {
        self.arrival
            .iter()
            .enumerate()
            .filter(|(_, &a)| a < t)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn burned_count(&self, t: Minutes) -> usize {
        self.arrival.iter().filter(|&&a| a < t).count()
    }

    pub fn is_burned(&self, v: VertexId, t: Minutes) -> bool {
        self.arrival[v] < t
    }
}

/// Arrival times given a protected-vertex mask (no allocation validation).
pub fn arrival_for_mask(instance: &WspInstance, protected: &[bool]) -> FireOutcome {
    let extra: Vec<Minutes> = protected
        .iter()
        .map(|&p| if p { instance.delay() } else { 0.0 })
        .collect();
    FireOutcome { arrival: propagate(instance.graph(), instance.ignition(), &extra) }
}

fn protected_mask(instance: &WspInstance, alloc: &Allocation) -> Result<Vec<bool>> {
    for v in alloc.protected_vertices() {
        instance.graph().check_vertex(v)?;
    }
    Ok(alloc.protected_mask(instance.vertex_count()))
}

pub fn compute_arrival_times(instance: &WspInstance, alloc: &Allocation) -> Result<FireOutcome> {
    Ok(arrival_for_mask(instance, &protected_mask(instance, alloc)?))
}

/// Number of vertices burned strictly before the horizon.
pub fn objective(instance: &WspInstance, alloc: &Allocation) -> Result<usize> {
    Ok(compute_arrival_times(instance, alloc)?.burned_count(instance.horizon()))
}

/// Objective of the empty allocation.
pub fn free_burn_objective(instance: &WspInstance) -> usize {
    arrival_for_mask(instance, &vec![false; instance.vertex_count()]).burned_count(instance.horizon())
}

/// Travel time of arc `(tail, head)` after applying the allocation's delay.
pub fn effective_travel_time(
    instance: &WspInstance,
    alloc: &Allocation,
    tail: VertexId,
    head: VertexId,
) -> Result<Minutes> {
    let t = instance
        .graph()
        .arc_time(tail, head)
        .ok_or_else(|| WspError::structural(format!("no arc ({tail}, {head})")))?;
    let protected = alloc.protected_vertices().any(|v| v == tail);
    Ok(if protected { t + instance.delay() } else { t })
}
