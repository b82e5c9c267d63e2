//! Wildfire suppression problem instances.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Result, WspError};
use crate::graph::{DirectedGraph, Minutes, VertexId};

pub type ResourceId = usize;

/// A batch of resources released together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Release {
    #[serde(rename = "t_min")]
    pub time: Minutes,
    pub count: usize,
}

/// A WSP instance: graph, ignition vertex, horizon, delay and release schedule.
///
/// Resources are numbered `0..k` in schedule order, so the first
/// `schedule[0].count` ids belong to the first release, and so on.
#[derive(Debug, Clone, PartialEq)]
pub struct WspInstance {
    graph: DirectedGraph,
    ignition: VertexId,
    horizon: Minutes,
    delay: Minutes,
    schedule: Vec<Release>,
    level_offsets: Vec<usize>,
    pub meta: Value,
}

impl WspInstance {
    pub fn new(
        graph: DirectedGraph,
        ignition: VertexId,
        horizon: Minutes,
        delay: Minutes,
        schedule: Vec<Release>,
        meta: Value,
    ) -> Result<Self> {
        graph.check_vertex(ignition)?;
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(WspError::structural(format!("horizon must be positive, got {horizon}")));
        }
        if !(delay.is_finite() && delay >= 0.0) {
            return Err(WspError::structural(format!("delay must be nonnegative, got {delay}")));
        }
        let mut prev = 0.0;
        for (i, r) in schedule.iter().enumerate() {
            if r.count == 0 {
                return Err(WspError::structural(format!("release {i} has zero resources")));
            }
            if !(r.time > 0.0 && r.time <= horizon) {
                return Err(WspError::structural(format!(
                    "release {i} at {} min lies outside (0, {horizon}]",
                    r.time
                )));
            }
            if i > 0 && r.time <= prev {
                return Err(WspError::structural("release times must be strictly increasing"));
            }
            prev = r.time;
        }
        let mut level_offsets = Vec::with_capacity(schedule.len() + 1);
        level_offsets.push(0);
        for r in &schedule {
            level_offsets.push(level_offsets.last().unwrap() + r.count);
        }
        Ok(WspInstance { graph, ignition, horizon, delay, schedule, level_offsets, meta })
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn ignition(&self) -> VertexId {
        self.ignition
    }

    pub fn horizon(&self) -> Minutes {
        self.horizon
    }

    pub fn delay(&self) -> Minutes {
        self.delay
    }

    pub fn schedule(&self) -> &[Release] {
        &self.schedule
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Total number of resources `k`.
    pub fn total_resources(&self) -> usize {
        *self.level_offsets.last().unwrap()
    }

    /// Resource ids released at schedule level `level`.
    pub fn level_resources(&self, level: usize) -> std::ops::Range<ResourceId> {
        self.level_offsets[level]..self.level_offsets[level + 1]
    }

    /// Schedule level of a resource, if the id is in range.
    pub fn level_of(&self, resource: ResourceId) -> Option<usize> {
        if resource >= self.total_resources() {
            return None;
        }
        Some(self.level_offsets.partition_point(|&o| o <= resource) - 1)
    }

    pub fn release_time(&self, resource: ResourceId) -> Option<Minutes> {
        self.level_of(resource).map(|l| self.schedule[l].time)
    }

    /// Same instance with a different schedule (and recomputed offsets).
    pub fn with_schedule(&self, schedule: Vec<Release>) -> Result<Self> {
        WspInstance::new(self.graph.clone(), self.ignition, self.horizon, self.delay, schedule, self.meta.clone())
    }
}
