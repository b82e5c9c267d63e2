//! Directed graphs with positive arc travel times.
//!
//! Arcs are kept in canonical order (by tail, then head) and indexed in
//! compressed sparse row form for both directions, so neighbourhood queries
//! and arc lookups are cheap and iteration order is reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Result, WspError};

pub type VertexId = usize;

/// Time in minutes.
pub type Minutes = f64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
    pub time: Minutes,
}

/// Serialized as `{"vertex_count": n, "arcs": [[tail, head, time], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphData", into = "GraphData")]
pub struct DirectedGraph {
    vertex_count: usize,
    arcs: Vec<Arc>,
    out_offsets: Vec<usize>,
    // Positions into `arcs`, grouped by head.
    in_index: Vec<usize>,
    in_offsets: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphData {
    vertex_count: usize,
    arcs: Vec<(VertexId, VertexId, Minutes)>,
}

impl TryFrom<GraphData> for DirectedGraph {
    type Error = WspError;

    fn try_from(d: GraphData) -> Result<Self> {
        DirectedGraph::new(d.vertex_count, d.arcs)
    }
}

impl From<DirectedGraph> for GraphData {
    fn from(g: DirectedGraph) -> Self {
        GraphData { vertex_count: g.vertex_count, arcs: g.arcs.iter().map(|a| (a.tail, a.head, a.time)).collect() }
    }
}

impl DirectedGraph {
    /// Builds a graph, validating ids, self-loops, duplicate arcs and times.
    pub fn new(vertex_count: usize, arcs: impl IntoIterator<Item = (VertexId, VertexId, Minutes)>) -> Result<Self> {
        let mut arcs: Vec<Arc> = arcs
            .into_iter()
            .map(|(tail, head, time)| Arc { tail, head, time })
            .collect();
        for a in &arcs {
            if a.tail >= vertex_count || a.head >= vertex_count {
                return Err(WspError::structural(format!(
                    "arc ({}, {}) references a vertex outside [0, {vertex_count})",
                    a.tail, a.head
                )));
            }
            if a.tail == a.head {
                return Err(WspError::structural(format!("self-loop at vertex {}", a.tail)));
            }
            if !(a.time.is_finite() && a.time > 0.0) {
                return Err(WspError::structural(format!(
                    "arc ({}, {}) has non-positive or non-finite travel time {}",
                    a.tail, a.head, a.time
                )));
            }
        }
        arcs.sort_by_key(|a| (a.tail, a.head));
        if let Some(w) = arcs.windows(2).find(|w| (w[0].tail, w[0].head) == (w[1].tail, w[1].head)) {
            return Err(WspError::structural(format!("duplicate arc ({}, {})", w[0].tail, w[0].head)));
        }

        let mut out_offsets = vec![0usize; vertex_count + 1];
        let mut in_offsets = vec![0usize; vertex_count + 1];
        for a in &arcs {
            out_offsets[a.tail + 1] += 1;
            in_offsets[a.head + 1] += 1;
        }
        for v in 0..vertex_count {
            out_offsets[v + 1] += out_offsets[v];
            in_offsets[v + 1] += in_offsets[v];
        }
        let mut fill = in_offsets.clone();
        let mut in_index = vec![0usize; arcs.len()];
        for (i, a) in arcs.iter().enumerate() {
            in_index[fill[a.head]] = i;
            fill[a.head] += 1;
        }

        Ok(DirectedGraph { vertex_count, arcs, out_offsets, in_index, in_offsets })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// All arcs in canonical (tail, head) order.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn out_arcs(&self, v: VertexId) -> &[Arc] {
        &self.arcs[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    pub fn in_arcs(&self, v: VertexId) -> impl Iterator<Item = &Arc> + '_ {
        self.in_index[self.in_offsets[v]..self.in_offsets[v + 1]]
            .iter()
            .map(move |&i| &self.arcs[i])
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_offsets[v + 1] - self.out_offsets[v]
    }

    pub fn arc_time(&self, tail: VertexId, head: VertexId) -> Option<Minutes> {
        if tail >= self.vertex_count {
            return None;
        }
        let out = self.out_arcs(tail);
        out.binary_search_by(|a| a.head.cmp(&head)).ok().map(|i| out[i].time)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(WspError::structural(format!(
                "vertex {v} outside [0, {})",
                self.vertex_count
            )))
        }
    }

    pub fn max_arc_time(&self) -> Minutes {
        self.arcs.iter().map(|a| a.time).fold(0.0, f64::max)
    }

    pub fn min_arc_time(&self) -> Option<Minutes> {
        self.arcs.iter().map(|a| a.time).reduce(f64::min)
    }

    /// Number of distinct unordered vertex pairs joined by at least one arc.
    pub fn undirected_edge_count(&self) -> usize {
        self.arcs
            .iter()
            .filter(|a| a.tail < a.head || self.arc_time(a.head, a.tail).is_none())
            .count()
    }

    /// Euler's bound `|E| <= 3|V| - 6` on the underlying simple undirected
    /// graph. A necessary condition for planarity, not a sufficient one.
    pub fn satisfies_euler_bound(&self) -> bool {
        let v = self.vertex_count;
        if v < 3 {
            return true;
        }
        self.undirected_edge_count() <= 3 * v - 6
    }
}
