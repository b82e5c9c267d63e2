//! Most vital nodes: remove at most `k` vertices other than `s` and `t` so
//! that the shortest `s`-`t` path costs at least `h`.

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WspError};
use crate::fire::propagate;
use crate::graph::{DirectedGraph, Minutes, VertexId};

/// Default cap on evaluated subsets for the exhaustive oracles.
pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MvnpData", into = "MvnpData")]
pub struct MvnpInstance {
    graph: DirectedGraph,
    source: VertexId,
    sink: VertexId,
    k: usize,
    h: Minutes,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MvnpData {
    graph: DirectedGraph,
    source: VertexId,
    sink: VertexId,
    k: usize,
    h: Minutes,
}

impl TryFrom<MvnpData> for MvnpInstance {
    type Error = WspError;

    fn try_from(d: MvnpData) -> Result<Self> {
        MvnpInstance::new(d.graph, d.source, d.sink, d.k, d.h)
    }
}

impl From<MvnpInstance> for MvnpData {
    fn from(m: MvnpInstance) -> Self {
        MvnpData { graph: m.graph, source: m.source, sink: m.sink, k: m.k, h: m.h }
    }
}

impl MvnpInstance {
    pub fn new(graph: DirectedGraph, source: VertexId, sink: VertexId, k: usize, h: Minutes) -> Result<Self> {
        graph.check_vertex(source)?;
        graph.check_vertex(sink)?;
        if source == sink {
            return Err(WspError::structural("source and sink must differ"));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(WspError::structural(format!("threshold h must be positive, got {h}")));
        }
        Ok(MvnpInstance { graph, source, sink, k, h })
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h(&self) -> Minutes {
        self.h
    }

    /// `d_{G \ S}(s, t)`, `+inf` when disconnected.
    pub fn distance_without(&self, removed: &[VertexId]) -> Minutes {
        let mut extra = vec![0.0; self.graph.vertex_count()];
        for &v in removed {
            extra[v] = f64::INFINITY;
        }
        propagate(&self.graph, self.source, &extra)[self.sink]
    }

    /// Vertices eligible for removal, ascending.
    pub fn removable(&self) -> Vec<VertexId> {
        (0..self.graph.vertex_count()).filter(|&v| v != self.source && v != self.sink).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MvnpSolution {
    pub removed: Vec<VertexId>,
    /// Shortest `s`-`t` distance after removal.
    pub distance: Minutes,
    /// Whether `distance >= h` (disconnection counts).
    pub answer: bool,
    pub evaluated: u64,
}

pub(crate) fn subset_count(n: usize, k: usize) -> f64 {
    (0..=k.min(n)).map(|j| (0..j).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)).sum()
}

/// Exhaustive search over removal sets of size at most `k`, smallest sets
/// first; returns the first set attaining the largest distance.
pub fn solve_mvnp_brute(mvnp: &MvnpInstance, cap: u64) -> Result<MvnpSolution> {
    let candidates = mvnp.removable();
    let estimate = subset_count(candidates.len(), mvnp.k);
    if estimate > cap as f64 {
        return Err(WspError::LimitExceeded { estimate, limit: cap });
    }
    let mut best: Option<(Minutes, Vec<VertexId>)> = None;
    let mut evaluated = 0;
    for size in 0..=mvnp.k.min(candidates.len()) {
        for removed in candidates.iter().copied().combinations(size) {
            evaluated += 1;
            let d = mvnp.distance_without(&removed);
            if best.as_ref().is_none_or(|(b, _)| d > *b) {
                best = Some((d, removed));
            }
        }
    }
    let (distance, removed) = best.expect("the empty set is always evaluated");
    Ok(MvnpSolution { removed, distance, answer: distance >= mvnp.h, evaluated })
}

/// Random MVNP instance on `3..=max_vertices` vertices with integer costs
/// in `1..=5`, `s = 0`, `t = n - 1`, `k <= 2` and `h` near `d_G(s, t)`.
/// The source always has an arc to some vertex other than the sink.
pub fn random_mvnp<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize) -> MvnpInstance {
    let n = rng.gen_range(3..=max_vertices.max(3));
    let p = rng.gen_range(0.25..0.6);
    let (s, t) = (0, n - 1);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v, rng.gen_range(1..=5) as f64));
            }
        }
    }
    if !arcs.iter().any(|&(u, v, _)| u == s && v != t) {
        let v = rng.gen_range(1..n - 1);
        arcs.push((s, v, rng.gen_range(1..=5) as f64));
    }
    let graph = DirectedGraph::new(n, arcs).expect("sampled arcs are valid");
    let k = rng.gen_range(0..=2);
    let d = propagate(&graph, s, &vec![0.0; n])[t];
    let h = if d.is_finite() { (d + rng.gen_range(-2.0..=4.0f64).round()).max(1.0) } else { rng.gen_range(1..=10) as f64 };
    MvnpInstance::new(graph, s, t, k, h).expect("sampled instance is valid")
}
