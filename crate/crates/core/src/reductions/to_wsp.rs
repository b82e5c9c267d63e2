//! MVNP to WSP: the sink is replaced by `|V|` leaves behind every
//! predecessor that lies on a short `s`-`t` path, and all resources are
//! released just before the fire can leave the source.

use serde_json::json;

use super::mvnp::MvnpInstance;
use crate::error::{Result, WspError};
use crate::fire::propagate;
use crate::graph::{DirectedGraph, VertexId};
use crate::instance::{Release, WspInstance};

/// Reduced instance plus the decision limit on burned vertices.
#[derive(Debug, Clone)]
pub struct WspReduction {
    pub instance: WspInstance,
    pub budget: usize,
    /// Index in the reduced instance of each original vertex (`None` for the sink).
    pub vertex_map: Vec<Option<VertexId>>,
}

pub fn mvnp_to_wsp(mvnp: &MvnpInstance) -> Result<WspReduction> {
    let g = mvnp.graph();
    let n = g.vertex_count();
    let (s, t, h) = (mvnp.source(), mvnp.sink(), mvnp.h());
    let dist = propagate(g, s, &vec![0.0; n]);
    let short: Vec<(VertexId, f64)> = g
        .in_arcs(t)
        .filter(|a| dist[a.tail] + a.time < h)
        .map(|a| (a.tail, a.time))
        .collect();

    let vertex_map: Vec<Option<VertexId>> =
        (0..n).map(|v| (v != t).then(|| if v < t { v } else { v - 1 })).collect();
    let mut arcs: Vec<(VertexId, VertexId, f64)> = g
        .arcs()
        .iter()
        .filter(|a| a.tail != t && a.head != t)
        .map(|a| (vertex_map[a.tail].unwrap(), vertex_map[a.head].unwrap(), a.time))
        .collect();
    let mut next = n - 1;
    for &(v, time) in &short {
        for _ in 0..n {
            arcs.push((vertex_map[v].unwrap(), next, time));
            next += 1;
        }
    }
    let graph = DirectedGraph::new(next, arcs)?;
    let ignition = vertex_map[s].unwrap();
    let eps = graph
        .out_arcs(ignition)
        .iter()
        .map(|a| a.time)
        .reduce(f64::min)
        .ok_or_else(|| WspError::structural("source has no outgoing arc after removing the sink"))?;
    let schedule = if mvnp.k() > 0 { vec![Release { time: (eps / 2.0).min(h), count: mvnp.k() }] } else { vec![] };
    let meta = json!({ "reduction": { "from": "mvnp", "to": "wsp", "leaf_parents": short.len(), "epsilon": eps } });
    let instance = WspInstance::new(graph, ignition, h, h, schedule, meta)?;
    Ok(WspReduction { instance, budget: n - 1, vertex_map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{brute_force, BruteForceLimits};

    #[test]
    fn three_vertex_example() {
        let g = DirectedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)]).unwrap();
        let m = MvnpInstance::new(g, 0, 2, 1, 3.0).unwrap();
        let r = mvnp_to_wsp(&m).unwrap();
        // N = {x}: s reaches t directly only at cost 3, not below h.
        assert_eq!(r.instance.vertex_count(), 2 + 3);
        assert_eq!(r.budget, 2);
        assert_eq!(r.instance.graph().out_degree(1), 3);
        assert!(r.instance.graph().out_arcs(1).iter().all(|a| a.time == 1.0));
        assert_eq!(r.instance.schedule(), &[Release { time: 0.5, count: 1 }]);
        assert_eq!((r.instance.horizon(), r.instance.delay()), (3.0, 3.0));
        // Removing x gives d = 3 >= h, and protecting x saves the leaves.
        let best = brute_force(&r.instance, &BruteForceLimits::default()).unwrap();
        assert!(best.objective <= r.budget);
    }

    #[test]
    fn no_short_predecessors_means_no_leaves() {
        let g = DirectedGraph::new(3, [(0, 1, 5.0), (1, 2, 5.0)]).unwrap();
        let m = MvnpInstance::new(g, 0, 2, 0, 3.0).unwrap();
        let r = mvnp_to_wsp(&m).unwrap();
        assert_eq!(r.instance.vertex_count(), 2);
        assert!(r.instance.schedule().is_empty());
        assert!(crate::fire::free_burn_objective(&r.instance) <= r.budget);
    }

    #[test]
    fn isolated_source_is_an_error() {
        let g = DirectedGraph::new(3, [(0, 2, 1.0), (1, 2, 1.0)]).unwrap();
        // The only arc out of s is too long to make s a short predecessor.
        let m = MvnpInstance::new(g, 0, 2, 1, 1.0).unwrap();
        assert!(matches!(mvnp_to_wsp(&m), Err(WspError::Structural(_))));
    }

    #[test]
    fn sink_in_the_middle_is_reindexed() {
        let g = DirectedGraph::new(4, [(0, 1, 1.0), (1, 3, 1.0), (0, 3, 1.0), (3, 0, 2.0)]).unwrap();
        let m = MvnpInstance::new(g, 3, 1, 1, 10.0).unwrap();
        let r = mvnp_to_wsp(&m).unwrap();
        assert_eq!(r.vertex_map, vec![Some(0), None, Some(1), Some(2)]);
        assert_eq!(r.instance.ignition(), 2);
    }
}
