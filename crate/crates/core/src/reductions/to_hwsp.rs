//! Target-protection variant with cost-homogeneous out-arcs and
//! vertex-dependent delays, the arc-splitting augmentation that makes any
//! graph cost-homogeneous, and the reduction from MVNP.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::mvnp::{subset_count, MvnpInstance};
use crate::allocation::Allocation;
use crate::error::{Result, WspError};
use crate::fire::propagate;
use crate::graph::{DirectedGraph, Minutes, VertexId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HwspInstance {
    pub graph: DirectedGraph,
    pub ignition: VertexId,
    pub targets: Vec<VertexId>,
    pub k: usize,
    pub delays: Vec<Minutes>,
}

impl HwspInstance {
    pub fn new(
        graph: DirectedGraph,
        ignition: VertexId,
        targets: Vec<VertexId>,
        k: usize,
        delays: Vec<Minutes>,
    ) -> Result<Self> {
        graph.check_vertex(ignition)?;
        if targets.is_empty() {
            return Err(WspError::structural("at least one target is required"));
        }
        for &t in &targets {
            graph.check_vertex(t)?;
        }
        if delays.len() != graph.vertex_count() || delays.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(WspError::structural("delays must be finite and nonnegative, one per vertex"));
        }
        for u in 0..graph.vertex_count() {
            let mut times = graph.out_arcs(u).iter().map(|a| a.time);
            if let Some(first) = times.next() {
                if times.any(|t| t != first) {
                    return Err(WspError::structural(format!("out-arcs of vertex {u} differ in cost")));
                }
            }
        }
        Ok(HwspInstance { graph, ignition, targets, k, delays })
    }
}

/// Earliest arrival over the targets, with each protected vertex adding its
/// own delay to its out-arcs.
pub fn evaluate_hwsp(inst: &HwspInstance, alloc: &Allocation) -> Result<Minutes> {
    let (dup_r, dup_v) = alloc.duplicates();
    if !dup_r.is_empty() || !dup_v.is_empty() {
        return Err(WspError::domain("allocation repeats a resource or vertex"));
    }
    let mut extra = vec![0.0; inst.graph.vertex_count()];
    for &(r, v) in alloc.assignments() {
        inst.graph.check_vertex(v)?;
        if r >= inst.k {
            return Err(WspError::domain(format!("unknown resource {r}")));
        }
        extra[v] = inst.delays[v];
    }
    let arrival = propagate(&inst.graph, inst.ignition, &extra);
    Ok(inst.targets.iter().map(|&t| arrival[t]).fold(f64::INFINITY, f64::min))
}

/// Largest earliest-target arrival over every protected set of size at most `k`.
pub fn solve_hwsp_brute(inst: &HwspInstance, cap: u64) -> Result<(Minutes, Vec<VertexId>)> {
    let n = inst.graph.vertex_count();
    let estimate = subset_count(n, inst.k);
    if estimate > cap as f64 {
        return Err(WspError::LimitExceeded { estimate, limit: cap });
    }
    let mut best: Option<(Minutes, Vec<VertexId>)> = None;
    for size in 0..=inst.k.min(n) {
        for set in (0..n).combinations(size) {
            let value = evaluate_hwsp(inst, &Allocation::from_pairs(set.iter().copied().enumerate()))?;
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                best = Some((value, set));
            }
        }
    }
    Ok(best.expect("the empty set is always evaluated"))
}

/// Splits every arc `uv` into `u -> q_uv -> v` with costs `ε/2` and
/// `t_uv - ε/2`, `ε` the smallest arc cost. Vertex `q` for the `j`-th arc
/// (canonical order) gets index `|V| + j`.
pub fn cost_preserving_augmentation(graph: &DirectedGraph) -> Result<DirectedGraph> {
    let n = graph.vertex_count();
    let Some(eps) = graph.min_arc_time() else {
        return Ok(graph.clone());
    };
    let half = eps / 2.0;
    let arcs = graph.arcs().iter().enumerate().flat_map(|(j, a)| {
        let q = n + j;
        [(a.tail, q, half), (q, a.head, a.time - half)]
    });
    DirectedGraph::new(n + graph.arc_count(), arcs)
}

/// Augmented graph, `D = {t}`, delays `0` on auxiliary vertices and on
/// `s`, `t`, `h` elsewhere; threshold `h`.
pub fn mvnp_to_hwsp(mvnp: &MvnpInstance) -> Result<(HwspInstance, Minutes)> {
    let n = mvnp.graph().vertex_count();
    let graph = cost_preserving_augmentation(mvnp.graph())?;
    let delays = (0..graph.vertex_count())
        .map(|v| if v >= n || v == mvnp.source() || v == mvnp.sink() { 0.0 } else { mvnp.h() })
        .collect();
    let inst = HwspInstance::new(graph, mvnp.source(), vec![mvnp.sink()], mvnp.k(), delays)?;
    Ok((inst, mvnp.h()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_digraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_arc_split() {
        let g = DirectedGraph::new(2, [(0, 1, 4.0)]).unwrap();
        let a = cost_preserving_augmentation(&g).unwrap();
        assert_eq!(a.vertex_count(), 3);
        assert_eq!(a.arc_time(0, 2), Some(2.0));
        assert_eq!(a.arc_time(2, 1), Some(2.0));
    }

    #[test]
    fn augmentation_is_homogeneous_and_sized() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let g = random_digraph(&mut rng, 8, 0.4, 9);
            if g.arc_count() == 0 {
                continue;
            }
            let a = cost_preserving_augmentation(&g).unwrap();
            assert_eq!(a.vertex_count(), g.vertex_count() + g.arc_count());
            let half = g.min_arc_time().unwrap() / 2.0;
            for v in 0..g.vertex_count() {
                assert!(a.out_arcs(v).iter().all(|x| x.time == half));
            }
            for q in g.vertex_count()..a.vertex_count() {
                assert_eq!(a.out_degree(q), 1);
            }
        }
    }

    #[test]
    fn auxiliary_protection_changes_nothing() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let m = crate::reductions::mvnp::random_mvnp(&mut rng, 6);
            let (inst, _) = mvnp_to_hwsp(&m).unwrap();
            let n = m.graph().vertex_count();
            let base: Vec<usize> = (1..n - 1).filter(|_| rng.gen_bool(0.3)).take(m.k()).collect();
            let aux: Vec<usize> = (n..inst.graph.vertex_count()).filter(|_| rng.gen_bool(0.3)).collect();
            let with_aux = HwspInstance { k: base.len() + aux.len(), ..inst.clone() };
            let a = evaluate_hwsp(&with_aux, &Allocation::from_pairs(base.iter().copied().enumerate())).unwrap();
            let all = base.iter().chain(&aux).copied().enumerate();
            let b = evaluate_hwsp(&with_aux, &Allocation::from_pairs(all)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn zero_budget_optimum_is_the_original_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let m = crate::reductions::mvnp::random_mvnp(&mut rng, 7);
            let m0 = MvnpInstance::new(m.graph().clone(), m.source(), m.sink(), 0, m.h()).unwrap();
            let (inst, _) = mvnp_to_hwsp(&m0).unwrap();
            let (value, _) = solve_hwsp_brute(&inst, 10).unwrap();
            assert_eq!(value, m0.distance_without(&[]));
        }
    }

    #[test]
    fn heterogeneous_out_arcs_are_rejected() {
        let g = DirectedGraph::new(3, [(0, 1, 1.0), (0, 2, 2.0)]).unwrap();
        assert!(HwspInstance::new(g, 0, vec![2], 1, vec![0.0; 3]).is_err());
    }
}
