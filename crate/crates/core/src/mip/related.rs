//! Two earlier fire-containment models expressed in the same notation.
//!
//! The Hof model maximizes the fire arrival time at target vertices with a
//! fractional treatment budget; arc `uv` costs `α_u r_u + β_u`. With several
//! targets a variable `γ <= a_v` for every target is maximized, so the
//! objective is the earliest target arrival.
//!
//! The Wei model minimizes the weighted loss of burned vertices with `k`
//! timeless resources and forbids suppression where the predicted flame
//! length exceeds a threshold.

use serde::{Deserialize, Serialize};

use super::{padded, LinearModel, ObjectiveSense, Sense, VarKind};
use crate::error::{Result, WspError};
use crate::graph::{DirectedGraph, VertexId};
use crate::instance::WspInstance;
use crate::mip::wsp::arrival_upper_bound;

/// Extra per-vertex data for the related models, read from a sidecar file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuxData {
    #[serde(default)]
    pub weights: Option<Vec<f64>>,
    #[serde(default)]
    pub flame_lengths: Option<Vec<f64>>,
    /// Largest suppressible flame length; absent means no limit.
    #[serde(default)]
    pub flame_threshold: Option<f64>,
    #[serde(default)]
    pub alpha: Option<Vec<f64>>,
    #[serde(default)]
    pub beta: Option<Vec<f64>>,
    #[serde(default)]
    pub targets: Option<Vec<VertexId>>,
    #[serde(default)]
    pub budget: Option<f64>,
    #[serde(default)]
    pub integral: bool,
}

fn check_len(what: &str, values: &[f64], n: usize) -> Result<()> {
    if values.len() != n {
        return Err(WspError::structural(format!("{what} has {} entries for {n} vertices", values.len())));
    }
    if values.iter().any(|x| !x.is_finite()) {
        return Err(WspError::structural(format!("{what} contains a non-finite value")));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn build_hof_model(
    graph: &DirectedGraph,
    ignition: VertexId,
    targets: &[VertexId],
    alpha: &[f64],
    beta: &[f64],
    budget: f64,
    integral: bool,
) -> Result<LinearModel> {
    let n = graph.vertex_count();
    check_len("alpha", alpha, n)?;
    check_len("beta", beta, n)?;
    graph.check_vertex(ignition)?;
    if targets.is_empty() {
        return Err(WspError::structural("at least one target vertex is required"));
    }
    for &t in targets {
        graph.check_vertex(t)?;
    }
    if !(budget.is_finite() && budget >= 0.0) {
        return Err(WspError::domain(format!("treatment budget must be nonnegative, got {budget}")));
    }
    let name = |v: usize| padded(v, n.saturating_sub(1));
    let mut m = LinearModel::new("hof", ObjectiveSense::Maximize);
    let a: Vec<usize> = (0..n)
        .map(|v| m.add_variable(format!("a_{}", name(v)), VarKind::Continuous, 0.0, f64::INFINITY))
        .collect::<Result<_>>()?;
    let kind = if integral { VarKind::Binary } else { VarKind::Continuous };
    let r: Vec<usize> =
        (0..n).map(|v| m.add_variable(format!("r_{}", name(v)), kind, 0.0, 1.0)).collect::<Result<_>>()?;
    if let [t] = targets {
        m.set_objective([(a[*t], 1.0)])?;
    } else {
        let gamma = m.add_variable("gamma", VarKind::Continuous, 0.0, f64::INFINITY)?;
        m.set_objective([(gamma, 1.0)])?;
        for &t in targets {
            m.add_constraint(format!("target_{}", name(t)), [(gamma, 1.0), (a[t], -1.0)], Sense::Le, 0.0)?;
        }
    }
    m.add_constraint("source", [(a[ignition], 1.0)], Sense::Eq, 0.0)?;
    for arc in graph.arcs() {
        let (u, v) = (arc.tail, arc.head);
        m.add_constraint(
            format!("spread_{}_{}", name(u), name(v)),
            [(a[v], 1.0), (a[u], -1.0), (r[u], -alpha[u])],
            Sense::Le,
            beta[u],
        )?;
    }
    m.add_constraint("budget", r.iter().map(|&id| (id, 1.0)), Sense::Le, budget)?;
    Ok(m)
}

/// Wei model on the instance's graph, horizon and delay; release times are
/// ignored. `flame_threshold = None` allows suppression everywhere.
pub fn build_wei_model(
    instance: &WspInstance,
    weights: &[f64],
    flame_lengths: &[f64],
    flame_threshold: Option<f64>,
    k: usize,
) -> Result<LinearModel> {
    let n = instance.vertex_count();
    check_len("weights", weights, n)?;
    check_len("flame lengths", flame_lengths, n)?;
    let h = instance.horizon();
    let name = |v: usize| padded(v, n.saturating_sub(1));
    let ub = arrival_upper_bound(instance);
    let mut m = LinearModel::new("wei", ObjectiveSense::Minimize);
    m.notes.insert("arrival_upper_bound".into(), format!("{ub}"));
    let a: Vec<usize> = (0..n)
        .map(|v| m.add_variable(format!("a_{}", name(v)), VarKind::Continuous, 0.0, ub))
        .collect::<Result<_>>()?;
    let y: Vec<usize> =
        (0..n).map(|v| m.add_variable(format!("y_{}", name(v)), VarKind::Binary, 0.0, 1.0)).collect::<Result<_>>()?;
    let r: Vec<usize> =
        (0..n).map(|v| m.add_variable(format!("r_{}", name(v)), VarKind::Binary, 0.0, 1.0)).collect::<Result<_>>()?;
    m.set_objective(y.iter().zip(weights).map(|(&id, &w)| (id, w)))?;
    m.add_constraint("source", [(a[instance.ignition()], 1.0)], Sense::Eq, 0.0)?;
    for arc in instance.graph().arcs() {
        let (u, v) = (arc.tail, arc.head);
        m.add_constraint(
            format!("spread_{}_{}", name(u), name(v)),
            [(a[v], 1.0), (a[u], -1.0), (r[u], -instance.delay())],
            Sense::Le,
            arc.time,
        )?;
    }
    for v in 0..n {
        m.add_constraint(format!("burned_{}", name(v)), [(y[v], 1.0), (a[v], 1.0 / h)], Sense::Ge, 1.0)?;
    }
    m.add_constraint("budget", r.iter().map(|&id| (id, 1.0)), Sense::Le, k as f64)?;
    if let Some(limit) = flame_threshold {
        for v in 0..n {
            if flame_lengths[v] > limit {
                m.add_constraint(format!("safety_{}", name(v)), [(r[v], 1.0)], Sense::Eq, 0.0)?;
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fire::arrival_for_mask;
    use crate::instance::Release;
    use crate::mip::{validate_assignment, Assignment};
    use crate::sampling::random_grid_instance;
    use crate::solvers::{brute_force, BruteForceLimits};
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Bellman-Ford with arc cost charged by the tail vertex.
    fn tail_cost_distances(g: &DirectedGraph, s: usize, cost: &[f64]) -> Vec<f64> {
        let mut d = vec![f64::INFINITY; g.vertex_count()];
        d[s] = 0.0;
        for _ in 0..g.vertex_count() {
            for a in g.arcs() {
                d[a.head] = d[a.head].min(d[a.tail] + cost[a.tail]);
            }
        }
        d
    }

    /// Best Hof objective over binary treatments of size <= k, scored by
    /// Bellman-Ford with arc cost `α_u r_u + β_u`; each candidate's values are
    /// checked against the model.
    fn hof_binary_optimum(g: &DirectedGraph, s: usize, targets: &[usize], alpha: &[f64], beta: &[f64], k: usize) -> f64 {
        let m = build_hof_model(g, s, targets, alpha, beta, k as f64, true).unwrap();
        let n = g.vertex_count();
        let mut best = f64::NEG_INFINITY;
        for size in 0..=k.min(n) {
            for pick in (0..n).combinations(size) {
                let cost: Vec<f64> = (0..n).map(|u| beta[u] + if pick.contains(&u) { alpha[u] } else { 0.0 }).collect();
                let dist = tail_cost_distances(g, s, &cost);
                let value = targets.iter().map(|&t| dist[t]).fold(f64::INFINITY, f64::min);
                let mut vals = Assignment::new();
                for (v, &d) in dist.iter().enumerate() {
                    vals.set(format!("a_{}", padded(v, n - 1)), d);
                    vals.set(format!("r_{}", padded(v, n - 1)), if pick.contains(&v) { 1.0 } else { 0.0 });
                }
                if targets.len() > 1 {
                    vals.set("gamma", value);
                }
                assert!(validate_assignment(&m, &vals).unwrap().is_empty());
                best = best.max(value);
            }
        }
        best
    }

    #[test]
    fn single_arc_arithmetic() {
        let g = DirectedGraph::new(2, [(0, 1, 1.0)]).unwrap();
        let alpha = [3.0, 0.0];
        let beta = [5.0, 0.0];
        let m = build_hof_model(&g, 0, &[1], &alpha, &beta, 1.0, false).unwrap();
        let mut vals = Assignment::new();
        vals.set("a_0", 0.0);
        vals.set("a_1", 8.0);
        vals.set("r_0", 1.0);
        vals.set("r_1", 0.0);
        assert!(validate_assignment(&m, &vals).unwrap().is_empty());
        assert_eq!(m.objective_value(&vals).unwrap(), 8.0);
        vals.set("a_1", 8.5);
        assert_eq!(validate_assignment(&m, &vals).unwrap().len(), 1);
        assert_eq!(hof_binary_optimum(&g, 0, &[1], &alpha, &beta, 1), 8.0);
    }

    #[test]
    fn zero_budget_is_the_beta_shortest_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let inst = random_grid_instance(&mut rng, 3, 0, 1);
            let n = 9;
            let alpha: Vec<f64> = (0..n).map(|_| rng.gen_range(0..5) as f64).collect();
            let beta: Vec<f64> = (0..n).map(|_| rng.gen_range(1..5) as f64).collect();
            let weighted = DirectedGraph::new(n, inst.graph().arcs().iter().map(|a| (a.tail, a.head, beta[a.tail]))).unwrap();
            let d = crate::fire::propagate(&weighted, 4, &[0.0; 9]);
            assert_eq!(hof_binary_optimum(inst.graph(), 4, &[0], &alpha, &beta, 0), d[0]);
            let zero = vec![0.0; n];
            assert_eq!(
                hof_binary_optimum(inst.graph(), 4, &[0, 8], &zero, &beta, 2),
                d[0].min(d[8]),
                "α = 0 leaves the optimum unchanged"
            );
        }
    }

    #[test]
    fn multi_target_uses_earliest_arrival() {
        let g = DirectedGraph::new(3, [(0, 1, 1.0), (0, 2, 1.0)]).unwrap();
        let m = build_hof_model(&g, 0, &[1, 2], &[0.0; 3], &[2.0, 0.0, 0.0], 0.0, false).unwrap();
        let mut vals = Assignment::new();
        for (k, v) in [("a_0", 0.0), ("a_1", 2.0), ("a_2", 2.0), ("r_0", 0.0), ("r_1", 0.0), ("r_2", 0.0), ("gamma", 2.0)] {
            vals.set(k, v);
        }
        assert!(validate_assignment(&m, &vals).unwrap().is_empty());
        vals.set("gamma", 3.0);
        assert!(!validate_assignment(&m, &vals).unwrap().is_empty());
    }

    fn wei_optimum(inst: &WspInstance, w: &[f64], flame: &[f64], limit: Option<f64>, k: usize) -> f64 {
        let m = build_wei_model(inst, w, flame, limit, k).unwrap();
        let n = inst.vertex_count();
        let allowed: Vec<usize> = (0..n).filter(|&v| limit.is_none_or(|l| flame[v] <= l)).collect();
        let ub = arrival_upper_bound(inst);
        let mut best = f64::INFINITY;
        for size in 0..=k.min(allowed.len()) {
            for pick in allowed.iter().copied().combinations(size) {
                let mut mask = vec![false; n];
                pick.iter().for_each(|&v| mask[v] = true);
                let arr = arrival_for_mask(inst, &mask).arrival;
                let mut vals = Assignment::new();
                let mut loss = 0.0;
                for v in 0..n {
                    let a = arr[v].min(ub);
                    let y = if a < inst.horizon() { 1.0 } else { 0.0 };
                    loss += w[v] * y;
                    vals.set(format!("a_{}", padded(v, n - 1)), a);
                    vals.set(format!("y_{}", padded(v, n - 1)), y);
                    vals.set(format!("r_{}", padded(v, n - 1)), if mask[v] { 1.0 } else { 0.0 });
                }
                assert!(validate_assignment(&m, &vals).unwrap().is_empty());
                best = best.min(loss);
            }
        }
        best
    }

    #[test]
    fn wei_degenerate_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let inst = random_grid_instance(&mut rng, 3, 2, 1);
        let free = arrival_for_mask(&inst, &[false; 9]);
        let w: Vec<f64> = (0..9).map(|v| v as f64 + 1.0).collect();
        let free_loss: f64 = (0..9).filter(|&v| free.is_burned(v, inst.horizon())).map(|v| w[v]).sum();
        assert_eq!(wei_optimum(&inst, &w, &[2.0; 9], Some(1.0), 2), free_loss);
        assert_eq!(wei_optimum(&inst, &[0.0; 9], &[0.0; 9], None, 2), 0.0);
        let m = build_wei_model(&inst, &w, &[2.0; 9], Some(1.0), 2).unwrap();
        assert_eq!(m.constraints().iter().filter(|c| c.name.starts_with("safety_")).count(), 9);
    }

    #[test]
    fn wei_matches_wsp_with_one_early_release() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..8 {
            let base = random_grid_instance(&mut rng, 3, 2, 1);
            let eps = base.graph().min_arc_time().unwrap() / 2.0;
            let inst = base.with_schedule(vec![Release { time: eps, count: 2 }]).unwrap();
            // The ignition burns at 0 and can never be protected in the WSP;
            // its flame length rules it out in the Wei model.
            let mut flame = vec![0.0; 9];
            flame[inst.ignition()] = 1.0;
            let wei = wei_optimum(&inst, &[1.0; 9], &flame, Some(0.5), 2);
            let exact = brute_force(&inst, &BruteForceLimits::default()).unwrap();
            assert_eq!(wei, exact.objective as f64);
        }
    }
}
