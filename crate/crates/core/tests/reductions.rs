//! Reduction evaluators against simple-path enumeration, and structural
//! properties of the constructed instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wsp_core::reductions::{
    cost_preserving_augmentation, evaluate_hwsp, evaluate_wwsp, mvnp_to_hwsp, mvnp_to_wsp, mvnp_to_wwsp,
    HwspInstance, MvnpInstance, WwspInstance,
};
use wsp_core::sampling::random_digraph;
use wsp_core::{Allocation, DirectedGraph};

/// Cheapest simple path cost from `s` to every vertex, by DFS over all
/// simple paths; arc `uv` costs `t_uv + extra[u]`.
fn path_enumeration(g: &DirectedGraph, s: usize, extra: &[f64]) -> Vec<f64> {
    fn dfs(g: &DirectedGraph, u: usize, cost: f64, extra: &[f64], seen: &mut Vec<bool>, best: &mut Vec<f64>) {
        best[u] = best[u].min(cost);
        for a in g.out_arcs(u) {
            if !seen[a.head] {
                seen[a.head] = true;
                dfs(g, a.head, cost + a.time + extra[u], extra, seen, best);
                seen[a.head] = false;
            }
        }
    }
    let n = g.vertex_count();
    let mut best = vec![f64::INFINITY; n];
    let mut seen = vec![false; n];
    seen[s] = true;
    dfs(g, s, 0.0, extra, &mut seen, &mut best);
    best
}

#[test]
fn wwsp_evaluation_matches_path_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let n = rng.gen_range(2..=6);
        let graph = random_digraph(&mut rng, n, 0.5, 6);
        let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(-2..=5) as f64).collect();
        let protected: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        let inst = WwspInstance {
            graph: graph.clone(),
            weights: weights.clone(),
            ignition: 0,
            k: n,
            forbidden: vec![],
            delay: rng.gen_range(0..=6) as f64,
            horizon: rng.gen_range(1..=12) as f64,
        };
        let mut extra = vec![0.0; n];
        protected.iter().for_each(|&v| extra[v] = inst.delay);
        let arrival = path_enumeration(&graph, 0, &extra);
        let expected: f64 = (0..n).filter(|&v| arrival[v] < inst.horizon).map(|v| weights[v]).sum();
        let alloc = Allocation::from_pairs(protected.iter().copied().enumerate());
        assert_eq!(evaluate_wwsp(&inst, &alloc).unwrap(), expected);
        if protected.is_empty() {
            continue;
        }
        let forbidding = WwspInstance { forbidden: vec![protected[0]], ..inst };
        assert!(evaluate_wwsp(&forbidding, &alloc).is_err());
    }
}

#[test]
fn hwsp_evaluation_matches_path_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    while checked < 200 {
        let n = rng.gen_range(2..=6);
        // Homogeneous out-arc costs: one cost per tail.
        let cost: Vec<f64> = (0..n).map(|_| rng.gen_range(1..=5) as f64).collect();
        let mut arcs = Vec::new();
        for (u, &c) in cost.iter().enumerate() {
            for v in 0..n {
                if u != v && rng.gen_bool(0.5) {
                    arcs.push((u, v, c));
                }
            }
        }
        let graph = DirectedGraph::new(n, arcs).unwrap();
        let delays: Vec<f64> = (0..n).map(|_| rng.gen_range(0..=4) as f64).collect();
        let targets: Vec<usize> = (1..n).filter(|_| rng.gen_bool(0.5)).collect();
        if targets.is_empty() {
            continue;
        }
        let inst = HwspInstance::new(graph.clone(), 0, targets.clone(), n, delays.clone()).unwrap();
        let protected: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let mut extra = vec![0.0; n];
        protected.iter().for_each(|&v| extra[v] = delays[v]);
        let arrival = path_enumeration(&graph, 0, &extra);
        let expected = targets.iter().map(|&t| arrival[t]).fold(f64::INFINITY, f64::min);
        let alloc = Allocation::from_pairs(protected.iter().copied().enumerate());
        assert_eq!(evaluate_hwsp(&inst, &alloc).unwrap(), expected);
        if protected.is_empty() {
            assert_eq!(evaluate_hwsp(&inst, &Allocation::empty()).unwrap(), expected);
        }
        checked += 1;
    }
}

/// Undirected 4-neighbour grid as a symmetric digraph.
fn grid_mvnp(rng: &mut ChaCha8Rng, side: usize) -> MvnpInstance {
    let idx = |x: usize, y: usize| y * side + x;
    let mut arcs = Vec::new();
    for y in 0..side {
        for x in 0..side {
            for (dx, dy) in [(1, 0), (0, 1)] {
                if x + dx < side && y + dy < side {
                    let (u, v) = (idx(x, y), idx(x + dx, y + dy));
                    arcs.push((u, v, rng.gen_range(1..=5) as f64));
                    arcs.push((v, u, rng.gen_range(1..=5) as f64));
                }
            }
        }
    }
    let g = DirectedGraph::new(side * side, arcs).unwrap();
    MvnpInstance::new(g, 0, side * side - 1, 2, 8.0).unwrap()
}

#[test]
fn reductions_of_grid_inputs_pass_the_euler_bound() {
    // Necessary condition for planarity only: a smoke test, not a proof.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for side in 2..6 {
        let m = grid_mvnp(&mut rng, side);
        assert!(m.graph().satisfies_euler_bound());
        assert!(mvnp_to_wsp(&m).unwrap().instance.graph().satisfies_euler_bound());
        assert!(mvnp_to_wwsp(&m).0.graph.satisfies_euler_bound());
        assert!(mvnp_to_hwsp(&m).unwrap().0.graph.satisfies_euler_bound());
    }
}

#[test]
fn augmentation_preserves_original_distances() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let n = rng.gen_range(2..=9);
        let g = random_digraph(&mut rng, n, 0.35, 7);
        let a = cost_preserving_augmentation(&g).unwrap();
        for s in 0..n {
            let d = path_enumeration(&g, s, &vec![0.0; n]);
            let d2 = path_enumeration(&a, s, &vec![0.0; a.vertex_count()]);
            assert_eq!(&d[..], &d2[..n]);
        }
    }
}
