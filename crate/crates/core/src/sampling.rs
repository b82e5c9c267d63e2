//! Small random graphs and instances for tests, verification and demos.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::Value;

use crate::allocation::Allocation;
use crate::fire::propagate;
use crate::graph::{DirectedGraph, Minutes, VertexId};
use crate::instance::{Release, WspInstance};

/// Digraph on `n` vertices where each ordered pair is an arc with
/// probability `p`; integer travel times in `1..=max_time`.
pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64, max_time: u32) -> DirectedGraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v, rng.gen_range(1..=max_time) as f64));
            }
        }
    }
    DirectedGraph::new(n, arcs).expect("sampled arcs are valid")
}

/// `side × side` 4-neighbour grid with independent integer times in 1..=9
/// per direction, ignition in the centre, `k` resources over `levels`
/// release times in the first half of the horizon.
pub fn random_grid_instance<R: Rng + ?Sized>(rng: &mut R, side: usize, k: usize, levels: usize) -> WspInstance {
    let idx = |x: usize, y: usize| y * side + x;
    let mut arcs = Vec::new();
    for y in 0..side {
        for x in 0..side {
            if x + 1 < side {
                arcs.push((idx(x, y), idx(x + 1, y), rng.gen_range(1..=9) as f64));
                arcs.push((idx(x + 1, y), idx(x, y), rng.gen_range(1..=9) as f64));
            }
            if y + 1 < side {
                arcs.push((idx(x, y), idx(x, y + 1), rng.gen_range(1..=9) as f64));
                arcs.push((idx(x, y + 1), idx(x, y), rng.gen_range(1..=9) as f64));
            }
        }
    }
    let graph = DirectedGraph::new(side * side, arcs).expect("grid arcs are valid");
    let ignition = idx(side / 2, side / 2);
    let free = propagate(&graph, ignition, &vec![0.0; side * side]);
    let mut sorted = free.clone();
    sorted.sort_by(f64::total_cmp);
    let horizon = sorted[(sorted.len() * 4 / 5).min(sorted.len() - 1)].max(2.0).ceil();
    let delay = rng.gen_range(1..=horizon as u32) as Minutes;
    instance_with_schedule(graph, ignition, horizon, delay, k, levels)
}

fn instance_with_schedule(
    graph: DirectedGraph,
    ignition: VertexId,
    horizon: Minutes,
    delay: Minutes,
    k: usize,
    levels: usize,
) -> WspInstance {
    let levels = levels.max(1);
    let mut schedule = Vec::new();
    for i in 0..levels {
        let count = k / levels + usize::from(i < k % levels);
        if count > 0 {
            let time = horizon * (i + 1) as f64 / (2 * levels) as f64;
            schedule.push(Release { time, count });
        }
    }
    WspInstance::new(graph, ignition, horizon, delay, schedule, Value::Null).expect("sampled schedule is valid")
}

/// Arbitrary injective allocation (not necessarily feasible) using a random
/// subset of the instance's resources.
pub fn random_allocation<R: Rng + ?Sized>(rng: &mut R, instance: &WspInstance) -> Allocation {
    let k = instance.total_resources().min(instance.vertex_count());
    let used = rng.gen_range(0..=k);
    let mut resources: Vec<usize> = (0..instance.total_resources()).collect();
    resources.shuffle(rng);
    let mut vertices: Vec<usize> = (0..instance.vertex_count()).collect();
    vertices.shuffle(rng);
    Allocation::from_pairs(resources.into_iter().zip(vertices).take(used))
}
