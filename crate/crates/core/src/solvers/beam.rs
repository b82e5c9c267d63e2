//! Beam search over release levels.
//!
//! Tree levels are release times and nodes are partial allocations. A node
//! is expanded by giving the level's resources to combinations of its
//! perimeter-ordered candidates; children are ranked by burned vertices at
//! the horizon, then burned vertices at the next release time, then by the
//! allocation itself.

use std::collections::HashSet;
use std::time::Instant;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{elapsed, perimeter_order, Partial, SolverResult};
use crate::error::{Result, WspError};
use crate::graph::VertexId;
use crate::instance::WspInstance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamConfig {
    /// Nodes kept per level; `None` keeps every node.
    pub width: Option<usize>,
    /// Children generated per node; `None` generates every combination.
    pub expansions: Option<usize>,
    pub seed: u64,
}

impl Default for BeamConfig {
    fn default() -> Self {
        BeamConfig { width: Some(8), expansions: Some(16), seed: 0 }
    }
}

impl BeamConfig {
    pub fn unbounded() -> Self {
        BeamConfig { width: None, expansions: None, seed: 0 }
    }

    fn validate(&self) -> Result<()> {
        if self.width == Some(0) {
            return Err(WspError::domain("beam width must be at least 1"));
        }
        if self.expansions == Some(0) {
            return Err(WspError::domain("expansions per node must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Node {
    partial: Partial,
    objective: usize,
    next_burned: usize,
}

impl Node {
    fn new(instance: &WspInstance, partial: Partial, level: usize) -> Self {
        let outcome = partial.outcome(instance);
        let next = instance.schedule().get(level + 1).map_or(instance.horizon(), |r| r.time);
        Node {
            objective: outcome.burned_count(instance.horizon()),
            next_burned: outcome.burned_count(next),
            partial,
        }
    }

    fn key(&self) -> (usize, usize, &[(usize, VertexId)]) {
        (self.objective, self.next_burned, self.partial.alloc.assignments())
    }
}

fn binomial_exceeds(n: usize, k: usize, limit: usize) -> bool {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc > limit as f64
}

/// Vertex sets (sorted) to protect at this level from one node.
fn child_picks(candidates: &[VertexId], m: usize, expansions: Option<usize>, rng: &mut ChaCha8Rng) -> Vec<Vec<VertexId>> {
    let sorted = |mut v: Vec<VertexId>| {
        v.sort_unstable();
        v
    };
    match expansions {
        Some(e) if binomial_exceeds(candidates.len(), m, e) => {
            let pool = &candidates[..candidates.len().min(m + e)];
            let mut seen = HashSet::new();
            let mut picks = Vec::with_capacity(e);
            let top = sorted(pool[..m].to_vec());
            seen.insert(top.clone());
            picks.push(top);
            let mut attempts = 0;
            while picks.len() < e && attempts < 8 * e {
                attempts += 1;
                let p = sorted(sample(rng, pool.len(), m).into_iter().map(|i| pool[i]).collect());
                if seen.insert(p.clone()) {
                    picks.push(p);
                }
            }
            picks
        }
        _ => candidates.iter().copied().combinations(m).map(sorted).collect(),
    }
}

pub fn beam_search(instance: &WspInstance, config: &BeamConfig) -> Result<SolverResult> {
    config.validate()?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut beam = vec![Node::new(instance, Partial::empty(instance), usize::MAX - 1)];
    let mut expanded = 0u64;
    for (level, release) in instance.schedule().iter().enumerate() {
        let mut children = Vec::new();
        for node in &beam {
            expanded += 1;
            let arrival = node.partial.outcome(instance).arrival;
            let c = perimeter_order(instance, &node.partial.mask, &arrival, release.time);
            let m = release.count.min(c.len());
            for pick in child_picks(&c, m, config.expansions, &mut rng) {
                children.push(Node::new(instance, node.partial.extend(instance, level, &pick), level));
            }
        }
        children.sort_by(|a, b| a.key().cmp(&b.key()));
        let mut seen = HashSet::new();
        children.retain(|n| seen.insert(n.partial.mask.clone()));
        if let Some(w) = config.width {
            children.truncate(w);
        }
        beam = children;
    }
    let best = beam.into_iter().min_by(|a, b| a.key().cmp(&b.key())).expect("beam is never empty");
    Ok(SolverResult {
        allocation: best.partial.alloc,
        objective: best.objective,
        iterations: expanded,
        elapsed_secs: elapsed(started),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::Allocation;
    use crate::feasibility::is_feasible;
    use crate::fire::{arrival_for_mask, free_burn_objective, objective};
    use crate::sampling::random_grid_instance;
    use crate::solvers::{brute_force, BruteForceLimits};

    fn inst(seed: u64, side: usize, k: usize, t: usize) -> WspInstance {
        random_grid_instance(&mut ChaCha8Rng::seed_from_u64(seed), side, k, t)
    }

    /// Level-by-level greedy over all full-size picks, same ranking.
    fn greedy(inst: &WspInstance) -> (usize, Allocation) {
        let n = inst.vertex_count();
        let mut mask = vec![false; n];
        let mut alloc = Allocation::empty();
        for (level, rel) in inst.schedule().iter().enumerate() {
            let arr = arrival_for_mask(inst, &mask).arrival;
            let c: Vec<usize> =
                (0..n).filter(|&v| v != inst.ignition() && !mask[v] && arr[v] >= rel.time).collect();
            let next = inst.schedule().get(level + 1).map_or(inst.horizon(), |r| r.time);
            let mut best: Option<(usize, usize, Allocation, Vec<bool>)> = None;
            for pick in c.iter().copied().combinations(rel.count.min(c.len())) {
                let mut m2 = mask.clone();
                let mut a2 = alloc.clone();
                for (r, &v) in inst.level_resources(level).zip(&pick) {
                    m2[v] = true;
                    a2.assign(r, v);
                }
                let out = arrival_for_mask(inst, &m2);
                let cand = (out.burned_count(inst.horizon()), out.burned_count(next), a2, m2);
                let better = match &best {
                    None => true,
                    Some(b) => (cand.0, cand.1, cand.2.assignments()) < (b.0, b.1, b.2.assignments()),
                };
                if better {
                    best = Some(cand);
                }
            }
            let b = best.unwrap();
            alloc = b.2;
            mask = b.3;
        }
        (objective(inst, &alloc).unwrap(), alloc)
    }

    #[test]
    fn no_resources_gives_empty_allocation() {
        let i = inst(0, 4, 0, 1);
        let r = beam_search(&i, &BeamConfig::default()).unwrap();
        assert!(r.allocation.is_empty());
        assert_eq!(r.objective, free_burn_objective(&i));
    }

    #[test]
    fn unbounded_beam_is_optimal_on_small_grids() {
        for seed in 0..10 {
            let i = inst(seed, 3, 2, 1);
            let exact = brute_force(&i, &BruteForceLimits::default()).unwrap();
            let beam = beam_search(&i, &BeamConfig::unbounded()).unwrap();
            assert_eq!(beam.objective, exact.objective, "seed {seed}");
        }
    }

    #[test]
    fn width_one_is_greedy() {
        for seed in 0..8 {
            let i = inst(seed, 4, 3, 2);
            let cfg = BeamConfig { width: Some(1), expansions: None, seed: 0 };
            let r = beam_search(&i, &cfg).unwrap();
            let (obj, alloc) = greedy(&i);
            assert_eq!((r.objective, r.allocation), (obj, alloc), "seed {seed}");
        }
    }

    #[test]
    fn bounded_beam_is_feasible_and_deterministic() {
        for seed in 0..5 {
            let i = inst(seed, 6, 6, 3);
            let cfg = BeamConfig { width: Some(3), expansions: Some(5), seed };
            let a = beam_search(&i, &cfg).unwrap();
            let b = beam_search(&i, &cfg).unwrap();
            assert_eq!(a.allocation, b.allocation);
            assert!(is_feasible(&i, &a.allocation));
            assert!(a.objective <= free_burn_objective(&i));
            assert_eq!(objective(&i, &a.allocation).unwrap(), a.objective);
        }
    }

    #[test]
    fn invalid_config() {
        let i = inst(0, 3, 1, 1);
        assert!(beam_search(&i, &BeamConfig { width: Some(0), ..Default::default() }).is_err());
        assert!(beam_search(&i, &BeamConfig { expansions: Some(0), ..Default::default() }).is_err());
    }

    #[test]
    fn sampled_children_are_distinct_and_sized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c: Vec<usize> = (0..30).collect();
        let picks = child_picks(&c, 3, Some(10), &mut rng);
        assert_eq!(picks.len(), 10);
        assert_eq!(picks[0], vec![0, 1, 2]);
        let set: HashSet<_> = picks.iter().collect();
        assert_eq!(set.len(), 10);
        assert!(picks.iter().all(|p| p.len() == 3));
    }
}
