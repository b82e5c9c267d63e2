//! Random search baseline.
//!
//! Each iteration builds an allocation level by level, protecting vertices
//! drawn uniformly without replacement from those that are neither burned
//! nor protected at the release time. The best allocation seen is kept.

use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{candidate_set, elapsed, Partial, SolverBudget, SolverResult};
use crate::error::Result;
use crate::instance::WspInstance;

pub fn random_search(instance: &WspInstance, budget: &SolverBudget, seed: u64) -> Result<SolverResult> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let horizon = instance.horizon();
    let empty = Partial::empty(instance);
    let mut best_alloc = empty.alloc.clone();
    let mut best = empty.outcome(instance).burned_count(horizon);
    let mut iterations = 0;
    while !budget.exhausted(started, iterations) {
        iterations += 1;
        let mut partial = empty.clone();
        for (level, release) in instance.schedule().iter().enumerate() {
            let arrival = partial.outcome(instance).arrival;
            let c = candidate_set(instance, &partial.mask, &arrival, release.time);
            let m = release.count.min(c.len());
            let mut picks: Vec<usize> = sample(&mut rng, c.len(), m).into_iter().map(|i| c[i]).collect();
            picks.sort_unstable();
            partial = partial.extend(instance, level, &picks);
        }
        let value = partial.outcome(instance).burned_count(horizon);
        if value < best {
            best = value;
            best_alloc = partial.alloc;
        }
        if instance.total_resources() == 0 {
            break;
        }
    }
    Ok(SolverResult { allocation: best_alloc, objective: best, iterations, elapsed_secs: elapsed(started) })
}
