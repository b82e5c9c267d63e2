//! Exhaustive depth-first search over incremental allocations.

use std::time::Instant;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{candidate_set, elapsed, Partial, SolverResult};
use crate::error::{Result, WspError};
use crate::fire::arrival_for_mask;
use crate::instance::WspInstance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BruteForceLimits {
    /// Refuse instances whose estimated number of leaves exceeds this.
    pub max_nodes: u64,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        BruteForceLimits { max_nodes: 5_000_000 }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Upper bound on the number of leaves: per level, subsets of size up to
/// `|R_t|` of the vertices that could still be unburned at `t` under any
/// allocation (arrivals with every vertex protected).
pub fn search_space_estimate(instance: &WspInstance) -> f64 {
    let all = arrival_for_mask(instance, &vec![true; instance.vertex_count()]);
    instance
        .schedule()
        .iter()
        .map(|r| {
            let m = instance.vertex_count() - all.burned_count(r.time);
            (0..=r.count).map(|j| binomial(m, j)).sum::<f64>()
        })
        .product()
}

/// Provably optimal allocation by enumerating every feasible incremental
/// allocation, including ones that leave resources unused.
pub fn brute_force(instance: &WspInstance, limits: &BruteForceLimits) -> Result<SolverResult> {
    let estimate = search_space_estimate(instance);
    if estimate > limits.max_nodes as f64 {
        return Err(WspError::LimitExceeded { estimate, limit: limits.max_nodes });
    }
    let started = Instant::now();
    let mut search = Search { instance, best: None, leaves: 0 };
    search.descend(0, Partial::empty(instance));
    let (objective, allocation) = search.best.expect("at least one leaf");
    Ok(SolverResult { allocation, objective, iterations: search.leaves, elapsed_secs: elapsed(started) })
}

struct Search<'a> {
    instance: &'a WspInstance,
    best: Option<(usize, crate::allocation::Allocation)>,
    leaves: u64,
}

impl Search<'_> {
    fn descend(&mut self, level: usize, partial: Partial) {
        let outcome = partial.outcome(self.instance);
        let Some(release) = self.instance.schedule().get(level) else {
            self.leaves += 1;
            let value = outcome.burned_count(self.instance.horizon());
            if self.best.as_ref().is_none_or(|(b, _)| value < *b) {
                self.best = Some((value, partial.alloc));
            }
            return;
        };
        let c = candidate_set(self.instance, &partial.mask, &outcome.arrival, release.time);
        for size in 0..=release.count.min(c.len()) {
            for pick in c.iter().copied().combinations(size) {
                self.descend(level + 1, partial.extend(self.instance, level, &pick));
            }
        }
    }
}
