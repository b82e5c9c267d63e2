//! Resource release schedules.

use rand::seq::SliceRandom;
use rand::Rng;

use super::config::GeneratorConfig;
use super::horizon::free_burn_quantile;
use crate::error::{Result, WspError};
use crate::graph::Minutes;
use crate::instance::Release;

/// `r_i = ⌊k/T⌋ + [i <= k mod T]`, randomly permuted.
pub fn balanced_counts<R: Rng + ?Sized>(k: usize, t: usize, rng: &mut R) -> Vec<usize> {
    let mut counts: Vec<usize> = (0..t).map(|i| k / t + usize::from(i < k % t)).collect();
    counts.shuffle(rng);
    counts
}

/// `t` points equally spaced over `[first, last]`; a single point sits at `first`.
pub fn equally_spaced(first: Minutes, last: Minutes, t: usize) -> Vec<Minutes> {
    if t == 1 {
        return vec![first];
    }
    let step = (last - first) / (t - 1) as f64;
    (0..t)
        .map(|i| if i + 1 == t { last } else { first + step * i as f64 })
        .collect()
}

/// Release window `[q(first), min(q(last), H)]` for a configuration.
pub fn release_window(cfg: &GeneratorConfig, horizon: Minutes, arrivals: &[Minutes]) -> Result<(Minutes, Minutes)> {
    let p_first = cfg.first_release.percent();
    let p_last = cfg.last_release.percent();
    let first = free_burn_quantile(arrivals, p_first)?;
    let last = free_burn_quantile(arrivals, p_last)?.min(horizon);
    if !(first > 0.0 && first < last) {
        return Err(WspError::Generation(format!(
            "degenerate release window: q({p_first}) = {first} min, q({p_last}) = {last} min (horizon {horizon} min)"
        )));
    }
    Ok((first, last))
}

/// Release schedule with decision points whose count came out zero dropped.
pub fn build_resource_schedule<R: Rng + ?Sized>(
    cfg: &GeneratorConfig,
    horizon: Minutes,
    arrivals: &[Minutes],
    rng: &mut R,
) -> Result<Vec<Release>> {
    let (first, last) = release_window(cfg, horizon, arrivals)?;
    let times = equally_spaced(first, last, cfg.decision_points);
    let counts = balanced_counts(cfg.total_resources(), cfg.decision_points, rng);
    Ok(times
        .into_iter()
        .zip(counts)
        .filter(|&(_, c)| c > 0)
        .map(|(time, count)| Release { time, count })
        .collect())
}
