//! Skillings–Mack post-hoc scores for balanced designs with replications.
//!
//! Within each block all `c·k` responses are ranked together (lower is
//! better, ties get their average rank). A treatment's block rank `R_ij` is
//! the mean rank of its `c` replications and its score is `S_j = Σ_i R_ij`.
//! The critical difference `δ` is supplied by the caller; the omnibus test
//! statistic is not computed.

use std::collections::BTreeMap;

use serde::Serialize;

use super::profiles::best_known_all;
use super::records::RunRecord;
use crate::error::{Result, WspError};

#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub block: String,
    pub treatment: String,
    pub value: f64,
}

impl Observation {
    pub fn new(block: impl Into<String>, treatment: impl Into<String>, value: f64) -> Self {
        Observation { block: block.into(), treatment: treatment.into(), value }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairComparison {
    pub first: String,
    pub second: String,
    /// `S_first − S_second`.
    pub difference: f64,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmScores {
    /// Treatments in ascending name order.
    pub treatments: Vec<String>,
    pub blocks: Vec<String>,
    pub replications: usize,
    /// `S_j`, aligned with `treatments`.
    pub scores: Vec<f64>,
    /// `R_ij` indexed `[block][treatment]`.
    pub mean_ranks: Vec<Vec<f64>>,
    pub delta: f64,
    pub pairs: Vec<PairComparison>,
}

impl SmScores {
    pub fn score(&self, treatment: &str) -> Option<f64> {
        self.treatments.iter().position(|t| t == treatment).map(|j| self.scores[j])
    }

    /// `n·k·(ck+1)/2`, the value every score vector sums to.
    pub fn expected_total(&self) -> f64 {
        let (n, k, c) = (self.blocks.len() as f64, self.treatments.len() as f64, self.replications as f64);
        n * k * (c * k + 1.0) / 2.0
    }
}

/// Algorithms as treatments, instances as blocks, objective as response.
/// Only ok runs are used.
pub fn algorithm_observations(records: &[RunRecord]) -> Vec<Observation> {
    records
        .iter()
        .filter_map(|r| r.ok_objective().map(|z| Observation::new(&r.instance, &r.algorithm, z as f64)))
        .collect()
}

/// Instance groups as treatments, algorithm-seed pairs as blocks, relative
/// deviation to the best-known value as response. `group_of` maps an
/// instance id to its factor combination; instances it maps to `None` are
/// skipped.
pub fn difficulty_observations(
    records: &[RunRecord],
    group_of: impl Fn(&str) -> Option<String>,
) -> Result<Vec<Observation>> {
    let (bkv, _) = best_known_all(records);
    let mut out = Vec::new();
    for r in records {
        let (Some(z), Some(group)) = (r.ok_objective(), group_of(&r.instance)) else { continue };
        let dev = super::profiles::relative_deviation(z, bkv[&r.instance])?;
        out.push(Observation::new(format!("{}#{}", r.algorithm, r.seed), group, dev));
    }
    Ok(out)
}

/// Average ranks (1-based) of `values`, lower value = lower rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        // Positions i..=j share rank (i+1 + j+1)/2.
        let r = (i + j + 2) as f64 / 2.0;
        for &p in &idx[i..=j] {
            ranks[p] = r;
        }
        i = j + 1;
    }
    ranks
}

pub fn sm_scores(observations: &[Observation], delta: f64) -> Result<SmScores> {
    if observations.is_empty() {
        return Err(WspError::structural("no observations"));
    }
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(WspError::domain(format!("critical difference must be nonnegative, got {delta}")));
    }
    if let Some(o) = observations.iter().find(|o| o.value.is_nan()) {
        return Err(WspError::domain(format!("NaN response in cell ({}, {})", o.block, o.treatment)));
    }
    let mut cells: BTreeMap<&str, BTreeMap<&str, Vec<f64>>> = BTreeMap::new();
    for o in observations {
        cells.entry(&o.block).or_default().entry(&o.treatment).or_default().push(o.value);
    }
    let treatments: Vec<String> = {
        let mut t: Vec<&str> = observations.iter().map(|o| o.treatment.as_str()).collect();
        t.sort_unstable();
        t.dedup();
        t.into_iter().map(String::from).collect()
    };
    // The largest cell sets the expected count, so errors name the short cells.
    let c = cells.values().flat_map(|m| m.values().map(Vec::len)).max().unwrap_or(0);
    for (block, row) in &cells {
        for t in &treatments {
            let got = row.get(t.as_str()).map_or(0, Vec::len);
            if got != c {
                return Err(WspError::structural(format!(
                    "unbalanced design: cell (block '{block}', treatment '{t}') has {got} replications, expected {c}"
                )));
            }
        }
    }

    let k = treatments.len();
    let mut mean_ranks = Vec::with_capacity(cells.len());
    let mut scores = vec![0.0; k];
    for row in cells.values() {
        let pooled: Vec<f64> = treatments.iter().flat_map(|t| row[t.as_str()].iter().copied()).collect();
        let ranks = average_ranks(&pooled);
        let r_i: Vec<f64> = ranks.chunks(c).map(|ch| ch.iter().sum::<f64>() / c as f64).collect();
        for (s, r) in scores.iter_mut().zip(&r_i) {
            *s += r;
        }
        mean_ranks.push(r_i);
    }

    let mut pairs = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let d = scores[a] - scores[b];
            pairs.push(PairComparison {
                first: treatments[a].clone(),
                second: treatments[b].clone(),
                difference: d,
                significant: d.abs() > delta,
            });
        }
    }
    Ok(SmScores {
        treatments,
        blocks: cells.keys().map(|b| b.to_string()).collect(),
        replications: c,
        scores,
        mean_ranks,
        delta,
        pairs,
    })
}
