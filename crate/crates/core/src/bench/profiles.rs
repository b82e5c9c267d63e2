//! Best-known values, deviations and performance profiles.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::records::{by_instance, RunRecord};
use crate::error::{Result, WspError};

/// Minimum ok objective recorded for `instance`, or `None` when the
/// instance has no successful run.
pub fn best_known(records: &[RunRecord], instance: &str) -> Option<u64> {
    records
        .iter()
        .filter(|r| r.instance == instance)
        .filter_map(RunRecord::ok_objective)
        .min()
}

/// Best-known value for every instance with at least one ok run, plus the
/// ids of instances without one.
pub fn best_known_all(records: &[RunRecord]) -> (BTreeMap<String, u64>, Vec<String>) {
    let mut bkv = BTreeMap::new();
    let mut missing = Vec::new();
    for (inst, recs) in by_instance(records) {
        match recs.iter().filter_map(|r| r.ok_objective()).min() {
            Some(b) => {
                bkv.insert(inst.to_string(), b);
            }
            None => missing.push(inst.to_string()),
        }
    }
    (bkv, missing)
}

pub fn relative_deviation(z: u64, bkv: u64) -> Result<f64> {
    if bkv < 1 {
        return Err(WspError::domain(format!("best-known value must be at least 1, got {bkv}")));
    }
    Ok((z as f64 - bkv as f64) / bkv as f64)
}

pub fn absolute_deviation(z: u64, optimum: u64) -> i64 {
    z as i64 - optimum as i64
}

/// Median; the mean of the two middle values for even counts.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[m] } else { 0.5 * (v[m - 1] + v[m]) })
}

/// A right-continuous step function `P(τ)` for τ ≥ 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileCurve {
    pub algorithm: String,
    /// `(τ, P(τ))` at every distinct finite ratio, ascending in τ.
    pub breakpoints: Vec<(f64, f64)>,
}

impl ProfileCurve {
    pub fn value_at(&self, tau: f64) -> f64 {
        self.breakpoints.iter().take_while(|(t, _)| *t <= tau).last().map_or(0.0, |&(_, p)| p)
    }
}

/// Performance profiles over median objectives, with their inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Profiles {
    pub curves: Vec<ProfileCurve>,
    /// Ratio `r_{a,i}` per algorithm and instance; missing cells are `+∞`.
    pub ratios: BTreeMap<String, BTreeMap<String, f64>>,
    /// Instances counted in `N`.
    pub instances: Vec<String>,
    /// Instances without any ok run, left out of `N`.
    pub excluded: Vec<String>,
}

pub fn performance_profiles(records: &[RunRecord]) -> Result<Profiles> {
    if records.is_empty() {
        return Err(WspError::structural("no run records"));
    }
    let algorithms: BTreeSet<&str> = records.iter().map(|r| r.algorithm.as_str()).collect();
    let mut medians: BTreeMap<&str, BTreeMap<&str, f64>> = BTreeMap::new();
    let mut instances = Vec::new();
    let mut excluded = Vec::new();
    for (inst, recs) in by_instance(records) {
        let mut cells: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
        for r in &recs {
            if let Some(z) = r.ok_objective() {
                cells.entry(r.algorithm.as_str()).or_default().push(z as f64);
            }
        }
        if cells.is_empty() {
            excluded.push(inst.to_string());
            continue;
        }
        instances.push(inst.to_string());
        for (alg, zs) in cells {
            medians.entry(inst).or_default().insert(alg, median(&zs).unwrap());
        }
    }

    let mut ratios: BTreeMap<String, BTreeMap<String, f64>> = BTreeMap::new();
    for inst in &instances {
        let cell = &medians[inst.as_str()];
        let best = cell.values().copied().fold(f64::INFINITY, f64::min);
        if best <= 0.0 {
            return Err(WspError::domain(format!("instance '{inst}': best median objective {best} is not positive")));
        }
        for &alg in &algorithms {
            let r = cell.get(alg).map_or(f64::INFINITY, |z| z / best);
            ratios.entry(alg.to_string()).or_default().insert(inst.clone(), r);
        }
    }

    let n = instances.len() as f64;
    let curves = algorithms
        .iter()
        .map(|&alg| {
            let mut finite: Vec<f64> = ratios
                .get(alg)
                .map(|m| m.values().copied().filter(|r| r.is_finite()).collect())
                .unwrap_or_default();
            finite.sort_by(f64::total_cmp);
            let mut breakpoints: Vec<(f64, f64)> = Vec::new();
            for (i, &r) in finite.iter().enumerate() {
                let p = (i + 1) as f64 / n;
                match breakpoints.last_mut() {
                    Some(last) if last.0 == r => last.1 = p,
                    _ => breakpoints.push((r, p)),
                }
            }
            ProfileCurve { algorithm: alg.to_string(), breakpoints }
        })
        .collect();
    Ok(Profiles { curves, ratios, instances, excluded })
}
