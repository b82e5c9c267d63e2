//! Side-by-side decisions on an MVNP instance and its three reductions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::mvnp::{random_mvnp, solve_mvnp_brute, MvnpInstance};
use super::to_hwsp::{mvnp_to_hwsp, solve_hwsp_brute};
use super::to_wsp::mvnp_to_wsp;
use super::to_wwsp::{mvnp_to_wwsp, solve_wwsp_brute};
use crate::error::Result;
use crate::solvers::{brute_force, BruteForceLimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decisions {
    pub mvnp: bool,
    pub wsp: bool,
    pub wwsp: bool,
    pub hwsp: bool,
}

impl Decisions {
    pub fn agree(&self) -> bool {
        self.wsp == self.mvnp && self.wwsp == self.mvnp && self.hwsp == self.mvnp
    }
}

/// Decides the MVNP instance and each reduced instance by enumeration.
pub fn decide_all(mvnp: &MvnpInstance, cap: u64) -> Result<Decisions> {
    let mvnp_answer = solve_mvnp_brute(mvnp, cap)?.answer;
    let wsp = mvnp_to_wsp(mvnp)?;
    let best = brute_force(&wsp.instance, &BruteForceLimits { max_nodes: cap })?;
    let (wwsp, wwsp_budget) = mvnp_to_wwsp(mvnp);
    let (hwsp, threshold) = mvnp_to_hwsp(mvnp)?;
    Ok(Decisions {
        mvnp: mvnp_answer,
        wsp: best.objective <= wsp.budget,
        wwsp: solve_wwsp_brute(&wwsp, cap)?.0 <= wwsp_budget,
        hwsp: solve_hwsp_brute(&hwsp, cap)?.0 >= threshold,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub samples: usize,
    pub yes_instances: usize,
    pub wsp_agree: usize,
    pub wwsp_agree: usize,
    pub hwsp_agree: usize,
    /// Sample indices where some reduction disagreed.
    pub mismatches: Vec<usize>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks all three reductions on `samples` random MVNP instances.
pub fn verify_reductions(samples: usize, max_vertices: usize, seed: u64, cap: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport {
        samples,
        yes_instances: 0,
        wsp_agree: 0,
        wwsp_agree: 0,
        hwsp_agree: 0,
        mismatches: Vec::new(),
    };
    for i in 0..samples {
        let m = random_mvnp(&mut rng, max_vertices);
        let d = decide_all(&m, cap)?;
        report.yes_instances += usize::from(d.mvnp);
        report.wsp_agree += usize::from(d.wsp == d.mvnp);
        report.wwsp_agree += usize::from(d.wwsp == d.mvnp);
        report.hwsp_agree += usize::from(d.hwsp == d.mvnp);
        if !d.agree() {
            report.mismatches.push(i);
        }
    }
    Ok(report)
}
