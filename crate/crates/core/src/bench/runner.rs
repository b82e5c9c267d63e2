//! Benchmark execution: every (instance, algorithm, replication) cell runs
//! once, in parallel, with results appended to a CSV as they finish.

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::design::SECONDS_PER_CELL;
use super::records::{read_records, sort_records, RecordAppender, RunRecord, RunStatus};
use crate::error::{Result, WspError};
use crate::instance::WspInstance;
use crate::io::read_instance;
use crate::solvers::{beam_search, brute_force, random_search, BeamConfig, BruteForceLimits, SolverBudget};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgorithmSpec {
    Random {
        #[serde(default)]
        max_iterations: Option<u64>,
    },
    Beam {
        #[serde(default)]
        width: Option<usize>,
        #[serde(default)]
        expansions: Option<usize>,
    },
    Exact {
        #[serde(default)]
        max_nodes: Option<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanAlgorithm {
    /// Algorithm id in the records; defaults to the kind.
    #[serde(default)]
    pub name: Option<String>,
    #[serde(flatten)]
    pub spec: AlgorithmSpec,
}

impl PlanAlgorithm {
    pub fn id(&self) -> String {
        self.name.clone().unwrap_or_else(|| {
            match self.spec {
                AlgorithmSpec::Random { .. } => "random",
                AlgorithmSpec::Beam { .. } => "beam",
                AlgorithmSpec::Exact { .. } => "exact",
            }
            .to_string()
        })
    }
}

fn default_seconds_per_cell() -> f64 {
    SECONDS_PER_CELL
}

/// A benchmark plan. Instance ids are the file stems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchPlan {
    pub instances: Vec<PathBuf>,
    pub algorithms: Vec<PlanAlgorithm>,
    /// Replications per cell; the record seed runs `0..replications`.
    pub replications: u64,
    /// Mixed into every per-cell solver seed.
    #[serde(default)]
    pub base_seed: u64,
    /// Fixed time limit in seconds; by default `seconds_per_cell · |V|`.
    #[serde(default)]
    pub time_limit_secs: Option<f64>,
    #[serde(default = "default_seconds_per_cell")]
    pub seconds_per_cell: f64,
}

impl BenchPlan {
    /// Reads a JSON plan; relative instance paths resolve against the plan's
    /// directory.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut plan: BenchPlan = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in &mut plan.instances {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        let ids: HashSet<String> = self.algorithms.iter().map(PlanAlgorithm::id).collect();
        if ids.len() != self.algorithms.len() {
            return Err(WspError::structural("duplicate algorithm ids in plan"));
        }
        if let Some(t) = self.time_limit_secs {
            if !(t.is_finite() && t > 0.0) {
                return Err(WspError::domain(format!("time limit must be positive, got {t}")));
            }
        }
        if !(self.seconds_per_cell.is_finite() && self.seconds_per_cell > 0.0) {
            return Err(WspError::domain(format!("seconds per cell must be positive, got {}", self.seconds_per_cell)));
        }
        Ok(())
    }

    pub fn time_limit(&self, instance: &WspInstance) -> f64 {
        self.time_limit_secs.unwrap_or(self.seconds_per_cell * instance.vertex_count() as f64)
    }
}

/// Solver seed of one cell, stable across runs and worker counts.
pub fn cell_seed(base: u64, instance: &str, algorithm: &str, replication: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(base.to_le_bytes());
    h.update(instance.as_bytes());
    h.update([0]);
    h.update(algorithm.as_bytes());
    h.update([0]);
    h.update(replication.to_le_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().unwrap())
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses rayon's default.
    pub workers: Option<usize>,
    /// Stop after this many new cells (for partial runs).
    pub max_new_cells: Option<usize>,
}

fn run_cell(inst: &WspInstance, alg: &PlanAlgorithm, seed: u64, limit: f64) -> (RunStatus, Option<u64>) {
    let outcome = catch_unwind(AssertUnwindSafe(|| match alg.spec {
        AlgorithmSpec::Random { max_iterations } => {
            SolverBudget::new(Some(limit), max_iterations).and_then(|b| random_search(inst, &b, seed))
        }
        AlgorithmSpec::Beam { width, expansions } => {
            let d = BeamConfig::default();
            let cfg = BeamConfig { width: width.or(d.width), expansions: expansions.or(d.expansions), seed };
            beam_search(inst, &cfg)
        }
        AlgorithmSpec::Exact { max_nodes } => {
            let limits = BruteForceLimits { max_nodes: max_nodes.unwrap_or(BruteForceLimits::default().max_nodes) };
            brute_force(inst, &limits)
        }
    }));
    match outcome {
        Ok(Ok(res)) => (RunStatus::Ok, Some(res.objective as u64)),
        Ok(Err(WspError::LimitExceeded { .. })) => (RunStatus::Limit, None),
        Ok(Err(_)) | Err(_) => (RunStatus::Error, None),
    }
}

/// Runs every cell of `plan` that is not already in `out`, appending each
/// finished record to `out`, and returns the complete record set sorted by
/// (instance, algorithm, seed). Solver failures become `error` records.
pub fn run_benchmark(plan: &BenchPlan, out: Option<&Path>, options: &RunOptions) -> Result<Vec<RunRecord>> {
    plan.validate()?;
    let mut instances = Vec::with_capacity(plan.instances.len());
    let mut seen = BTreeSet::new();
    for path in &plan.instances {
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| WspError::structural(format!("bad instance path {}", path.display())))?
            .to_string();
        if !seen.insert(id.clone()) {
            return Err(WspError::structural(format!("duplicate instance id '{id}' in plan")));
        }
        let inst = read_instance(path)
            .map_err(|e| WspError::structural(format!("instance {}: {e}", path.display())))?;
        instances.push((id, inst));
    }

    let existing = match out {
        Some(p) if p.exists() && std::fs::metadata(p)?.len() > 0 => read_records(p)?,
        _ => Vec::new(),
    };
    let done: HashSet<(String, String, u64)> = existing.iter().map(RunRecord::key).collect();

    let mut cells = Vec::new();
    for (id, inst) in &instances {
        for alg in &plan.algorithms {
            for r in 0..plan.replications {
                if !done.contains(&(id.clone(), alg.id(), r)) {
                    cells.push((id.as_str(), inst, alg, r));
                }
            }
        }
    }
    if let Some(m) = options.max_new_cells {
        cells.truncate(m);
    }

    let appender = match out {
        Some(p) => Some(Mutex::new(RecordAppender::open(p)?)),
        None => None,
    };
    let fresh = Mutex::new(Vec::with_capacity(cells.len()));
    let first_error: Mutex<Option<WspError>> = Mutex::new(None);
    let work = || {
        use rayon::prelude::*;
        cells.par_iter().for_each(|&(id, inst, alg, r)| {
            let name = alg.id();
            let seed = cell_seed(plan.base_seed, id, &name, r);
            let start = Instant::now();
            let (status, objective) = run_cell(inst, alg, seed, plan.time_limit(inst));
            let rec = RunRecord {
                instance: id.to_string(),
                algorithm: name,
                seed: r,
                objective,
                wall_seconds: start.elapsed().as_secs_f64(),
                status,
            };
            if let Some(a) = &appender {
                if let Err(e) = a.lock().unwrap().append(&rec) {
                    first_error.lock().unwrap().get_or_insert(e);
                }
            }
            fresh.lock().unwrap().push(rec);
        });
    };
    match options.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| WspError::structural(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    }
    if let Some(e) = first_error.into_inner().unwrap() {
        return Err(e);
    }
    let mut all = existing;
    all.extend(fresh.into_inner().unwrap());
    sort_records(&mut all);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::write_instance;
    use crate::sampling::random_grid_instance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn plan_in(dir: &Path, count: usize) -> BenchPlan {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let instances = (0..count)
            .map(|i| {
                let p = dir.join(format!("g{i}.json"));
                write_instance(&p, &random_grid_instance(&mut rng, 4, 3, 2)).unwrap();
                p
            })
            .collect();
        BenchPlan {
            instances,
            algorithms: vec![
                PlanAlgorithm { name: None, spec: AlgorithmSpec::Random { max_iterations: Some(20) } },
                PlanAlgorithm { name: Some("beam4".into()), spec: AlgorithmSpec::Beam { width: Some(4), expansions: None } },
                PlanAlgorithm { name: None, spec: AlgorithmSpec::Exact { max_nodes: Some(1) } },
            ],
            replications: 2,
            base_seed: 9,
            time_limit_secs: Some(30.0),
            seconds_per_cell: SECONDS_PER_CELL,
        }
    }

    fn strip_time(mut rs: Vec<RunRecord>) -> Vec<RunRecord> {
        rs.iter_mut().for_each(|r| r.wall_seconds = 0.0);
        rs
    }

    #[test]
    fn empty_plan_gives_no_records() {
        let plan = BenchPlan {
            instances: vec![],
            algorithms: vec![],
            replications: 3,
            base_seed: 0,
            time_limit_secs: None,
            seconds_per_cell: SECONDS_PER_CELL,
        };
        assert!(run_benchmark(&plan, None, &RunOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn resumed_run_equals_uninterrupted_run() {
        let dir = tempfile::tempdir().unwrap();
        let plan = plan_in(dir.path(), 2);
        let whole = dir.path().join("whole.csv");
        let parts = dir.path().join("parts.csv");
        let a = run_benchmark(&plan, Some(&whole), &RunOptions { workers: Some(3), max_new_cells: None }).unwrap();
        assert_eq!(a.len(), 12);
        let partial =
            run_benchmark(&plan, Some(&parts), &RunOptions { workers: Some(2), max_new_cells: Some(5) }).unwrap();
        assert_eq!(partial.len(), 5);
        let b = run_benchmark(&plan, Some(&parts), &RunOptions { workers: Some(1), max_new_cells: None }).unwrap();
        assert_eq!(strip_time(a.clone()), strip_time(b));
        let mut on_disk = read_records(&parts).unwrap();
        sort_records(&mut on_disk);
        assert_eq!(strip_time(on_disk), strip_time(a.clone()));
        // Nothing left to do.
        let again = run_benchmark(&plan, Some(&parts), &RunOptions::default()).unwrap();
        assert_eq!(read_records(&parts).unwrap().len(), 12);
        assert_eq!(again.len(), 12);

        for r in &a {
            match r.algorithm.as_str() {
                "exact" => assert_eq!(r.status, RunStatus::Limit),
                _ => assert!(r.status == RunStatus::Ok && r.objective.unwrap() >= 1),
            }
        }
    }

    #[test]
    fn cell_seeds_differ_per_cell() {
        let s = cell_seed(0, "a", "beam", 0);
        assert_eq!(s, cell_seed(0, "a", "beam", 0));
        assert_ne!(s, cell_seed(0, "a", "beam", 1));
        assert_ne!(s, cell_seed(0, "a", "random", 0));
        assert_ne!(s, cell_seed(1, "a", "beam", 0));
    }

    #[test]
    fn plan_paths_resolve_against_plan_directory() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plan.json");
        std::fs::write(
            &path,
            r#"{"instances": ["x.json"], "algorithms": [{"kind": "beam", "width": 2}], "replications": 1}"#,
        )
        .unwrap();
        let plan = BenchPlan::from_file(&path).unwrap();
        assert_eq!(plan.instances[0], dir.path().join("x.json"));
        assert_eq!(plan.algorithms[0].id(), "beam");
        assert_eq!(plan.seconds_per_cell, 1.5);
        assert!(run_benchmark(&plan, None, &RunOptions::default()).is_err());
    }

    #[test]
    fn default_time_limit_is_per_grid_cell() {
        let dir = tempfile::tempdir().unwrap();
        let mut plan = plan_in(dir.path(), 1);
        plan.time_limit_secs = None;
        let inst = read_instance(&plan.instances[0]).unwrap();
        assert_eq!(plan.time_limit(&inst), 1.5 * 16.0);
    }
}
