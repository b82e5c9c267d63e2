//! Experiment harness and evaluation statistics.

pub mod design;
pub mod profiles;
pub mod records;
pub mod runner;
pub mod skillings_mack;

pub use design::{ParameterGroup, DELTA_NINE_COMBINATIONS, DELTA_TWELVE_COMBINATIONS};
pub use profiles::{
    absolute_deviation, best_known, best_known_all, median, performance_profiles, relative_deviation, ProfileCurve,
    Profiles,
};
pub use records::{read_records, write_records, RecordAppender, RunRecord, RunStatus};
pub use runner::{run_benchmark, AlgorithmSpec, BenchPlan, PlanAlgorithm, RunOptions};
pub use skillings_mack::{algorithm_observations, difficulty_observations, sm_scores, Observation, SmScores};
