//! Wildfire suppression on directed graphs: fire spread, instance
//! generation, heuristics, MIP export, reductions and benchmarking.

// Domain checks are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod allocation;
pub mod bench;
pub mod error;
pub mod feasibility;
pub mod fire;
pub mod generator;
pub mod graph;
pub mod instance;
pub mod io;
pub mod mip;
pub mod reductions;
pub mod rothermel;
pub mod sampling;
pub mod solvers;

pub use allocation::Allocation;
pub use error::{Result, WspError};
pub use feasibility::{check_feasibility, is_feasible, Violation};
pub use fire::{compute_arrival_times, objective, FireOutcome};
pub use graph::{Arc, DirectedGraph, Minutes, VertexId};
pub use instance::{Release, ResourceId, WspInstance};
