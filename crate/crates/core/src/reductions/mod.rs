//! Reductions from the most vital nodes problem to the WSP and two related
//! suppression problems, with exhaustive oracles to check them on small
//! instances.

pub mod mvnp;
pub mod to_hwsp;
pub mod to_wsp;
pub mod to_wwsp;
pub mod verify;

pub use mvnp::{random_mvnp, solve_mvnp_brute, MvnpInstance, MvnpSolution, DEFAULT_ENUMERATION_CAP};
pub use to_hwsp::{cost_preserving_augmentation, evaluate_hwsp, mvnp_to_hwsp, solve_hwsp_brute, HwspInstance};
pub use to_wsp::{mvnp_to_wsp, WspReduction};
pub use to_wwsp::{evaluate_wwsp, mvnp_to_wwsp, solve_wwsp_brute, WwspInstance};
pub use verify::{decide_all, verify_reductions, Decisions, VerificationReport};
