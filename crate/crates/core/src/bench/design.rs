//! The benchmark's parameter groups and their critical differences.

use serde::{Deserialize, Serialize};

use crate::generator::{
    DecisionLevel, DelayLevel, FirstRelease, GridSize, LastRelease, ResourcesLevel, SlopeLevel, WindLevel,
};

/// Critical difference for the groups with 12 factor combinations.
pub const DELTA_TWELVE_COMBINATIONS: f64 = 335.0;
/// Critical difference for the groups with 9 factor combinations.
pub const DELTA_NINE_COMBINATIONS: f64 = 244.0;

/// Instances generated per factor combination (one per instance seed).
pub const INSTANCES_PER_COMBINATION: usize = 5;
/// Replications per algorithm and instance.
pub const REPLICATIONS: usize = 10;

/// Seconds of time limit per grid cell.
pub const SECONDS_PER_CELL: f64 = 1.5;

/// Time limit for an `n × n` grid.
pub fn time_limit_for_side(side: usize) -> f64 {
    SECONDS_PER_CELL * (side * side) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParameterGroup {
    /// Grid size × decision points.
    InstanceSize,
    /// Delay × resources.
    SuppressionCapacity,
    /// Slope × wind.
    EnvironmentalFactors,
    /// First × last release time.
    ReleaseWindow,
}

impl ParameterGroup {
    pub const ALL: [ParameterGroup; 4] = [
        ParameterGroup::InstanceSize,
        ParameterGroup::SuppressionCapacity,
        ParameterGroup::EnvironmentalFactors,
        ParameterGroup::ReleaseWindow,
    ];

    /// Number of levels of the two factors varied in this group.
    pub fn factor_levels(self) -> (usize, usize) {
        match self {
            ParameterGroup::InstanceSize => (GridSize::ALL.len(), DecisionLevel::ALL.len()),
            ParameterGroup::SuppressionCapacity => (DelayLevel::ALL.len(), ResourcesLevel::ALL.len()),
            ParameterGroup::EnvironmentalFactors => (SlopeLevel::ALL.len(), WindLevel::ALL.len()),
            ParameterGroup::ReleaseWindow => (FirstRelease::ALL.len(), LastRelease::ALL.len()),
        }
    }

    pub fn combinations(self) -> usize {
        let (a, b) = self.factor_levels();
        a * b
    }

    /// `N` in the group's performance profiles.
    pub fn instance_count(self) -> usize {
        self.combinations() * INSTANCES_PER_COMBINATION
    }

    pub fn delta(self) -> f64 {
        match self.combinations() {
            12 => DELTA_TWELVE_COMBINATIONS,
            _ => DELTA_NINE_COMBINATIONS,
        }
    }
}
