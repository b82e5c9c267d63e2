//! Generator factors and their level → value mappings.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WspError};
use crate::graph::Minutes;
use crate::rothermel::{FuelConstants, SpreadParams};

/// Landscape side length used in the benchmark design, ft.
pub const DEFAULT_EXTENT_FT: f64 = 26240.0;

/// Grid sides with a named level.
pub const STANDARD_GRID_SIDES: [usize; 4] = [20, 30, 40, 80];

macro_rules! level_enum {
    ($(#[$m:meta])* $name:ident { $($variant:ident => $label:literal),+ $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn label(self) -> &'static str {
                match self {
                    $($name::$variant => $label),+
                }
            }
        }

        impl std::str::FromStr for $name {
            type Err = WspError;

            fn from_str(s: &str) -> Result<Self> {
                let norm = s.trim().to_ascii_lowercase().replace('-', "_");
                $(if norm == $label {
                    return Ok($name::$variant);
                })+
                Err(WspError::domain(format!(
                    "unknown {} level '{s}' (expected one of: {})",
                    stringify!($name),
                    [$($label),+].join(", ")
                )))
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str(self.label())
            }
        }
    };
}

level_enum!(GridSize { Small => "small", Medium => "medium", Large => "large", Huge => "huge" });
level_enum!(SlopeLevel { Flat => "flat", Moderate => "moderate", Steep => "steep" });
level_enum!(WindLevel { Light => "light", Moderate => "moderate", Strong => "strong" });
level_enum!(DecisionLevel { Few => "few", Moderate => "moderate", Many => "many" });
level_enum!(ResourcesLevel { Few => "few", Moderate => "moderate", Many => "many" });
level_enum!(DelayLevel { Low => "low", Medium => "medium", High => "high" });
level_enum!(FirstRelease { Early => "early", Late => "late", VeryLate => "very_late" });
level_enum!(LastRelease { VeryEarly => "very_early", Early => "early", Late => "late", VeryLate => "very_late" });

impl GridSize {
    pub fn side(self) -> usize {
        match self {
            GridSize::Small => 20,
            GridSize::Medium => 30,
            GridSize::Large => 40,
            GridSize::Huge => 80,
        }
    }
}

impl SlopeLevel {
    pub fn angle_deg(self) -> f64 {
        match self {
            SlopeLevel::Flat => 10.0,
            SlopeLevel::Moderate => 20.0,
            SlopeLevel::Steep => 40.0,
        }
    }

    /// Maximum terrain height `N_z = N_xy tan(angle)`, ft.
    pub fn max_height(self, extent_ft: f64) -> f64 {
        extent_ft * self.angle_deg().to_radians().tan()
    }
}

impl WindLevel {
    /// Midflame wind speed interval, ft/min.
    pub fn speed_range(self) -> (f64, f64) {
        match self {
            WindLevel::Light => (94.5, 195.0),
            WindLevel::Moderate => (324.9, 466.5),
            WindLevel::Strong => (637.8, 815.1),
        }
    }
}

impl DecisionLevel {
    pub fn count(self) -> usize {
        match self {
            DecisionLevel::Few => 5,
            DecisionLevel::Moderate => 10,
            DecisionLevel::Many => 20,
        }
    }
}

impl ResourcesLevel {
    pub fn count(self, n: usize) -> usize {
        match self {
            ResourcesLevel::Few => n / 2,
            ResourcesLevel::Moderate => n,
            ResourcesLevel::Many => 2 * n,
        }
    }
}

impl DelayLevel {
    pub fn delay(self, horizon: Minutes) -> Minutes {
        match self {
            DelayLevel::Low => horizon / 3.0,
            DelayLevel::Medium => horizon / 2.0,
            DelayLevel::High => horizon,
        }
    }
}

impl FirstRelease {
    /// Burned percentage anchoring the first release.
    pub fn percent(self) -> f64 {
        match self {
            FirstRelease::Early => 5.0,
            FirstRelease::Late => 10.0,
            FirstRelease::VeryLate => 20.0,
        }
    }
}

impl LastRelease {
    pub fn percent(self) -> f64 {
        match self {
            LastRelease::VeryEarly => 60.0,
            LastRelease::Early => 70.0,
            LastRelease::Late => 80.0,
            LastRelease::VeryLate => 95.0,
        }
    }
}

/// Full generator configuration. `Default` gives the benchmark's default
/// levels on a 30×30 grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Vertices per grid side.
    pub n: usize,
    /// Landscape side length, ft.
    pub extent_ft: f64,
    pub slope: SlopeLevel,
    pub wind: WindLevel,
    /// Predominant wind direction, radians from the +x axis.
    pub wind_direction: f64,
    pub decision_points: usize,
    pub resources: ResourcesLevel,
    pub delay: DelayLevel,
    pub first_release: FirstRelease,
    pub last_release: LastRelease,
    /// Grid cells spanned by one noise lattice cell.
    pub noise_cells_per_period: f64,
    pub constants: FuelConstants,
    pub spread: SpreadParams,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            n: GridSize::Medium.side(),
            extent_ft: DEFAULT_EXTENT_FT,
            slope: SlopeLevel::Moderate,
            wind: WindLevel::Light,
            wind_direction: 0.0,
            decision_points: DecisionLevel::Moderate.count(),
            resources: ResourcesLevel::Moderate,
            delay: DelayLevel::High,
            first_release: FirstRelease::Early,
            last_release: LastRelease::VeryLate,
            noise_cells_per_period: 8.0,
            constants: FuelConstants::default(),
            spread: SpreadParams::default(),
        }
    }
}

impl GeneratorConfig {
    pub fn with_seed(seed: u64) -> Self {
        GeneratorConfig { seed, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(WspError::domain(format!("grid side must be at least 2, got {}", self.n)));
        }
        if !(self.extent_ft.is_finite() && self.extent_ft > 0.0) {
            return Err(WspError::domain(format!("landscape extent must be positive, got {}", self.extent_ft)));
        }
        if self.decision_points == 0 {
            return Err(WspError::domain("number of decision points must be at least 1"));
        }
        if !(self.noise_cells_per_period > 0.0) {
            return Err(WspError::domain("noise period must be positive"));
        }
        if !self.wind_direction.is_finite() {
            return Err(WspError::domain("wind direction must be finite"));
        }
        Ok(())
    }

    pub fn is_standard_grid(&self) -> bool {
        STANDARD_GRID_SIDES.contains(&self.n)
    }

    /// Cell spacing `d = ceil(N_xy / n)`, ft.
    pub fn spacing(&self) -> f64 {
        (self.extent_ft / self.n as f64).ceil()
    }

    pub fn max_height(&self) -> f64 {
        self.slope.max_height(self.extent_ft)
    }

    pub fn total_resources(&self) -> usize {
        self.resources.count(self.n)
    }

    pub fn ignition(&self) -> usize {
        (self.n / 2) * self.n + self.n / 2
    }

    /// Unit vector of the predominant wind.
    pub fn wind_unit(&self) -> [f64; 2] {
        [self.wind_direction.cos(), self.wind_direction.sin()]
    }
}

/// Largest angular deviation of local wind from the predominant direction.
pub const MAX_WIND_DEVIATION: f64 = PI / 6.0;
