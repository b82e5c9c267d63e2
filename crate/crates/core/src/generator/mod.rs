//! Seeded generation of WSP instances on grid landscapes.
//!
//! Everything derives from `GeneratorConfig::seed`: each noise field and
//! the schedule permutation draw from their own ChaCha stream, so a
//! configuration always yields the same instance bytes.

pub mod config;
pub mod horizon;
pub mod landscape;
pub mod noise;
pub mod schedule;
pub mod travel;

pub use config::{
    DecisionLevel, DelayLevel, FirstRelease, GeneratorConfig, GridSize, LastRelease, ResourcesLevel, SlopeLevel,
    WindLevel,
};
pub use horizon::{compute_horizon, free_burn_quantile};
pub use landscape::{generate_base_ros, generate_landscape, generate_terrain, generate_wind_field, Landscape};
pub use noise::gradient_noise;
pub use schedule::{balanced_counts, build_resource_schedule, equally_spaced};
pub use travel::build_travel_times;

use serde_json::json;

use crate::error::Result;
use crate::fire::propagate;
use crate::instance::WspInstance;

pub const GENERATOR_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Stream used for the schedule permutation; noise channels use 0..=3.
const SCHEDULE_STREAM: u64 = 16;

/// Instance together with the landscape it was built from.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub instance: WspInstance,
    pub landscape: Landscape,
}

pub fn generate_instance(cfg: &GeneratorConfig) -> Result<WspInstance> {
    Ok(generate_with_landscape(cfg)?.instance)
}

pub fn generate_with_landscape(cfg: &GeneratorConfig) -> Result<GeneratedInstance> {
    cfg.validate()?;
    let landscape = generate_landscape(cfg);
    let graph = build_travel_times(cfg, &landscape)?;
    let ignition = cfg.ignition();
    let zeros = vec![0.0; graph.vertex_count()];
    let arrivals = propagate(&graph, ignition, &zeros);
    let horizon = compute_horizon(&arrivals)?;
    let delay = cfg.delay.delay(horizon);
    let mut rng = noise::stream_rng(cfg.seed, SCHEDULE_STREAM);
    let releases = build_resource_schedule(cfg, horizon, &arrivals, &mut rng)?;
    let meta = json!({
        "generator": {
            "version": GENERATOR_VERSION,
            "seed": cfg.seed,
            "n": cfg.n,
            "standard_grid": cfg.is_standard_grid(),
            "extent_ft": cfg.extent_ft,
            "spacing_ft": cfg.spacing(),
            "slope": cfg.slope.label(),
            "max_height_ft": cfg.max_height(),
            "wind": cfg.wind.label(),
            "wind_direction_rad": cfg.wind_direction,
            "decision_points": cfg.decision_points,
            "resources": cfg.resources.label(),
            "k": cfg.total_resources(),
            "delay": cfg.delay.label(),
            "delay_min": delay,
            "first_release": cfg.first_release.label(),
            "last_release": cfg.last_release.label(),
            "horizon_min": horizon,
            "release_times_min": releases.iter().map(|r| r.time).collect::<Vec<_>>(),
            "noise": { "kind": "perlin", "octaves": 1, "cells_per_period": cfg.noise_cells_per_period },
            "wind_wiring": format!("{:?}", cfg.constants.wiring).to_lowercase(),
            "distance": "3d",
        }
    });
    let instance = WspInstance::new(graph, ignition, horizon, delay, releases, meta)?;
    Ok(GeneratedInstance { instance, landscape })
}
