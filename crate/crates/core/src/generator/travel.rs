//! Arc travel times from landscape physics.

use super::config::GeneratorConfig;
use super::landscape::Landscape;
use crate::error::Result;
use crate::graph::{DirectedGraph, VertexId};
use crate::rothermel::{albini_multiplier, travel_time};

/// Physical quantities behind one directed arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcPhysics {
    /// Slope tangent from tail to head, capped to `[-1, 1]` (45°).
    pub slope: f64,
    /// Signed wind component along the arc direction, ft/min.
    pub wind: f64,
    /// 3D distance using the capped height difference, ft.
    pub distance: f64,
    /// Directional spread rates in the tail and head cells, ft/min.
    pub rate_tail: f64,
    pub rate_head: f64,
    pub time: f64,
}

/// Unit direction from `u` to adjacent `v` in the xy-plane.
fn direction(land: &Landscape, u: VertexId, v: VertexId) -> [f64; 2] {
    let (ux, uy) = land.coords(u);
    let (vx, vy) = land.coords(v);
    [vx as f64 - ux as f64, vy as f64 - uy as f64]
}

pub fn arc_physics(cfg: &GeneratorConfig, land: &Landscape, u: VertexId, v: VertexId) -> Result<ArcPhysics> {
    let d = land.spacing;
    let dz = (land.heights[v] - land.heights[u]).clamp(-d, d);
    let slope = dz / d;
    let n = direction(land, u, v);
    let w = land.wind_between(u, v);
    let wind = w[0] * n[0] + w[1] * n[1];
    let r = albini_multiplier(wind, slope, &cfg.constants, &cfg.spread);
    let rate_tail = land.base_ros[u] * r;
    let rate_head = land.base_ros[v] * r;
    let distance = d.hypot(dz);
    let time = travel_time(distance, rate_tail, rate_head)?;
    Ok(ArcPhysics { slope, wind, distance, rate_tail, rate_head, time })
}

/// 4-neighbour grid graph with physics-derived travel times in minutes.
pub fn build_travel_times(cfg: &GeneratorConfig, land: &Landscape) -> Result<DirectedGraph> {
    let mut arcs = Vec::with_capacity(4 * land.n * (land.n - 1));
    for u in 0..land.n * land.n {
        for v in land.neighbours(u) {
            arcs.push((u, v, arc_physics(cfg, land, u, v)?.time));
        }
    }
    DirectedGraph::new(land.n * land.n, arcs)
}
