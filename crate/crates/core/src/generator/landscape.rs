//! Terrain heights, local wind vectors and base spread rates on an n×n grid.
//!
//! Vertices are indexed row-major, `v = y·n + x`. Wind is stored once per
//! undirected 4-neighbour pair and sampled at the pair's midpoint, so the
//! vector seen from `u` towards `v` and from `v` towards `u` is the same.

use super::config::{GeneratorConfig, MAX_WIND_DEVIATION};
use super::noise::{channel, GradientNoise};
use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq)]
pub struct Landscape {
    pub n: usize,
    /// Cell spacing in the xy-plane, ft.
    pub spacing: f64,
    /// Height per vertex, ft.
    pub heights: Vec<f64>,
    /// No-wind, no-slope spread rate per vertex, ft/min.
    pub base_ros: Vec<f64>,
    /// Wind between `(x, y)` and `(x+1, y)`, index `y·(n-1) + x`, ft/min.
    pub wind_horizontal: Vec<[f64; 2]>,
    /// Wind between `(x, y)` and `(x, y+1)`, index `y·n + x`, ft/min.
    pub wind_vertical: Vec<[f64; 2]>,
}

impl Landscape {
    pub fn coords(&self, v: VertexId) -> (usize, usize) {
        (v % self.n, v / self.n)
    }

    pub fn vertex(&self, x: usize, y: usize) -> VertexId {
        y * self.n + x
    }

    /// 4-neighbours of `v` in the order +x, -x, +y, -y.
    pub fn neighbours(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let (x, y) = self.coords(v);
        let n = self.n;
        [
            (x + 1 < n).then(|| self.vertex(x + 1, y)),
            (x > 0).then(|| self.vertex(x - 1, y)),
            (y + 1 < n).then(|| self.vertex(x, y + 1)),
            (y > 0).then(|| self.vertex(x, y - 1)),
        ]
        .into_iter()
        .flatten()
    }

    /// Shared wind vector of an adjacent pair, in either order.
    pub fn wind_between(&self, u: VertexId, v: VertexId) -> [f64; 2] {
        let (ux, uy) = self.coords(u);
        let (vx, vy) = self.coords(v);
        if uy == vy && ux.abs_diff(vx) == 1 {
            self.wind_horizontal[uy * (self.n - 1) + ux.min(vx)]
        } else if ux == vx && uy.abs_diff(vy) == 1 {
            self.wind_vertical[uy.min(vy) * self.n + ux]
        } else {
            panic!("vertices {u} and {v} are not grid neighbours");
        }
    }
}

fn field(cfg: &GeneratorConfig, ch: u64, map: impl Fn(f64) -> f64) -> Vec<f64> {
    let noise = GradientNoise::new(cfg.seed, ch);
    let p = cfg.noise_cells_per_period;
    (0..cfg.n * cfg.n)
        .map(|v| {
            let (x, y) = (v % cfg.n, v / cfg.n);
            map(noise.sample(x as f64 / p, y as f64 / p))
        })
        .collect()
}

/// Heights `N_z · noise(v)`, ft.
pub fn generate_terrain(cfg: &GeneratorConfig) -> Vec<f64> {
    let nz = cfg.max_height();
    field(cfg, channel::TERRAIN, |s| nz * s)
}

/// Base spread rates `1 + 14 · noise(v)`, ft/min.
pub fn generate_base_ros(cfg: &GeneratorConfig) -> Vec<f64> {
    field(cfg, channel::BASE_ROS, |s| 1.0 + 14.0 * s)
}

/// Local wind for the pair whose midpoint is `(mx, my)` in grid units.
fn local_wind(cfg: &GeneratorConfig, angle: &GradientNoise, speed: &GradientNoise, mx: f64, my: f64) -> [f64; 2] {
    let p = cfg.noise_cells_per_period;
    let dev = (2.0 * angle.sample(mx / p, my / p) - 1.0) * MAX_WIND_DEVIATION;
    let (lo, hi) = cfg.wind.speed_range();
    let magnitude = lo + speed.sample(mx / p, my / p) * (hi - lo);
    let theta = cfg.wind_direction + dev;
    [magnitude * theta.cos(), magnitude * theta.sin()]
}

/// Wind vectors for horizontal and vertical pairs, ft/min.
pub fn generate_wind_field(cfg: &GeneratorConfig) -> (Vec<[f64; 2]>, Vec<[f64; 2]>) {
    let n = cfg.n;
    let angle = GradientNoise::new(cfg.seed, channel::WIND_ANGLE);
    let speed = GradientNoise::new(cfg.seed, channel::WIND_SPEED);
    let mut horizontal = Vec::with_capacity(n * (n - 1));
    for y in 0..n {
        for x in 0..n - 1 {
            horizontal.push(local_wind(cfg, &angle, &speed, x as f64 + 0.5, y as f64));
        }
    }
    let mut vertical = Vec::with_capacity(n * (n - 1));
    for y in 0..n - 1 {
        for x in 0..n {
            vertical.push(local_wind(cfg, &angle, &speed, x as f64, y as f64 + 0.5));
        }
    }
    (horizontal, vertical)
}

pub fn generate_landscape(cfg: &GeneratorConfig) -> Landscape {
    let (wind_horizontal, wind_vertical) = generate_wind_field(cfg);
    Landscape {
        n: cfg.n,
        spacing: cfg.spacing(),
        heights: generate_terrain(cfg),
        base_ros: generate_base_ros(cfg),
        wind_horizontal,
        wind_vertical,
    }
}
