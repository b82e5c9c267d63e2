//! Seeded 2D gradient (Perlin) noise.
//!
//! Each `(seed, channel)` pair gets its own permutation table and lattice
//! offset, so terrain, wind angle, wind speed and base spread rate are
//! independent fields. Output is mapped to `[0, 1]`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Noise channels used by the generator.
pub mod channel {
    pub const TERRAIN: u64 = 0;
    pub const WIND_ANGLE: u64 = 1;
    pub const WIND_SPEED: u64 = 2;
    pub const BASE_ROS: u64 = 3;
}

// Bound of |noise| for 2D gradient noise with unit gradients.
const RAW_BOUND: f64 = std::f64::consts::FRAC_1_SQRT_2;

const GRADIENTS: [[f64; 2]; 8] = [
    [1.0, 0.0],
    [-1.0, 0.0],
    [0.0, 1.0],
    [0.0, -1.0],
    [RAW_BOUND, RAW_BOUND],
    [-RAW_BOUND, RAW_BOUND],
    [RAW_BOUND, -RAW_BOUND],
    [-RAW_BOUND, -RAW_BOUND],
];

/// Derives an independent RNG stream from a seed and a stream tag.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone)]
pub struct GradientNoise {
    perm: [u8; 512],
    offset: [f64; 2],
}

impl GradientNoise {
    pub fn new(seed: u64, channel: u64) -> Self {
        let mut rng = stream_rng(seed, 0x6e6f_6973_6500_0000 | channel);
        let mut base: Vec<u8> = (0..=255).collect();
        base.shuffle(&mut rng);
        let mut perm = [0u8; 512];
        for i in 0..512 {
            perm[i] = base[i & 255];
        }
        let offset = [rng.gen_range(0.0..256.0), rng.gen_range(0.0..256.0)];
        GradientNoise { perm, offset }
    }

    fn hash(&self, xi: i64, yi: i64) -> usize {
        let x = (xi & 255) as usize;
        let y = (yi & 255) as usize;
        self.perm[self.perm[x] as usize + y] as usize & 7
    }

    /// Raw noise in `[-1/√2, 1/√2]`, lattice spacing 1.
    pub fn raw(&self, x: f64, y: f64) -> f64 {
        let x = x + self.offset[0];
        let y = y + self.offset[1];
        let x0 = x.floor();
        let y0 = y.floor();
        let fx = x - x0;
        let fy = y - y0;
        let (xi, yi) = (x0 as i64, y0 as i64);
        let dot = |cx: i64, cy: i64, dx: f64, dy: f64| {
            let g = GRADIENTS[self.hash(cx, cy)];
            g[0] * dx + g[1] * dy
        };
        let n00 = dot(xi, yi, fx, fy);
        let n10 = dot(xi + 1, yi, fx - 1.0, fy);
        let n01 = dot(xi, yi + 1, fx, fy - 1.0);
        let n11 = dot(xi + 1, yi + 1, fx - 1.0, fy - 1.0);
        let u = fade(fx);
        let v = fade(fy);
        lerp(v, lerp(u, n00, n10), lerp(u, n01, n11))
    }

    /// Noise mapped to `[0, 1]`.
    pub fn sample(&self, x: f64, y: f64) -> f64 {
        (0.5 + 0.5 * self.raw(x, y) / RAW_BOUND).clamp(0.0, 1.0)
    }
}

fn fade(t: f64) -> f64 {
    t * t * t * (t * (t * 6.0 - 15.0) + 10.0)
}

fn lerp(t: f64, a: f64, b: f64) -> f64 {
    a + t * (b - a)
}

/// One-off evaluation; build a [`GradientNoise`] when sampling many points.
pub fn gradient_noise(seed: u64, channel: u64, x: f64, y: f64) -> f64 {
    GradientNoise::new(seed, channel).sample(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        assert_eq!(gradient_noise(7, 0, 1.3, 2.7), gradient_noise(7, 0, 1.3, 2.7));
        assert_ne!(gradient_noise(7, 0, 1.3, 2.7), gradient_noise(7, 1, 1.3, 2.7));
        assert_ne!(gradient_noise(7, 0, 1.3, 2.7), gradient_noise(8, 0, 1.3, 2.7));
    }

    #[test]
    fn range_over_sample() {
        let noise = GradientNoise::new(42, channel::TERRAIN);
        let mut rng = stream_rng(1, 1);
        let mut lo: f64 = 1.0;
        let mut hi: f64 = 0.0;
        for _ in 0..1000 {
            let v = noise.sample(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
            assert!((0.0..=1.0).contains(&v));
            lo = lo.min(v);
            hi = hi.max(v);
        }
        assert!(hi - lo > 0.3, "noise should vary, got [{lo}, {hi}]");
    }

    #[test]
    fn continuity_probe() {
        let noise = GradientNoise::new(3, channel::WIND_SPEED);
        let mut rng = stream_rng(2, 2);
        for _ in 0..200 {
            let x = rng.gen_range(0.0..40.0);
            let y = rng.gen_range(0.0..40.0);
            let base = noise.sample(x, y);
            for h in [1e-1, 1e-2, 1e-3, 1e-4, 1e-5] {
                let diff = (noise.sample(x + h, y) - base).abs();
                // Gradient of the [0, 1]-mapped field is bounded, so the
                // difference shrinks at least linearly with h.
                assert!(diff <= 4.0 * h, "h={h} diff={diff}");
            }
        }
    }
}
