//! Deterministic synthetic trajectory generators for benchmarks and tests.
//!
//! Both generators are seeded, so a given configuration always produces the
//! same trajectory.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::trajectory::Trajectory;

/// Configuration for [`smooth_trajectory`]: a densely sampled, twice
/// continuously differentiable 3-D curve with mild sensor noise, similar to
/// a tracked hand or tool tip.
#[derive(Debug, Clone)]
pub struct SmoothConfig {
    /// Number of samples.
    pub points: usize,
    /// Total duration in seconds; samples are uniformly spaced.
    pub duration: f64,
    /// Approximate spatial extent in meters.
    pub scale: f64,
    /// Number of sinusoidal components per coordinate.
    pub harmonics: usize,
    /// Standard deviation of additive position noise, in meters.
    pub noise_std: f64,
    pub seed: u64,
}

impl Default for SmoothConfig {
    fn default() -> Self {
        Self {
            points: 300,
            duration: 3.0,
            scale: 0.15,
            harmonics: 3,
            noise_std: 1e-4,
            seed: 7,
        }
    }
}

/// Generates a smooth 3-D trajectory: each coordinate is a short random
/// sum of sinusoids, sampled uniformly in time, with Gaussian noise added.
///
/// The underlying curve's complexity does not depend on `points`, so larger
/// configurations sample the same kind of curve more densely. That makes
/// the generator suitable for runtime scaling measurements.
pub fn smooth_trajectory(config: &SmoothConfig) -> Trajectory {
    assert!(config.points >= 2, "need at least 2 points");
    assert!(config.duration > 0.0, "duration must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    // Per-coordinate harmonic parameters, drawn once.
    let mut amplitudes = [[0.0; 8]; 3];
    let mut frequencies = [[0.0; 8]; 3];
    let mut phases = [[0.0; 8]; 3];
    let harmonics = config.harmonics.clamp(1, 8);
    for d in 0..3 {
        for k in 0..harmonics {
            amplitudes[d][k] = config.scale * rng.gen_range(0.5..1.0) / (k + 1) as f64;
            frequencies[d][k] = (k + 1) as f64 * rng.gen_range(0.15..0.45);
            phases[d][k] = rng.gen_range(0.0..std::f64::consts::TAU);
        }
    }

    let noise = Normal::new(0.0, config.noise_std.max(0.0)).expect("finite noise std");
    let n = config.points;
    let mut points = Vec::with_capacity(n);
    let mut times = Vec::with_capacity(n);
    for i in 0..n {
        let t = config.duration * i as f64 / (n - 1) as f64;
        let mut p = [0.0; 3];
        for d in 0..3 {
            for k in 0..harmonics {
                p[d] += amplitudes[d][k]
                    * (std::f64::consts::TAU * frequencies[d][k] * t + phases[d][k]).sin();
            }
            if config.noise_std > 0.0 {
                p[d] += noise.sample(&mut rng);
            }
        }
        points.push(p);
        times.push(t);
    }
    Trajectory::new(&points, &times).expect("generator output is always valid")
}

/// Configuration for [`gps_like_track`]: a 2-D vehicle-style track in local
/// meters with per-second sampling and GPS-scale position noise.
#[derive(Debug, Clone)]
pub struct GpsTrackConfig {
    /// Number of samples.
    pub points: usize,
    /// Seconds between samples.
    pub sample_interval: f64,
    /// Mean speed in meters per second.
    pub mean_speed: f64,
    /// Standard deviation of position noise, in meters.
    pub noise_std: f64,
    /// Expected number of samples between sharp turns.
    pub turn_every: usize,
    pub seed: u64,
}

impl Default for GpsTrackConfig {
    fn default() -> Self {
        Self {
            points: 3000,
            sample_interval: 1.0,
            mean_speed: 10.0,
            noise_std: 1.5,
            turn_every: 120,
            seed: 17,
        }
    }
}

/// Generates a GPS-like 2-D track: a heading random walk with occasional
/// sharp turns, smoothly varying speed, and Gaussian position noise.
pub fn gps_like_track(config: &GpsTrackConfig) -> Trajectory {
    assert!(config.points >= 2, "need at least 2 points");
    assert!(config.sample_interval > 0.0, "sample interval must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let noise = Normal::new(0.0, config.noise_std.max(0.0)).expect("finite noise std");
    let drift = Normal::new(0.0, 0.03).unwrap();

    let mut heading = rng.gen_range(0.0..std::f64::consts::TAU);
    let (mut x, mut y) = (0.0, 0.0);
    let mut points = Vec::with_capacity(config.points);
    let mut times = Vec::with_capacity(config.points);
    for i in 0..config.points {
        let t = i as f64 * config.sample_interval;
        let mut px = x;
        let mut py = y;
        if config.noise_std > 0.0 {
            px += noise.sample(&mut rng);
            py += noise.sample(&mut rng);
        }
        points.push([px, py]);
        times.push(t);

        // Advance the true position for the next sample.
        heading += drift.sample(&mut rng);
        if config.turn_every > 0 && rng.gen_ratio(1, config.turn_every as u32) {
            let magnitude = rng.gen_range(0.4..1.3);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            heading += sign * magnitude;
        }
        let speed = config.mean_speed * (1.0 + 0.4 * (i as f64 / 200.0).sin());
        x += speed * config.sample_interval * heading.cos();
        y += speed * config.sample_interval * heading.sin();
    }
    Trajectory::new(&points, &times).expect("generator output is always valid")
}
