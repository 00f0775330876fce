//! Core data types shared across the pipeline: timestamped trajectories,
//! tuning parameters, per-point scores, and simplification results.
//!
//! A [`Trajectory`] is an ordered list of 2-D or 3-D position samples with
//! strictly increasing timestamps. Construction validates every invariant
//! once; downstream stages rely on them without re-checking.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Parameters above this value trigger an advisory warning: window
/// half-widths past 10 samples rarely improve results and mostly smear
/// features away.
pub const USUAL_PARAM_MAX: usize = 10;

/// Validation failures for trajectory construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrajectoryError {
    /// Fewer than two samples; there is nothing to simplify.
    #[error("trajectory needs at least 2 points, got {0}")]
    TooShort(usize),
    /// `points` and `timestamps` differ in length.
    #[error("got {points} points but {timestamps} timestamps")]
    LengthMismatch { points: usize, timestamps: usize },
    /// A point's dimension differs from the first point's.
    #[error("point {index} has dimension {actual}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        actual: usize,
    },
    /// Points are not 2-D or 3-D.
    #[error("unsupported point dimension {0}; only 2-D and 3-D are supported")]
    UnsupportedDimension(usize),
    /// A coordinate or timestamp is NaN or infinite.
    #[error("non-finite {what} at index {index}")]
    NonFinite { what: &'static str, index: usize },
    /// Timestamps must be strictly increasing.
    #[error("timestamp {current} at index {index} does not exceed its predecessor {previous}")]
    NonMonotonicTime {
        index: usize,
        previous: f64,
        current: f64,
    },
}

/// An ordered list of position samples with strictly increasing timestamps.
///
/// Positions are stored flat (point-major) so windowed passes touch
/// contiguous memory. Timestamps are elapsed seconds; file ingestion rebases
/// them to start at 0, but any strictly increasing origin is accepted here.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    dim: usize,
    coords: Vec<f64>,
    timestamps: Vec<f64>,
}

impl Trajectory {
    /// Validates and builds a trajectory from per-point rows.
    ///
    /// Requires at least 2 points, a uniform dimension of 2 or 3, finite
    /// values throughout, and strictly increasing timestamps.
    pub fn new<P: AsRef<[f64]>>(points: &[P], timestamps: &[f64]) -> Result<Self, TrajectoryError> {
        if points.len() != timestamps.len() {
            return Err(TrajectoryError::LengthMismatch {
                points: points.len(),
                timestamps: timestamps.len(),
            });
        }
        if points.len() < 2 {
            return Err(TrajectoryError::TooShort(points.len()));
        }
        let dim = points[0].as_ref().len();
        if dim != 2 && dim != 3 {
            return Err(TrajectoryError::UnsupportedDimension(dim));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (index, point) in points.iter().enumerate() {
            let row = point.as_ref();
            if row.len() != dim {
                return Err(TrajectoryError::DimensionMismatch {
                    index,
                    expected: dim,
                    actual: row.len(),
                });
            }
            if !row.iter().all(|c| c.is_finite()) {
                return Err(TrajectoryError::NonFinite {
                    what: "coordinate",
                    index,
                });
            }
            coords.extend_from_slice(row);
        }
        Self::check_timestamps(timestamps)?;
        Ok(Self {
            dim,
            coords,
            timestamps: timestamps.to_vec(),
        })
    }

    /// Validates and builds a trajectory from flat point-major coordinates.
    pub fn from_flat(
        dim: usize,
        coords: Vec<f64>,
        timestamps: Vec<f64>,
    ) -> Result<Self, TrajectoryError> {
        if dim != 2 && dim != 3 {
            return Err(TrajectoryError::UnsupportedDimension(dim));
        }
        if coords.len() != timestamps.len() * dim {
            return Err(TrajectoryError::LengthMismatch {
                points: coords.len() / dim,
                timestamps: timestamps.len(),
            });
        }
        if timestamps.len() < 2 {
            return Err(TrajectoryError::TooShort(timestamps.len()));
        }
        for (i, chunk) in coords.chunks_exact(dim).enumerate() {
            if !chunk.iter().all(|c| c.is_finite()) {
                return Err(TrajectoryError::NonFinite {
                    what: "coordinate",
                    index: i,
                });
            }
        }
        Self::check_timestamps(&timestamps)?;
        Ok(Self {
            dim,
            coords,
            timestamps,
        })
    }

    fn check_timestamps(timestamps: &[f64]) -> Result<(), TrajectoryError> {
        for (index, t) in timestamps.iter().enumerate() {
            if !t.is_finite() {
                return Err(TrajectoryError::NonFinite {
                    what: "timestamp",
                    index,
                });
            }
            if index > 0 && *t <= timestamps[index - 1] {
                return Err(TrajectoryError::NonMonotonicTime {
                    index,
                    previous: timestamps[index - 1],
                    current: *t,
                });
            }
        }
        Ok(())
    }

    /// Builds without re-validating. Callers must guarantee the invariants;
    /// used by stages whose outputs preserve them by construction.
    pub(crate) fn from_parts_unchecked(dim: usize, coords: Vec<f64>, timestamps: Vec<f64>) -> Self {
        debug_assert!(dim == 2 || dim == 3);
        debug_assert_eq!(coords.len(), timestamps.len() * dim);
        debug_assert!(timestamps.len() >= 2);
        Self {
            dim,
            coords,
            timestamps,
        }
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.timestamps.len()
    }

    /// Always false: validation rejects trajectories below 2 points.
    pub fn is_empty(&self) -> bool {
        self.timestamps.is_empty()
    }

    /// Spatial dimension, 2 or 3.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Position of sample `i`.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Iterates positions in order.
    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    /// Flat point-major coordinate storage.
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Timestamps in seconds, strictly increasing.
    pub fn timestamps(&self) -> &[f64] {
        &self.timestamps
    }

    /// Extracts the samples at `indices`, which must be strictly increasing
    /// and in bounds; the subset then satisfies every invariant.
    pub(crate) fn subset(&self, indices: &[usize]) -> Trajectory {
        debug_assert!(indices.len() >= 2);
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        let mut timestamps = Vec::with_capacity(indices.len());
        for &i in indices {
            coords.extend_from_slice(self.point(i));
            timestamps.push(self.timestamps[i]);
        }
        Self::from_parts_unchecked(self.dim, coords, timestamps)
    }
}

/// The two per-point scoring variants.
///
/// `Correlation` measures how poorly positions track time linearly inside a
/// window (good for time-aware simplification); `Direction` measures the
/// turn angle between adjacent segments (cheaper, geometry-only).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientKind {
    Correlation,
    Direction,
}

impl fmt::Display for CoefficientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientKind::Correlation => f.write_str("correlation"),
            CoefficientKind::Direction => f.write_str("direction"),
        }
    }
}

impl FromStr for CoefficientKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "correlation" => Ok(CoefficientKind::Correlation),
            "direction" => Ok(CoefficientKind::Direction),
            other => Err(format!(
                "unknown coefficient kind {other:?}; expected \"correlation\" or \"direction\""
            )),
        }
    }
}

/// Invalid parameter combinations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("beta must be at least 1")]
    BetaTooSmall,
    #[error("gamma must be at least 1")]
    GammaTooSmall,
}

/// Tuning parameters for the simplification pipeline.
///
/// All three window parameters are half-widths: a parameter `w` spans the
/// clamped index window `[i - w, i + w]` around sample `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplifyParams {
    /// Moving-average half-window; 0 disables smoothing.
    pub alpha: usize,
    /// Correlation half-window; ignored by the direction variant.
    pub beta: usize,
    /// Non-maxima-suppression half-window.
    pub gamma: usize,
    /// Scoring variant.
    pub coefficient: CoefficientKind,
}

impl SimplifyParams {
    /// Validates `beta >= 1` and `gamma >= 1`.
    pub fn new(
        alpha: usize,
        beta: usize,
        gamma: usize,
        coefficient: CoefficientKind,
    ) -> Result<Self, ParamError> {
        if beta < 1 {
            return Err(ParamError::BetaTooSmall);
        }
        if gamma < 1 {
            return Err(ParamError::GammaTooSmall);
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            coefficient,
        })
    }

    /// Same parameters with a different suppression window.
    pub fn with_gamma(self, gamma: usize) -> Result<Self, ParamError> {
        Self::new(self.alpha, self.beta, gamma, self.coefficient)
    }

    /// Advisory messages for values outside the usual working range.
    /// Large windows are legal but usually a sign of a unit mix-up.
    pub fn range_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        for (name, value) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
        ] {
            if value > USUAL_PARAM_MAX {
                warnings.push(format!(
                    "{name} = {value} is unusually large (typical values are at most {USUAL_PARAM_MAX})"
                ));
            }
        }
        warnings
    }
}

impl Default for SimplifyParams {
    /// `alpha = 1`, `beta = 2`, `gamma = 2`, correlation scoring.
    fn default() -> Self {
        Self {
            alpha: 1,
            beta: 2,
            gamma: 2,
            coefficient: CoefficientKind::Correlation,
        }
    }
}

/// Per-point scores aligned with the trajectory they were computed from.
/// Every value is finite and non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries(Vec<f64>);

impl CoefficientSeries {
    pub fn new(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite() && *v >= 0.0));
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Output of a simplification run.
///
/// `kept_indices` index into the smoothed input trajectory, are strictly
/// increasing, and always include the first and last sample. `simplified`
/// holds exactly those samples and is itself a valid trajectory.
#[derive(Debug, Clone)]
pub struct SimplifyResult {
    pub simplified: Trajectory,
    pub kept_indices: Vec<usize>,
    pub coefficients: CoefficientSeries,
}
