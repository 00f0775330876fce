//! Linear-time trajectory simplification.
//!
//! The pipeline takes a timestamped polyline (2-D or 3-D positions),
//! smooths it with a moving-average filter, scores every sample with an
//! "information" coefficient, keeps the local score maxima, and fits a
//! natural cubic spline through the survivors. Every stage is a single
//! pass over the data, so the whole run is linear in the number of input
//! points for fixed window parameters.
//!
//! The crate ships the pipeline ([`simplify`], [`spline::CubicSpline`]),
//! quality metrics and benchmarking helpers ([`metrics`]), a
//! Ramer-Douglas-Peucker baseline for comparisons ([`rdp`]), synthetic
//! trajectory generators for tests and benchmarks ([`synthetic`]), and
//! CSV/PLT ingestion plus the result document writer ([`io`]).
//!
//! ```
//! use faststray::{simplify, SimplifyParams, Trajectory};
//!
//! let points: Vec<[f64; 2]> = (0..100)
//!     .map(|i| {
//!         let t = i as f64 * 0.1;
//!         [t.cos(), t.sin()]
//!     })
//!     .collect();
//! let times: Vec<f64> = (0..100).map(|i| i as f64 * 0.1).collect();
//! let trajectory = Trajectory::new(&points, &times).unwrap();
//!
//! let result = simplify(&trajectory, &SimplifyParams::default()).unwrap();
//! assert!(result.simplified.len() < trajectory.len());
//! assert_eq!(result.kept_indices.first(), Some(&0));
//! ```

pub mod io;
pub mod metrics;
pub mod rdp;
pub mod simplify;
pub mod spline;
pub mod synthetic;
pub mod trajectory;

pub use simplify::{
    compute_coefficients, correlation_coefficient, direction_coefficient, moving_average_filter,
    nms_keep_indices, select_points, simplify, SimplifyError,
};
pub use spline::{CubicSpline, SplineError};
pub use trajectory::{
    CoefficientKind, CoefficientSeries, ParamError, SimplifyParams, SimplifyResult, Trajectory,
    TrajectoryError,
};
