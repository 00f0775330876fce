//! Quality and runtime metrics for simplification results, plus the gamma
//! sweep and the scaling benchmark used by the CLI.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::rdp::rdp_simplify;
use crate::simplify::{simplify, SimplifyError};
use crate::spline::CubicSpline;
use crate::synthetic::{smooth_trajectory, SmoothConfig};
use crate::trajectory::{
    CoefficientKind, ParamError, SimplifyParams, SimplifyResult, Trajectory,
};

/// Above this sample count the exact pairwise diameter is replaced by the
/// bounding-box diagonal (an upper bound within a factor of sqrt(D)); the
/// report flags the substitution.
pub const DIAMETER_EXACT_LIMIT: usize = 20_000;

/// Quality and runtime summary of one simplification run.
#[derive(Debug, Clone)]
pub struct EvaluationReport {
    /// Parameters the run used, recorded so every report is reproducible
    /// on its own.
    pub params: SimplifyParams,
    pub original_count: usize,
    pub simplified_count: usize,
    /// `100 * (1 - simplified_count / original_count)`.
    pub reduction_percent: f64,
    /// Mean distance between each original sample and the reconstructed
    /// curve at the same timestamp, in input units.
    pub synchronous_error: f64,
    /// Synchronous error as a percentage of the trajectory diameter.
    pub relative_error_percent: f64,
    /// True when the diameter was approximated by the bounding-box
    /// diagonal rather than computed exactly.
    pub diameter_approximate: bool,
    /// Wall time of the simplification pass alone.
    pub simplify_runtime: Duration,
    /// Wall time of the spline fit alone.
    pub spline_runtime: Duration,
}

/// Everything one pipeline run produces: the simplification result, the
/// reconstruction spline, and the evaluation report.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub result: SimplifyResult,
    pub spline: CubicSpline,
    pub report: EvaluationReport,
}

/// Mean distance between each sample of `original` and the curve evaluated
/// at that sample's timestamp.
///
/// Zero exactly when the curve interpolates every original sample.
pub fn synchronous_error(original: &Trajectory, spline: &CubicSpline) -> f64 {
    assert_eq!(original.dim(), spline.dim(), "dimension mismatch");
    let reconstructed = spline.evaluate_batch(original.timestamps());
    let mut total = 0.0;
    for (point, rec) in original.points().zip(&reconstructed) {
        let mut dist_sq = 0.0;
        for d in 0..point.len() {
            let diff = point[d] - rec[d];
            dist_sq += diff * diff;
        }
        total += dist_sq.sqrt();
    }
    total / original.len() as f64
}

/// Percentage of points removed: `100 * (1 - simplified / original)`.
pub fn reduction_percent(original_count: usize, simplified_count: usize) -> f64 {
    assert!(original_count > 0, "original count must be positive");
    100.0 * (1.0 - simplified_count as f64 / original_count as f64)
}

/// Largest pairwise distance between samples, and whether it was
/// approximated.
///
/// Exact for up to [`DIAMETER_EXACT_LIMIT`] samples via a pairwise scan
/// that stops early once the bounding-box diagonal (an upper bound) is
/// reached; beyond the limit the diagonal itself is returned and flagged.
pub fn trajectory_diameter(trajectory: &Trajectory) -> (f64, bool) {
    let dim = trajectory.dim();
    let mut min = [f64::INFINITY; 3];
    let mut max = [f64::NEG_INFINITY; 3];
    for p in trajectory.points() {
        for d in 0..dim {
            min[d] = min[d].min(p[d]);
            max[d] = max[d].max(p[d]);
        }
    }
    let mut bbox_sq = 0.0;
    for d in 0..dim {
        let extent = max[d] - min[d];
        bbox_sq += extent * extent;
    }
    if trajectory.len() > DIAMETER_EXACT_LIMIT {
        return (bbox_sq.sqrt(), true);
    }

    let n = trajectory.len();
    let mut best_sq = 0.0;
    'outer: for i in 0..n {
        let pi = trajectory.point(i);
        for j in i + 1..n {
            let pj = trajectory.point(j);
            let mut dist_sq = 0.0;
            for d in 0..dim {
                let diff = pi[d] - pj[d];
                dist_sq += diff * diff;
            }
            if dist_sq > best_sq {
                best_sq = dist_sq;
                if best_sq >= bbox_sq {
                    break 'outer;
                }
            }
        }
    }
    (best_sq.sqrt(), false)
}

fn relative_from_diameter(synchronous_error: f64, diameter: f64) -> f64 {
    if diameter > 0.0 {
        100.0 * synchronous_error / diameter
    } else {
        // A stationary trajectory has no spatial scale to compare against.
        0.0
    }
}

/// Synchronous error as a percentage of the trajectory diameter.
pub fn relative_error_percent(original: &Trajectory, synchronous_error: f64) -> f64 {
    let (diameter, _) = trajectory_diameter(original);
    relative_from_diameter(synchronous_error, diameter)
}

/// Runs simplification and spline reconstruction on `input` and measures
/// both quality and per-stage wall time.
pub fn evaluate(input: &Trajectory, params: &SimplifyParams) -> Result<PipelineRun, SimplifyError> {
    let start = Instant::now();
    let result = simplify(input, params)?;
    let simplify_runtime = start.elapsed();

    let start = Instant::now();
    let spline = CubicSpline::fit(&result.simplified)
        .expect("strictly increasing knots always yield a solvable spline system");
    let spline_runtime = start.elapsed();

    let error = synchronous_error(input, &spline);
    let (diameter, diameter_approximate) = trajectory_diameter(input);
    let report = EvaluationReport {
        params: *params,
        original_count: input.len(),
        simplified_count: result.simplified.len(),
        reduction_percent: reduction_percent(input.len(), result.simplified.len()),
        synchronous_error: error,
        relative_error_percent: relative_from_diameter(error, diameter),
        diameter_approximate,
        simplify_runtime,
        spline_runtime,
    };
    Ok(PipelineRun {
        result,
        spline,
        report,
    })
}

/// Failures while sweeping.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Simplify(#[from] SimplifyError),
}

/// Runs the full pipeline once per entry of `gammas` (other parameters
/// fixed) and returns one report per run, in order.
pub fn sweep_gamma(
    input: &Trajectory,
    params: &SimplifyParams,
    gammas: &[usize],
) -> Result<Vec<EvaluationReport>, SweepError> {
    assert!(!gammas.is_empty(), "gamma list must not be empty");
    let mut reports = Vec::with_capacity(gammas.len());
    for &gamma in gammas {
        let run_params = params.with_gamma(gamma)?;
        reports.push(evaluate(input, &run_params)?.report);
    }
    Ok(reports)
}

/// Summary of a distance-threshold baseline run for sweep comparisons.
#[derive(Debug, Clone)]
pub struct RdpBaseline {
    pub epsilon: f64,
    pub simplified_count: usize,
    pub reduction_percent: f64,
    pub synchronous_error: f64,
}

/// Runs the Ramer-Douglas-Peucker baseline on the raw input and evaluates
/// it with the same spline reconstruction and error metric.
pub fn rdp_baseline(input: &Trajectory, epsilon: f64) -> RdpBaseline {
    let result = rdp_simplify(input, epsilon);
    let spline = CubicSpline::fit(&result.simplified)
        .expect("strictly increasing knots always yield a solvable spline system");
    RdpBaseline {
        epsilon,
        simplified_count: result.simplified.len(),
        reduction_percent: reduction_percent(input.len(), result.simplified.len()),
        synchronous_error: synchronous_error(input, &spline),
    }
}

/// Formats a metric value with 9 significant digits, e.g. `9.07185629e1`.
/// Result documents and sweep tables both use this representation.
pub fn format_metric(value: f64) -> String {
    format!("{value:.8e}")
}

/// Renders sweep reports as a tab-separated table with a fixed header row.
///
/// Columns: `alpha`, `gamma`, `kept`, `reduction_percent`,
/// `synchronous_error`, `relative_error_percent`; when a baseline is given,
/// `rdp_epsilon`, `rdp_kept`, `rdp_reduction_percent`,
/// `rdp_synchronous_error` follow (identical in every row, since the
/// baseline does not depend on gamma).
pub fn sweep_table(reports: &[EvaluationReport], baseline: Option<&RdpBaseline>) -> String {
    let mut out = String::from(
        "alpha\tgamma\tkept\treduction_percent\tsynchronous_error\trelative_error_percent",
    );
    if baseline.is_some() {
        out.push_str("\trdp_epsilon\trdp_kept\trdp_reduction_percent\trdp_synchronous_error");
    }
    out.push('\n');
    for report in reports {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            report.params.alpha,
            report.params.gamma,
            report.simplified_count,
            format_metric(report.reduction_percent),
            format_metric(report.synchronous_error),
            format_metric(report.relative_error_percent),
        ));
        if let Some(b) = baseline {
            out.push_str(&format!(
                "\t{}\t{}\t{}\t{}",
                format_metric(b.epsilon),
                b.simplified_count,
                format_metric(b.reduction_percent),
                format_metric(b.synchronous_error),
            ));
        }
        out.push('\n');
    }
    out
}

/// One timing measurement of the scaling benchmark.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchPoint {
    pub size: usize,
    pub seconds: f64,
}

/// Times the simplification pass on synthetic smooth trajectories of the
/// given sizes, taking the median of `repetitions` runs per size (after one
/// warm-up run). The synthetic curve's complexity is independent of size,
/// so the timings isolate scaling in the sample count.
pub fn bench_simplify(
    sizes: &[usize],
    kind: CoefficientKind,
    repetitions: usize,
) -> Vec<BenchPoint> {
    let repetitions = repetitions.max(1);
    let params = SimplifyParams {
        alpha: 1,
        beta: 2,
        gamma: 2,
        coefficient: kind,
    };
    sizes
        .iter()
        .map(|&size| {
            let trajectory = smooth_trajectory(&SmoothConfig {
                points: size.max(16),
                seed: 42,
                ..SmoothConfig::default()
            });
            let run = || {
                let start = Instant::now();
                let result = simplify(&trajectory, &params)
                    .expect("benchmark trajectories satisfy every window precondition");
                std::hint::black_box(&result);
                start.elapsed().as_secs_f64()
            };
            run();
            let mut times: Vec<f64> = (0..repetitions).map(|_| run()).collect();
            times.sort_by(f64::total_cmp);
            BenchPoint {
                size,
                seconds: times[times.len() / 2],
            }
        })
        .collect()
}

/// Least-squares slope of log(seconds) against log(size): the empirical
/// growth exponent. `None` below two distinct sizes.
pub fn growth_exponent(points: &[BenchPoint]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|p| ((p.size as f64).ln(), p.seconds.max(1e-12).ln()))
        .collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = logs.iter().map(|(_, y)| y).sum::<f64>() / n;
    let mut covariance = 0.0;
    let mut variance = 0.0;
    for (x, y) in &logs {
        covariance += (x - mean_x) * (y - mean_y);
        variance += (x - mean_x) * (x - mean_x);
    }
    (variance > 0.0).then(|| covariance / variance)
}
