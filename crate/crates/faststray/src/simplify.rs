//! The simplification pipeline: moving-average smoothing, per-point
//! information scores, and non-maxima suppression.
//!
//! [`simplify`] runs the three stages in order. Every stage works on clamped
//! index windows, so the whole pass is linear in the number of samples for
//! fixed window sizes, and endpoints are always preserved.

use thiserror::Error;

use crate::trajectory::{
    CoefficientKind, CoefficientSeries, SimplifyParams, SimplifyResult, Trajectory,
};

/// A coordinate whose windowed variance falls below this is treated as
/// constant: it carries no information about the motion, so its term in the
/// correlation score contributes the neutral value 1.
pub const VARIANCE_FLOOR: f64 = 1e-12;

/// Lower clamp for the squared correlation per coordinate. Keeps the score
/// finite when a coordinate is completely uncorrelated with time, bounding
/// each term by 1e8.
pub const MIN_R_SQUARED: f64 = 1e-8;

/// Lower clamp for the direction-score denominator `1 + cos`. A full
/// reversal gives cos = -1; the clamp bounds the score by 1e8.
pub const MIN_DIRECTION_DENOM: f64 = 1e-8;

/// Fewest samples a correlation window may hold: with two points the fit is
/// always exact and the score degenerates.
pub const MIN_CORRELATION_WINDOW: usize = 3;

/// Failures while scoring points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplifyError {
    /// The clamped correlation window holds too few samples. Raised at the
    /// trajectory edges when `beta = 1`, or on very short trajectories.
    #[error("correlation window around index {index} has only {len} points; at least {min} are required")]
    WindowTooSmall {
        index: usize,
        len: usize,
        min: usize,
    },
}

/// Replaces each position with the unweighted mean of the positions in the
/// clamped window `[i - alpha, i + alpha]`. Timestamps are unchanged, and
/// `alpha = 0` returns the input as-is.
pub fn moving_average_filter(input: &Trajectory, alpha: usize) -> Trajectory {
    if alpha == 0 {
        return input.clone();
    }
    let n = input.len();
    let dim = input.dim();
    let mut coords = Vec::with_capacity(n * dim);
    for i in 0..n {
        let lo = i.saturating_sub(alpha);
        let hi = (i + alpha).min(n - 1);
        let count = (hi - lo + 1) as f64;
        for d in 0..dim {
            let mut sum = 0.0;
            for j in lo..=hi {
                sum += input.point(j)[d];
            }
            coords.push(sum / count);
        }
    }
    Trajectory::from_parts_unchecked(dim, coords, input.timestamps().to_vec())
}

/// Correlation score for sample `index`: how poorly the positions in the
/// clamped window `[index - beta, index + beta]` track time linearly.
///
/// Each coordinate contributes the reciprocal of its squared correlation
/// with the timestamps, so a straight constant-velocity window scores the
/// dimension count and sharp features score much higher. Constant
/// coordinates contribute 1 and squared correlations are clamped to at
/// least [`MIN_R_SQUARED`], so the result is always finite and at least
/// the trajectory dimension.
pub fn correlation_coefficient(
    filtered: &Trajectory,
    beta: usize,
    index: usize,
) -> Result<f64, SimplifyError> {
    assert!(beta >= 1, "beta must be at least 1");
    let n = filtered.len();
    assert!(index < n, "index {index} out of bounds for {n} points");
    let lo = index.saturating_sub(beta);
    let hi = (index + beta).min(n - 1);
    let len = hi - lo + 1;
    if len < MIN_CORRELATION_WINDOW {
        return Err(SimplifyError::WindowTooSmall {
            index,
            len,
            min: MIN_CORRELATION_WINDOW,
        });
    }

    let times = &filtered.timestamps()[lo..=hi];
    let inv_len = 1.0 / len as f64;
    let t_mean = times.iter().sum::<f64>() * inv_len;
    let mut score = 0.0;
    for d in 0..filtered.dim() {
        let mut a_mean = 0.0;
        for j in lo..=hi {
            a_mean += filtered.point(j)[d];
        }
        a_mean *= inv_len;
        let (mut cov, mut var_a, mut var_t) = (0.0, 0.0, 0.0);
        for j in lo..=hi {
            let da = filtered.point(j)[d] - a_mean;
            let dt = filtered.timestamps()[j] - t_mean;
            cov += da * dt;
            var_a += da * da;
            var_t += dt * dt;
        }
        let r_squared = if var_a * inv_len < VARIANCE_FLOOR {
            1.0
        } else {
            let r = cov / (var_a.sqrt() * var_t.sqrt());
            (r * r).clamp(MIN_R_SQUARED, 1.0)
        };
        score += 1.0 / r_squared;
    }
    Ok(score)
}

/// Direction score for sample `index`: large where the heading turns.
///
/// Interior samples score `1 / (1 + cos)` of the angle between the incoming
/// and outgoing segments, ranging from 0.5 (straight) through 1 (right
/// angle) up to 1e8 (full reversal, via [`MIN_DIRECTION_DENOM`]). A
/// zero-length segment means the tracked object paused, which says nothing
/// about heading, so it counts as straight. Endpoints have only one
/// neighbor and score 0.
pub fn direction_coefficient(filtered: &Trajectory, index: usize) -> f64 {
    let n = filtered.len();
    assert!(index < n, "index {index} out of bounds for {n} points");
    if index == 0 || index == n - 1 {
        return 0.0;
    }
    let prev = filtered.point(index - 1);
    let here = filtered.point(index);
    let next = filtered.point(index + 1);
    let (mut dot, mut norm1, mut norm2) = (0.0, 0.0, 0.0);
    for d in 0..filtered.dim() {
        let v1 = here[d] - prev[d];
        let v2 = next[d] - here[d];
        dot += v1 * v2;
        norm1 += v1 * v1;
        norm2 += v2 * v2;
    }
    let cos = if norm1 == 0.0 || norm2 == 0.0 {
        1.0
    } else {
        (dot / (norm1.sqrt() * norm2.sqrt())).clamp(-1.0, 1.0)
    };
    1.0 / (1.0 + cos).max(MIN_DIRECTION_DENOM)
}

/// Scores every sample of `filtered` with the variant chosen in `params`.
///
/// The output is aligned index-for-index with the input. Scores depend only
/// on values inside each sample's window, so the pass is deterministic and
/// order-independent.
pub fn compute_coefficients(
    filtered: &Trajectory,
    params: &SimplifyParams,
) -> Result<CoefficientSeries, SimplifyError> {
    let n = filtered.len();
    let mut values = Vec::with_capacity(n);
    match params.coefficient {
        CoefficientKind::Correlation => {
            for i in 0..n {
                values.push(correlation_coefficient(filtered, params.beta, i)?);
            }
        }
        CoefficientKind::Direction => {
            for i in 0..n {
                values.push(direction_coefficient(filtered, i));
            }
        }
    }
    Ok(CoefficientSeries::new(values))
}

/// Raw non-maxima suppression: an interior index is kept exactly when its
/// value equals the maximum over the clamped window `[i - gamma, i + gamma]`
/// (ties keep every tied index), and the first and last index are always
/// kept. The result is strictly increasing.
pub fn nms_keep_indices(coefficients: &[f64], gamma: usize) -> Vec<usize> {
    assert!(gamma >= 1, "gamma must be at least 1");
    let n = coefficients.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut kept = vec![0];
    for i in 1..n - 1 {
        let lo = i.saturating_sub(gamma);
        let hi = (i + gamma).min(n - 1);
        let mut max = f64::NEG_INFINITY;
        for &value in &coefficients[lo..=hi] {
            if value > max {
                max = value;
            }
        }
        if coefficients[i] == max {
            kept.push(i);
        }
    }
    kept.push(n - 1);
    kept
}

/// Keeps the samples whose scores are window maxima, plus both endpoints.
///
/// `coefficients` must be aligned with `filtered`; the returned samples are
/// taken from `filtered`, so the output reflects the smoothed positions.
pub fn select_points(
    filtered: &Trajectory,
    coefficients: &CoefficientSeries,
    gamma: usize,
) -> SimplifyResult {
    assert_eq!(
        filtered.len(),
        coefficients.len(),
        "coefficients must align with the trajectory"
    );
    let kept_indices = nms_keep_indices(coefficients.values(), gamma);
    let simplified = filtered.subset(&kept_indices);
    SimplifyResult {
        simplified,
        kept_indices,
        coefficients: coefficients.clone(),
    }
}

/// Runs the full pipeline: smooth, score, suppress.
///
/// The returned indices refer to the smoothed trajectory, which has the same
/// length and timestamps as `input`.
pub fn simplify(input: &Trajectory, params: &SimplifyParams) -> Result<SimplifyResult, SimplifyError> {
    let filtered = moving_average_filter(input, params.alpha);
    let coefficients = compute_coefficients(&filtered, params)?;
    Ok(select_points(&filtered, &coefficients, params.gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn line_1d(values: &[f64]) -> Trajectory {
        let points: Vec<[f64; 2]> = values.iter().map(|&v| [v, 0.0]).collect();
        let times: Vec<f64> = (0..values.len()).map(|i| i as f64).collect();
        Trajectory::new(&points, &times).unwrap()
    }

    #[test]
    fn moving_average_smooths_with_clamped_edges() {
        let input = line_1d(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        let out = moving_average_filter(&input, 1);
        let xs: Vec<f64> = out.points().map(|p| p[0]).collect();
        assert_eq!(xs, vec![0.5, 1.0, 2.0, 3.0, 3.5]);
        assert_eq!(out.timestamps(), input.timestamps());
    }

    #[test]
    fn moving_average_keeps_constant_trajectories_fixed() {
        let input = Trajectory::new(
            &[[2.0, -1.0, 3.0]; 6],
            &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0],
        )
        .unwrap();
        for alpha in 0..4 {
            let out = moving_average_filter(&input, alpha);
            for (a, b) in input.points().zip(out.points()) {
                assert_relative_eq!(a[0], b[0]);
                assert_relative_eq!(a[1], b[1]);
                assert_relative_eq!(a[2], b[2]);
            }
        }
    }

    #[test]
    fn moving_average_zero_is_identity() {
        let input = line_1d(&[3.0, 1.0, 4.0, 1.0, 5.0]);
        assert_eq!(moving_average_filter(&input, 0), input);
    }

    #[test]
    fn moving_average_window_wider_than_input_averages_everything() {
        let input = line_1d(&[0.0, 3.0, 6.0]);
        let out = moving_average_filter(&input, 10);
        for p in out.points() {
            assert_relative_eq!(p[0], 3.0);
        }
    }

    #[test]
    fn correlation_is_dimension_count_on_straight_uniform_motion() {
        // Perfect linear motion in every coordinate: each squared
        // correlation is 1, so the score is the dimension count everywhere.
        let points: Vec<[f64; 3]> = (0..10)
            .map(|i| [i as f64, 2.0 * i as f64, -0.5 * i as f64])
            .collect();
        let times: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let t = Trajectory::new(&points, &times).unwrap();
        for i in 0..t.len() {
            let score = correlation_coefficient(&t, 2, i).unwrap();
            assert_relative_eq!(score, 3.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn correlation_constant_coordinate_contributes_one() {
        // Motion along x only: the y term is degenerate and contributes 1.
        let points: Vec<[f64; 2]> = (0..7).map(|i| [i as f64, 5.0]).collect();
        let times: Vec<f64> = (0..7).map(|i| i as f64).collect();
        let t = Trajectory::new(&points, &times).unwrap();
        let score = correlation_coefficient(&t, 2, 3).unwrap();
        assert_relative_eq!(score, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn correlation_clamps_uncorrelated_coordinate() {
        // A symmetric corner: x retraces itself, so x and time are exactly
        // uncorrelated over the window and the clamp kicks in.
        let points = [
            [0.0, 0.0],
            [1.0, 1.0],
            [2.0, 2.0],
            [1.0, 3.0],
            [0.0, 4.0],
        ];
        let times = [0.0, 1.0, 2.0, 3.0, 4.0];
        let t = Trajectory::new(&points, &times).unwrap();
        let score = correlation_coefficient(&t, 2, 2).unwrap();
        // x contributes 1 / MIN_R_SQUARED, y is perfectly linear.
        assert_relative_eq!(score, 1.0 / MIN_R_SQUARED + 1.0, max_relative = 1e-9);
    }

    #[test]
    fn correlation_rejects_windows_below_three_points() {
        let t = line_1d(&[0.0, 1.0, 2.0, 3.0]);
        // beta = 1 leaves only two samples in the clamped edge window.
        assert_eq!(
            correlation_coefficient(&t, 1, 0),
            Err(SimplifyError::WindowTooSmall {
                index: 0,
                len: 2,
                min: 3,
            })
        );
        // Interior windows with beta = 1 have three samples and succeed.
        assert!(correlation_coefficient(&t, 1, 2).is_ok());
    }

    #[test]
    fn correlation_score_is_at_least_dimension() {
        let points = [
            [0.0, 0.0, 0.0],
            [1.0, 0.3, -0.2],
            [1.5, 1.1, 0.4],
            [1.2, 2.0, 0.9],
            [0.4, 2.2, 1.7],
            [0.1, 1.8, 2.5],
        ];
        let times = [0.0, 0.4, 1.1, 1.9, 2.4, 3.3];
        let t = Trajectory::new(&points, &times).unwrap();
        for i in 0..t.len() {
            let score = correlation_coefficient(&t, 2, i).unwrap();
            assert!(score.is_finite());
            assert!(score >= 3.0 - 1e-12, "score {score} below dimension at {i}");
        }
    }

    #[test]
    fn direction_scores_straight_right_angle_and_reversal() {
        let straight = line_1d(&[0.0, 1.0, 2.0]);
        assert_relative_eq!(direction_coefficient(&straight, 1), 0.5);

        let corner = Trajectory::new(
            &[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]],
            &[0.0, 1.0, 2.0],
        )
        .unwrap();
        assert_relative_eq!(direction_coefficient(&corner, 1), 1.0);

        let reversal = line_1d(&[0.0, 1.0, 0.0]);
        assert_relative_eq!(direction_coefficient(&reversal, 1), 1.0 / MIN_DIRECTION_DENOM);
    }

    #[test]
    fn direction_treats_pauses_as_straight() {
        let paused = Trajectory::new(
            &[[0.0, 0.0], [0.0, 0.0], [1.0, 1.0]],
            &[0.0, 1.0, 2.0],
        )
        .unwrap();
        assert_relative_eq!(direction_coefficient(&paused, 1), 0.5);
    }

    #[test]
    fn direction_assigns_zero_to_endpoints() {
        let t = line_1d(&[0.0, 1.0, 3.0, 6.0]);
        assert_eq!(direction_coefficient(&t, 0), 0.0);
        assert_eq!(direction_coefficient(&t, 3), 0.0);
    }

    #[test]
    fn direction_peaks_at_the_corner_of_an_l() {
        let mut points = Vec::new();
        for i in 0..6 {
            points.push([i as f64, 0.0]);
        }
        for j in 1..6 {
            points.push([5.0, j as f64]);
        }
        let times: Vec<f64> = (0..points.len()).map(|i| i as f64).collect();
        let t = Trajectory::new(&points, &times).unwrap();
        let params = SimplifyParams::new(0, 2, 2, CoefficientKind::Direction).unwrap();
        let coefs = compute_coefficients(&t, &params).unwrap();
        let corner = 5;
        let (best, _) = coefs
            .values()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        assert_eq!(best, corner);
    }

    #[test]
    fn coefficients_align_with_input_length() {
        let t = line_1d(&[0.0, 1.0, 4.0, 9.0, 16.0, 25.0]);
        for kind in [CoefficientKind::Correlation, CoefficientKind::Direction] {
            let params = SimplifyParams::new(0, 2, 1, kind).unwrap();
            let coefs = compute_coefficients(&t, &params).unwrap();
            assert_eq!(coefs.len(), t.len());
            assert!(coefs.values().iter().all(|v| v.is_finite() && *v >= 0.0));
        }
    }

    #[test]
    fn nms_keeps_window_maxima_and_endpoints() {
        let kept = nms_keep_indices(&[1.0, 3.0, 2.0, 5.0, 4.0], 1);
        assert_eq!(kept, vec![0, 1, 3, 4]);
    }

    #[test]
    fn nms_keeps_everything_on_uniform_scores() {
        let kept = nms_keep_indices(&[2.0; 7], 1);
        assert_eq!(kept, vec![0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn nms_keeps_both_points_of_a_minimal_input() {
        assert_eq!(nms_keep_indices(&[9.0, 1.0], 3), vec![0, 1]);
    }

    #[test]
    fn nms_does_not_duplicate_endpoints_that_are_also_maxima() {
        let kept = nms_keep_indices(&[5.0, 1.0, 1.0, 1.0, 5.0], 2);
        assert_eq!(kept, vec![0, 4]);
    }

    #[test]
    fn nms_kept_set_shrinks_as_gamma_grows() {
        // A window maximum over a wide window is also one over any narrower
        // window, so the kept set can only shrink when gamma grows.
        let coefs = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0, 5.0, 3.0, 5.0];
        let mut previous = nms_keep_indices(&coefs, 1);
        for gamma in 2..6 {
            let current = nms_keep_indices(&coefs, gamma);
            assert!(current.len() <= previous.len());
            assert!(current.iter().all(|i| previous.contains(i) || *i == 0));
            previous = current;
        }
    }

    #[test]
    fn select_points_takes_samples_from_the_filtered_trajectory() {
        let t = line_1d(&[0.0, 10.0, 0.0, 10.0, 0.0]);
        let coefs = CoefficientSeries::new(vec![0.0, 1.0, 0.0, 1.0, 0.0]);
        let result = select_points(&t, &coefs, 1);
        assert_eq!(result.kept_indices, vec![0, 1, 3, 4]);
        assert_eq!(result.simplified.len(), 4);
        assert_eq!(result.simplified.point(1), t.point(1));
        assert_eq!(result.simplified.timestamps(), &[0.0, 1.0, 3.0, 4.0]);
        assert_eq!(result.coefficients, coefs);
    }

    #[test]
    fn simplify_keeps_endpoints_and_is_deterministic() {
        let points: Vec<[f64; 2]> = (0..40)
            .map(|i| {
                let t = i as f64 * 0.25;
                [t.cos() * 3.0, t.sin() * 2.0]
            })
            .collect();
        let times: Vec<f64> = (0..40).map(|i| i as f64 * 0.25).collect();
        let input = Trajectory::new(&points, &times).unwrap();
        for kind in [CoefficientKind::Correlation, CoefficientKind::Direction] {
            let params = SimplifyParams::new(1, 2, 2, kind).unwrap();
            let a = simplify(&input, &params).unwrap();
            let b = simplify(&input, &params).unwrap();
            assert_eq!(a.kept_indices, b.kept_indices);
            assert_eq!(a.simplified, b.simplified);
            assert_eq!(a.kept_indices.first(), Some(&0));
            assert_eq!(a.kept_indices.last(), Some(&(input.len() - 1)));
            assert!(a.kept_indices.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn simplify_on_two_points_keeps_both() {
        let input = line_1d(&[0.0, 1.0]);
        let params = SimplifyParams::new(1, 2, 3, CoefficientKind::Direction).unwrap();
        let result = simplify(&input, &params).unwrap();
        assert_eq!(result.kept_indices, vec![0, 1]);
    }

    #[test]
    fn simplify_propagates_window_errors() {
        let input = line_1d(&[0.0, 1.0]);
        let params = SimplifyParams::new(0, 2, 1, CoefficientKind::Correlation).unwrap();
        assert!(matches!(
            simplify(&input, &params),
            Err(SimplifyError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn direction_scores_are_scale_invariant() {
        let points: Vec<[f64; 2]> = (0..30)
            .map(|i| {
                let t = i as f64 * 0.3;
                [t * t.cos(), t * t.sin()]
            })
            .collect();
        let times: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let base = Trajectory::new(&points, &times).unwrap();
        // Power-of-two scales rescale every intermediate exactly, so the
        // scores must be bit-identical, not merely close.
        for scale in [0.5, 2.0, 1024.0] {
            let scaled_points: Vec<[f64; 2]> =
                points.iter().map(|p| [p[0] * scale, p[1] * scale]).collect();
            let scaled = Trajectory::new(&scaled_points, &times).unwrap();
            for i in 0..base.len() {
                assert_eq!(
                    direction_coefficient(&base, i),
                    direction_coefficient(&scaled, i),
                );
            }
        }
    }
}
