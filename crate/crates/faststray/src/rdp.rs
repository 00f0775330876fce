//! Ramer-Douglas-Peucker baseline simplifier.
//!
//! Classic distance-threshold simplification, used as the comparison
//! baseline: it keeps a point whenever dropping it would leave some sample
//! farther than `epsilon` from the chord of its enclosing kept segment.

use crate::trajectory::{CoefficientSeries, SimplifyResult, Trajectory};

/// Squared distance from `p` to the segment `a..b` in 2 or 3 dimensions.
/// Degenerate segments fall back to the distance to `a`.
fn point_segment_distance_sq(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let mut seg_len_sq = 0.0;
    let mut along = 0.0;
    for d in 0..p.len() {
        let seg = b[d] - a[d];
        seg_len_sq += seg * seg;
        along += (p[d] - a[d]) * seg;
    }
    let t = if seg_len_sq == 0.0 {
        0.0
    } else {
        (along / seg_len_sq).clamp(0.0, 1.0)
    };
    let mut dist_sq = 0.0;
    for d in 0..p.len() {
        let closest = a[d] + t * (b[d] - a[d]);
        let diff = p[d] - closest;
        dist_sq += diff * diff;
    }
    dist_sq
}

/// Simplifies `input` with the Ramer-Douglas-Peucker rule at threshold
/// `epsilon` (meters). Negative thresholds behave like 0.
///
/// Endpoints are always kept. Every dropped point lies within `epsilon` of
/// the chord between the kept points that enclose it. Ties for the farthest
/// point resolve to the lowest index, and the recursion runs on an explicit
/// stack, so arbitrarily deep splits cannot overflow.
///
/// The result's score series is all zeros: this baseline ranks points by
/// distance, not by an information score.
pub fn rdp_simplify(input: &Trajectory, epsilon: f64) -> SimplifyResult {
    let n = input.len();
    let epsilon_sq = epsilon.max(0.0).powi(2);
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[n - 1] = true;

    let mut stack = vec![(0usize, n - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo < 2 {
            continue;
        }
        let a = input.point(lo);
        let b = input.point(hi);
        let mut best_index = lo + 1;
        let mut best_dist_sq = f64::NEG_INFINITY;
        for i in lo + 1..hi {
            let dist_sq = point_segment_distance_sq(input.point(i), a, b);
            if dist_sq > best_dist_sq {
                best_dist_sq = dist_sq;
                best_index = i;
            }
        }
        if best_dist_sq > epsilon_sq {
            keep[best_index] = true;
            stack.push((lo, best_index));
            stack.push((best_index, hi));
        }
    }

    let kept_indices: Vec<usize> = (0..n).filter(|&i| keep[i]).collect();
    let simplified = input.subset(&kept_indices);
    SimplifyResult {
        simplified,
        kept_indices,
        coefficients: CoefficientSeries::new(vec![0.0; n]),
    }
}
