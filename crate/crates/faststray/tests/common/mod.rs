//! Shared helpers for the integration suites: independent reference
//! implementations (dense linear solve, brute-force scans) and random
//! input generators. Everything here is deliberately written from the
//! mathematical definitions rather than reusing library internals, so a
//! bug in the library cannot hide behind an oracle that shares its code.

#![allow(dead_code)] // each integration target pulls in a subset

use faststray::Trajectory;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Solves a dense linear system by Gaussian elimination with partial
/// pivoting. Panics on (numerically) singular input.
pub fn dense_solve(matrix: &[Vec<f64>], rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    assert_eq!(matrix.len(), n);
    let mut a: Vec<Vec<f64>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            assert_eq!(row.len(), n);
            let mut extended = row.clone();
            extended.push(b);
            extended
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        assert!(a[pivot_row][col].abs() > 1e-300, "singular dense system");
        a.swap(col, pivot_row);
        let (pivot_rows, elimination_rows) = a.split_at_mut(col + 1);
        let pivot = &pivot_rows[col];
        for row in elimination_rows {
            let factor = row[col] / pivot[col];
            for (dst, src) in row[col..=n].iter_mut().zip(&pivot[col..=n]) {
                *dst -= factor * src;
            }
        }
    }

    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut sum = a[row][n];
        for col in row + 1..n {
            sum -= a[row][col] * x[col];
        }
        x[row] = sum / a[row][row];
    }
    x
}

/// Solves a tridiagonal system expressed by its three bands via the
/// dense path above.
pub fn dense_solve_tridiagonal(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &[f64],
) -> Vec<f64> {
    let n = diag.len();
    assert_eq!(sub.len(), n.saturating_sub(1));
    assert_eq!(sup.len(), n.saturating_sub(1));
    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        matrix[i][i] = diag[i];
        if i > 0 {
            matrix[i][i - 1] = sub[i - 1];
        }
        if i + 1 < n {
            matrix[i][i + 1] = sup[i];
        }
    }
    dense_solve(&matrix, rhs)
}

/// Second derivatives of the natural cubic spline through `(times, values)`,
/// obtained from the full dense system: identity rows at both ends (zero
/// end curvature) and the standard continuity rows between them.
pub fn reference_second_derivatives(times: &[f64], values: &[f64]) -> Vec<f64> {
    let m = times.len();
    assert!(m >= 2);
    assert_eq!(values.len(), m);
    let mut matrix = vec![vec![0.0; m]; m];
    let mut rhs = vec![0.0; m];
    matrix[0][0] = 1.0;
    matrix[m - 1][m - 1] = 1.0;
    for k in 1..m - 1 {
        let h_prev = times[k] - times[k - 1];
        let h_next = times[k + 1] - times[k];
        matrix[k][k - 1] = h_prev;
        matrix[k][k] = 2.0 * (h_prev + h_next);
        matrix[k][k + 1] = h_next;
        rhs[k] = 6.0
            * ((values[k + 1] - values[k]) / h_next - (values[k] - values[k - 1]) / h_prev);
    }
    dense_solve(&matrix, &rhs)
}

/// Evaluates the natural cubic spline defined by `(times, values)` at `t`,
/// built directly from the reference second derivatives. Independent of
/// the library's piece representation.
pub fn reference_spline_value(times: &[f64], values: &[f64], t: f64) -> f64 {
    let m2 = reference_second_derivatives(times, values);
    let m = times.len();
    // Pick the piece whose [t_k, t_{k+1}] contains t, extending the
    // boundary pieces outward.
    let mut k = 0;
    while k + 2 < m && t >= times[k + 1] {
        k += 1;
    }
    let h = times[k + 1] - times[k];
    let dt = t - times[k];
    let a = values[k];
    let b = (values[k + 1] - values[k]) / h - h * (2.0 * m2[k] + m2[k + 1]) / 6.0;
    let c = m2[k] / 2.0;
    let e = (m2[k + 1] - m2[k]) / (6.0 * h);
    ((e * dt + c) * dt + b) * dt + a
}

/// Keeps indices by the window-maximum rule, written as a direct scan:
/// both endpoints always survive, and an interior index survives exactly
/// when its value equals the maximum over the index window clamped to the
/// array.
pub fn brute_force_window_max_keep(values: &[f64], gamma: usize) -> Vec<usize> {
    let n = values.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut kept = Vec::new();
    for i in 0..n {
        if i == 0 || i == n - 1 {
            kept.push(i);
            continue;
        }
        let lo = i.saturating_sub(gamma);
        let hi = (i + gamma).min(n - 1);
        let window_max = values[lo..=hi]
            .iter()
            .fold(f64::NEG_INFINITY, |acc, &v| acc.max(v));
        if values[i] == window_max {
            kept.push(i);
        }
    }
    kept
}

/// Largest pairwise point distance, by the full quadratic scan with no
/// shortcuts.
pub fn brute_force_diameter(trajectory: &Trajectory) -> f64 {
    let mut best_sq: f64 = 0.0;
    for i in 0..trajectory.len() {
        for j in i + 1..trajectory.len() {
            let d: f64 = trajectory
                .point(i)
                .iter()
                .zip(trajectory.point(j))
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            best_sq = best_sq.max(d);
        }
    }
    best_sq.sqrt()
}

/// Mean over the window of half-width `alpha` around `index`, clamped to
/// the array, computed naively.
pub fn brute_force_window_mean(values: &[f64], alpha: usize, index: usize) -> f64 {
    let lo = index.saturating_sub(alpha);
    let hi = (index + alpha).min(values.len() - 1);
    let window = &values[lo..=hi];
    window.iter().sum::<f64>() / window.len() as f64
}

/// Pearson correlation between two equal-length slices, straight from the
/// textbook definition with explicit means.
pub fn textbook_pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let mean_a = a.iter().sum::<f64>() / n;
    let mean_b = b.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        cov += (x - mean_a) * (y - mean_b);
        var_a += (x - mean_a) * (x - mean_a);
        var_b += (y - mean_b) * (y - mean_b);
    }
    cov / (var_a.sqrt() * var_b.sqrt())
}

/// Seeded generator for reproducible random inputs.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random-walk trajectory: strictly increasing jittered timestamps and
/// positions that drift by bounded random steps, so windows always have
/// real variance.
pub fn random_walk_trajectory(rng: &mut ChaCha8Rng, len: usize, dim: usize) -> Trajectory {
    assert!((2..=3).contains(&dim));
    let mut times = Vec::with_capacity(len);
    let mut t = 0.0;
    for _ in 0..len {
        times.push(t);
        t += rng.gen_range(0.05..0.3);
    }
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(len);
    let mut position = vec![0.0; dim];
    for _ in 0..len {
        rows.push(position.clone());
        for value in &mut position {
            *value += rng.gen_range(-1.0..1.5);
        }
    }
    Trajectory::new(&rows, &times).unwrap()
}

/// Random strictly increasing knot vector starting at 0.
pub fn random_knots(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut times = Vec::with_capacity(len);
    let mut t = 0.0;
    for _ in 0..len {
        times.push(t);
        t += rng.gen_range(0.1..2.0);
    }
    times
}
