//! Natural cubic splines over simplified trajectories, backed by a linear
//! tridiagonal solver.
//!
//! Fitting solves one tridiagonal system per coordinate for the second
//! derivatives at the knots, with zero second derivatives at both ends.
//! That system is strictly diagonally dominant, so the forward-elimination
//! solve never needs pivoting.

use thiserror::Error;

use crate::trajectory::Trajectory;

/// Pivots smaller than this abort the solve: the system is numerically
/// singular and the back-substitution would amplify noise unboundedly.
pub const SINGULAR_PIVOT: f64 = 1e-14;

/// Failures while fitting or solving.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplineError {
    #[error("tridiagonal system is numerically singular at row {row} (pivot {pivot:e})")]
    SingularSystem { row: usize, pivot: f64 },
}

/// A tridiagonal linear system `A x = rhs` with `diag` on the main
/// diagonal, `sub` below it, and `sup` above it.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    /// Bundles the bands of an `n x n` system; `sub` and `sup` carry `n - 1`
    /// entries each.
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>, rhs: Vec<f64>) -> Self {
        let n = diag.len();
        assert!(n >= 1, "system must have at least one row");
        assert_eq!(sub.len(), n - 1, "sub-diagonal must have n - 1 entries");
        assert_eq!(sup.len(), n - 1, "super-diagonal must have n - 1 entries");
        assert_eq!(rhs.len(), n, "right-hand side must have n entries");
        Self {
            sub,
            diag,
            sup,
            rhs,
        }
    }

    /// Solves the system in one forward elimination and one back
    /// substitution, linear in the row count.
    ///
    /// Rejects near-zero pivots instead of pivoting; the spline systems this
    /// library builds are diagonally dominant and never trigger that.
    pub fn solve(&self) -> Result<Vec<f64>, SplineError> {
        let n = self.diag.len();
        let mut factors = vec![0.0; n];
        let mut x = vec![0.0; n];

        let mut pivot = self.diag[0];
        if pivot.abs() < SINGULAR_PIVOT {
            return Err(SplineError::SingularSystem { row: 0, pivot });
        }
        if n > 1 {
            factors[0] = self.sup[0] / pivot;
        }
        x[0] = self.rhs[0] / pivot;

        for i in 1..n {
            pivot = self.diag[i] - self.sub[i - 1] * factors[i - 1];
            if pivot.abs() < SINGULAR_PIVOT {
                return Err(SplineError::SingularSystem { row: i, pivot });
            }
            if i < n - 1 {
                factors[i] = self.sup[i] / pivot;
            }
            x[i] = (self.rhs[i] - self.sub[i - 1] * x[i - 1]) / pivot;
        }

        for i in (0..n - 1).rev() {
            x[i] -= factors[i] * x[i + 1];
        }
        Ok(x)
    }
}

/// A natural cubic spline through a trajectory's samples, one polynomial
/// piece per knot interval and per coordinate.
///
/// The curve interpolates every sample, has continuous first and second
/// derivatives, and has zero second derivative at both ends. Outside the
/// knot range it extends the first or last piece.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    knots: Vec<f64>,
    /// `pieces[d][k]` holds `[a, b, c, e]` with
    /// `p(t) = a + b dt + c dt^2 + e dt^3`, `dt = t - knots[k]`.
    pieces: Vec<Vec<[f64; 4]>>,
}

impl CubicSpline {
    /// Fits a natural cubic spline through every sample of `kept`, using its
    /// timestamps as knots.
    ///
    /// The solve cannot fail for a valid trajectory (strictly increasing
    /// knots give a diagonally dominant system), but the error is propagated
    /// rather than asserted away.
    pub fn fit(kept: &Trajectory) -> Result<Self, SplineError> {
        let m = kept.len();
        let knots = kept.timestamps().to_vec();
        let gaps: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();

        let mut pieces = Vec::with_capacity(kept.dim());
        for d in 0..kept.dim() {
            let values: Vec<f64> = kept.points().map(|p| p[d]).collect();
            let accel = Self::second_derivatives(&knots, &gaps, &values)?;
            let mut dim_pieces = Vec::with_capacity(m - 1);
            for k in 0..m - 1 {
                let h = gaps[k];
                dim_pieces.push([
                    values[k],
                    (values[k + 1] - values[k]) / h - h * (2.0 * accel[k] + accel[k + 1]) / 6.0,
                    accel[k] / 2.0,
                    (accel[k + 1] - accel[k]) / (6.0 * h),
                ]);
            }
            pieces.push(dim_pieces);
        }
        Ok(Self { knots, pieces })
    }

    /// Second derivatives at the knots: zero at both ends, interior values
    /// from the usual continuity conditions between neighboring pieces.
    fn second_derivatives(
        knots: &[f64],
        gaps: &[f64],
        values: &[f64],
    ) -> Result<Vec<f64>, SplineError> {
        let m = knots.len();
        let mut sub = vec![0.0; m - 1];
        let mut diag = vec![1.0; m];
        let mut sup = vec![0.0; m - 1];
        let mut rhs = vec![0.0; m];
        for i in 1..m - 1 {
            sub[i - 1] = gaps[i - 1];
            diag[i] = 2.0 * (gaps[i - 1] + gaps[i]);
            sup[i] = gaps[i];
            rhs[i] = 6.0
                * ((values[i + 1] - values[i]) / gaps[i]
                    - (values[i] - values[i - 1]) / gaps[i - 1]);
        }
        TridiagonalSystem::new(sub, diag, sup, rhs).solve()
    }

    /// Knot timestamps, strictly increasing.
    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Spatial dimension of the curve.
    pub fn dim(&self) -> usize {
        self.pieces.len()
    }

    /// Index of the piece evaluated at `t`: the piece whose left knot is the
    /// last one at or before `t`, clamped so out-of-range times extend the
    /// boundary pieces.
    fn piece_index(&self, t: f64) -> usize {
        let idx = self.knots.partition_point(|&k| k <= t);
        idx.saturating_sub(1).min(self.knots.len() - 2)
    }

    fn eval_piece(&self, k: usize, t: f64) -> Vec<f64> {
        let dt = t - self.knots[k];
        self.pieces
            .iter()
            .map(|dim| {
                let [a, b, c, e] = dim[k];
                ((e * dt + c) * dt + b) * dt + a
            })
            .collect()
    }

    /// Position of the curve at `t`.
    pub fn evaluate(&self, t: f64) -> Vec<f64> {
        self.eval_piece(self.piece_index(t), t)
    }

    /// Positions at many times in one sweep.
    ///
    /// `times` must be sorted ascending; the sweep then visits each piece at
    /// most once and returns exactly what [`CubicSpline::evaluate`] returns
    /// at every time, bit for bit.
    pub fn evaluate_batch(&self, times: &[f64]) -> Vec<Vec<f64>> {
        debug_assert!(
            times.windows(2).all(|w| w[0] <= w[1]),
            "evaluate_batch requires sorted times"
        );
        let last = self.knots.len() - 2;
        let mut k = 0;
        times
            .iter()
            .map(|&t| {
                while k < last && self.knots[k + 1] <= t {
                    k += 1;
                }
                self.eval_piece(k, t)
            })
            .collect()
    }

    /// Second derivative of the curve at `t`, one value per coordinate.
    pub fn second_derivative(&self, t: f64) -> Vec<f64> {
        let k = self.piece_index(t);
        let dt = t - self.knots[k];
        self.pieces
            .iter()
            .map(|dim| {
                let [_, _, c, e] = dim[k];
                2.0 * c + 6.0 * e * dt
            })
            .collect()
    }

    /// First derivative of the curve at `t`, one value per coordinate.
    pub fn derivative(&self, t: f64) -> Vec<f64> {
        let k = self.piece_index(t);
        let dt = t - self.knots[k];
        self.pieces
            .iter()
            .map(|dim| {
                let [_, b, c, e] = dim[k];
                (3.0 * e * dt + 2.0 * c) * dt + b
            })
            .collect()
    }
}
