//! Sampling plans on `(0, 1)` for scans of `M(x, 1)`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Relative slack below which a strict inequality is still counted as holding.
pub const STRICT_SLACK: f64 = 1e-13;

/// Default number of points for chain and conjecture scans.
pub const DEFAULT_SAMPLES: usize = 2000;

/// Sorted, de-duplicated abscissae in `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSummary {
    pub points: usize,
    pub min: f64,
    pub max: f64,
}

impl Grid {
    pub fn from_points(mut points: Vec<f64>) -> Result<Grid> {
        if points.iter().any(|x| !(*x > 0.0 && *x < 1.0)) {
            return Err(Error::Domain("grid points must lie in (0, 1)".into()));
        }
        points.sort_by(f64::total_cmp);
        points.dedup();
        Ok(Grid { points })
    }

    /// `n` points on `[1e-6, 1 - 1e-6]`, log-spaced towards both ends:
    /// half as `x = 10^-k`, half as `x = 1 - 10^-k`, meeting at `x = 1/2`.
    pub fn blended(n: usize) -> Result<Grid> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "a blended grid needs at least 2 points, got {n}"
            )));
        }
        let k_mid = 2f64.log10();
        let k_max = 6.0;
        let n_lo = n / 2;
        let n_hi = n - n_lo;
        let mut points = Vec::with_capacity(n);
        for i in 0..n_lo {
            let k = k_max - i as f64 * (k_max - k_mid) / n_lo as f64;
            points.push(10f64.powf(-k));
        }
        for i in 0..n_hi {
            let k = if n_hi == 1 {
                k_max
            } else {
                k_mid + i as f64 * (k_max - k_mid) / (n_hi - 1) as f64
            };
            points.push(1.0 - 10f64.powf(-k));
        }
        Grid::from_points(points)
    }

    /// `x = 1 - 10^(-k/4)` for `k = 1..=48`, where sharpness failures concentrate.
    pub fn diagonal_refined() -> Grid {
        let points = (1..=48)
            .map(|k| 1.0 - 10f64.powf(-(k as f64) / 4.0))
            .collect();
        Grid::from_points(points).expect("inside (0, 1)")
    }

    /// Evenly spaced interior points `i / (n + 1)`.
    pub fn uniform(n: usize) -> Grid {
        let points = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
        Grid::from_points(points).expect("inside (0, 1)")
    }

    pub fn merge(&self, other: &Grid) -> Grid {
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points);
        Grid::from_points(points).expect("already validated")
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn summary(&self) -> GridSummary {
        GridSummary {
            points: self.points.len(),
            min: self.points.first().copied().unwrap_or(f64::NAN),
            max: self.points.last().copied().unwrap_or(f64::NAN),
        }
    }
}
