//! Scalar curvature estimates for point clouds, from how fast metric
//! balls gain points compared to Euclidean balls.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;

/// How many radii the automatic ladder uses.
pub const DEFAULT_RADII_COUNT: usize = 8;

/// Volume of the Euclidean unit ball in `n` dimensions, in closed form.
pub fn unit_ball_volume(n: usize) -> Result<f64> {
    if n == 0 || n > 170 {
        return Err(Error::Infeasible(format!("unsupported dimension {}", n)));
    }
    let pi = std::f64::consts::PI;
    if n % 2 == 0 {
        // pi^(n/2) / (n/2)!
        let half = n / 2;
        let mut v = 1.0;
        for k in 1..=half {
            v *= pi / k as f64;
        }
        Ok(v)
    } else {
        // 2^((n+1)/2) pi^((n-1)/2) / n!!
        let mut v = 2.0;
        let mut k = 3;
        while k <= n {
            v *= 2.0 * pi / k as f64;
            k += 2;
        }
        Ok(v)
    }
}

/// Ball-counting measurements around one point: for each radius, the
/// fraction of points inside relative to the Euclidean ball volume.
#[derive(Debug, Clone)]
pub struct BallVolumeProfile {
    pub radii: Vec<f64>,
    pub ratios: Vec<f64>,
}

/// Measures the density ratio count / (N v_n r^n) at each radius around
/// point `x`. The count includes `x` itself. Radii must be positive,
/// finite, and strictly increasing.
pub fn ball_volume_profile(
    d: &DistanceMatrix,
    x: u32,
    radii: &[f64],
    n: usize,
) -> Result<BallVolumeProfile> {
    if radii.is_empty() {
        return Err(Error::Infeasible("no radii".into()));
    }
    if radii.iter().any(|&r| !r.is_finite() || r <= 0.0)
        || radii.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::Infeasible(format!(
            "radii must be positive and strictly increasing: {:?}",
            radii
        )));
    }
    let vn = unit_ball_volume(n)?;
    let total = d.len() as f64;
    let row = d.row(x);
    let ratios = radii
        .iter()
        .map(|&r| {
            let count = row.iter().filter(|&&dist| dist <= r).count();
            count as f64 / (total * vn * r.powi(n as i32))
        })
        .collect();
    Ok(BallVolumeProfile { radii: radii.to_vec(), ratios })
}

/// Scalar curvature estimate at `x`: fit ratio(r) = c0 + c1 r^2 by least
/// squares over at least three radii and return -6 (n + 2) c1 / c0.
pub fn scalar_estimate(d: &DistanceMatrix, x: u32, radii: &[f64], n: usize) -> Result<f64> {
    if radii.len() < 3 {
        return Err(Error::Infeasible(format!(
            "need at least 3 radii for the quadratic fit, got {}",
            radii.len()
        )));
    }
    let profile = ball_volume_profile(d, x, radii, n)?;
    let m = radii.len() as f64;
    let (mut s1, mut s2, mut t0, mut t1) = (0.0, 0.0, 0.0, 0.0);
    for (&r, &y) in profile.radii.iter().zip(&profile.ratios) {
        let r2 = r * r;
        s1 += r2;
        s2 += r2 * r2;
        t0 += y;
        t1 += y * r2;
    }
    let det = m * s2 - s1 * s1;
    if det <= 1e-12 * m * s2 {
        return Err(Error::Numerical("radius ladder is degenerate for the fit".into()));
    }
    let c0 = (s2 * t0 - s1 * t1) / det;
    let c1 = (m * t1 - s1 * t0) / det;
    if !(c0 > 0.0) {
        return Err(Error::Numerical(format!(
            "nonpositive density intercept {} at point {}",
            c0, x
        )));
    }
    Ok(-6.0 * (n as f64 + 2.0) * c1 / c0)
}

/// The automatic radius ladder at `x`: geometric steps between the 5th
/// and 25th percentiles of the distances from `x` to the other points.
pub fn default_radii(d: &DistanceMatrix, x: u32, count: usize) -> Result<Vec<f64>> {
    if count < 3 {
        return Err(Error::Infeasible(format!("need at least 3 radii, got {}", count)));
    }
    let mut dists: Vec<f64> = d
        .row(x)
        .iter()
        .copied()
        .filter(|&v| v > 0.0 && v.is_finite())
        .collect();
    if dists.len() < 2 {
        return Err(Error::Infeasible(format!(
            "point {} has too few neighbors for a radius ladder",
            x
        )));
    }
    dists.sort_by(f64::total_cmp);
    let lo = percentile(&dists, 0.05);
    let hi = percentile(&dists, 0.25);
    if !(hi > lo) {
        return Err(Error::Infeasible(format!(
            "degenerate distance spread at point {}: {} to {}",
            x, lo, hi
        )));
    }
    let factor = hi / lo;
    Ok((0..count)
        .map(|k| lo * factor.powf(k as f64 / (count - 1) as f64))
        .collect())
}

/// Nearest-rank percentile of sorted data.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let rank = (q * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

/// Radius choice for a whole-cloud pass.
#[derive(Debug, Clone)]
pub enum RadiiSpec {
    /// Per-point percentile ladder with `DEFAULT_RADII_COUNT` rungs.
    Auto,
    /// One shared ladder for every point.
    Fixed(Vec<f64>),
}

/// Scalar curvature at every point. Returns one estimate per point, in
/// index order.
pub fn scalar_field(d: &DistanceMatrix, n: usize, spec: &RadiiSpec) -> Result<Vec<f64>> {
    (0..d.len() as u32)
        .into_par_iter()
        .map(|x| match spec {
            RadiiSpec::Auto => {
                let radii = default_radii(d, x, DEFAULT_RADII_COUNT)?;
                scalar_estimate(d, x, &radii, n)
            }
            RadiiSpec::Fixed(radii) => scalar_estimate(d, x, radii, n),
        })
        .collect()
}
