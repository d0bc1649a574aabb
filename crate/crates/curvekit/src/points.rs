//! Point clouds and distance-matrix input for the metric-space operations.

use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;

/// A finite point cloud in `R^dim`, stored row-major.
#[derive(Debug, Clone)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || coords.len() % dim != 0 {
            return Err(Error::Infeasible(format!(
                "coordinate buffer of length {} is not a multiple of dimension {}",
                coords.len(),
                dim
            )));
        }
        Ok(PointCloud { dim, coords })
    }

    /// Parses numeric CSV, one point per row, `#` starting a comment line.
    /// A non-numeric first row is treated as a header and skipped. Every
    /// data row must have the same number of columns.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut dim = None;
        let mut coords = Vec::new();
        let mut first_data_line = true;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if first_data_line {
                first_data_line = false;
                if line.split(',').any(|f| f.trim().parse::<f64>().is_err()) {
                    continue;
                }
            }
            let row: Vec<f64> = line
                .split(',')
                .map(|f| {
                    f.trim().parse::<f64>().map_err(|_| {
                        Error::Parse(format!("line {}: bad coordinate {:?}", lineno + 1, f))
                    })
                })
                .collect::<Result<_>>()?;
            match dim {
                None => dim = Some(row.len()),
                Some(d) if d != row.len() => {
                    return Err(Error::Parse(format!(
                        "line {}: expected {} columns, got {}",
                        lineno + 1,
                        d,
                        row.len()
                    )))
                }
                _ => {}
            }
            coords.extend(row);
        }
        match dim {
            Some(d) if d > 0 => PointCloud::new(d, coords),
            _ => Err(Error::Parse("empty point cloud".into())),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Dense Euclidean distance matrix of the cloud.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        DistanceMatrix::from_fn(self.len(), |i, j| {
            euclidean(self.point(i), self.point(j))
        })
    }
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Parses a square distance matrix from numeric CSV and validates it:
/// nonnegative entries, zero diagonal, symmetric within 1e-9.
pub fn distance_matrix_from_csv(text: &str) -> Result<DistanceMatrix> {
    let cloud = PointCloud::from_csv(text)?;
    let n = cloud.len();
    if cloud.dim() != n {
        return Err(Error::Parse(format!(
            "distance matrix must be square, got {} rows x {} columns",
            n,
            cloud.dim()
        )));
    }
    for i in 0..n {
        if cloud.point(i)[i].abs() > 1e-12 {
            return Err(Error::Parse(format!("nonzero diagonal at row {}", i)));
        }
        for j in 0..n {
            let dij = cloud.point(i)[j];
            if dij < 0.0 {
                return Err(Error::Parse(format!("negative distance at ({}, {})", i, j)));
            }
            if (dij - cloud.point(j)[i]).abs() > 1e-9 {
                return Err(Error::Parse(format!("asymmetric entries at ({}, {})", i, j)));
            }
        }
    }
    Ok(DistanceMatrix::from_fn(n, |i, j| {
        // Average the two triangles so the result is exactly symmetric.
        0.5 * (cloud.point(i)[j] + cloud.point(j)[i])
    }))
}
