//! Ollivier-Ricci curvature: one minus the transport cost between the
//! lazy walk measures at an edge's endpoints, relative to their distance.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::transport::{lazy_measure, wasserstein1};

/// Curvature of edge `e` with laziness `alpha`, using `d` both as the
/// transport ground metric and for the endpoint distance. Pass hop-count
/// distances in `d` to get the combinatorial normalization instead of the
/// weighted one.
pub fn ollivier_edge(g: &Graph, d: &DistanceMatrix, e: u32, alpha: f64) -> Result<f64> {
    let edge = &g.edges()[e as usize];
    let duv = d.get(edge.u, edge.v);
    if !duv.is_finite() || duv <= 0.0 {
        return Err(Error::Numerical(format!(
            "degenerate endpoint distance {} on edge {}-{}",
            duv,
            g.id(edge.u),
            g.id(edge.v)
        )));
    }
    let mu = lazy_measure(g, edge.u, alpha)?;
    let nu = lazy_measure(g, edge.v, alpha)?;
    let w1 = wasserstein1(&mu, &nu, d)?;
    Ok(1.0 - w1 / duv)
}

/// Curvature of every edge, in edge order.
pub fn ollivier_graph(g: &Graph, d: &DistanceMatrix, alpha: f64) -> Result<Vec<f64>> {
    (0..g.edge_count() as u32)
        .into_par_iter()
        .map(|e| ollivier_edge(g, d, e, alpha))
        .collect()
}
