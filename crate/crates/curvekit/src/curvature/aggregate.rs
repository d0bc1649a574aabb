//! Vertex summaries of edge curvature: plain incident means and the
//! weight-squared transport variant.

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

use super::ollivier::{ollivier_edge, ollivier_graph};

/// Mean curvature over the edges at `v`, taking per-edge values in edge
/// order. Isolated vertices have no mean to take.
pub fn scalar_from_edges(g: &Graph, edge_values: &[f64], v: u32) -> Result<f64> {
    if edge_values.len() != g.edge_count() {
        return Err(Error::Infeasible(format!(
            "{} edge values for {} edges",
            edge_values.len(),
            g.edge_count()
        )));
    }
    let deg = g.degree(v);
    if deg == 0 {
        return Err(Error::Infeasible(format!("vertex {} is isolated", g.id(v))));
    }
    let mut total = 0.0;
    for &(u, _) in g.neighbors(v) {
        let e = g.edge(v, u).expect("neighbor implies edge");
        total += edge_values[e as usize];
    }
    Ok(total / deg as f64)
}

/// Transport-based scalar curvature at `v`: the mean over incident edges
/// of weight-squared times the edge's transport curvature.
pub fn scalar_orc(g: &Graph, d: &DistanceMatrix, v: u32, alpha: f64) -> Result<f64> {
    let deg = g.degree(v);
    if deg == 0 {
        return Err(Error::Infeasible(format!("vertex {} is isolated", g.id(v))));
    }
    let mut total = 0.0;
    for &(u, w) in g.neighbors(v) {
        let e = g.edge(v, u).expect("neighbor implies edge");
        total += w * w * ollivier_edge(g, d, e, alpha)?;
    }
    Ok(total / deg as f64)
}

/// Transport-based scalar curvature of every vertex, computing each edge
/// curvature once.
pub fn scalar_orc_all(g: &Graph, d: &DistanceMatrix, alpha: f64) -> Result<Vec<f64>> {
    let kappa = ollivier_graph(g, d, alpha)?;
    let weighted: Vec<f64> = kappa
        .iter()
        .zip(g.edges())
        .map(|(&k, e)| e.weight * e.weight * k)
        .collect();
    let mut totals = vec![0.0; g.vertex_count()];
    for (value, edge) in weighted.iter().zip(g.edges()) {
        totals[edge.u as usize] += value;
        totals[edge.v as usize] += value;
    }
    (0..g.vertex_count() as u32)
        .map(|v| {
            let deg = g.degree(v);
            if deg == 0 {
                Err(Error::Infeasible(format!("vertex {} is isolated", g.id(v))))
            } else {
                Ok(totals[v as usize] / deg as f64)
            }
        })
        .collect()
}
