//! Menger curvature: inverse circumradius of metric triangles, summed
//! over the triangles hanging off an edge.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Inverse circumradius of a triangle with side lengths `a`, `b`, `c`,
/// by Heron's formula. Degenerate (flat) triangles return 0; side
/// lengths that violate a triangle inequality outright are rejected.
pub fn menger_triangle(a: f64, b: f64, c: f64) -> Result<f64> {
    let sides = [a, b, c];
    if sides.iter().any(|&s| !s.is_finite() || s <= 0.0) {
        return Err(Error::Infeasible(format!("degenerate side lengths {:?}", sides)));
    }
    let p = 0.5 * (a + b + c);
    let tol = 1e-12 * p;
    for &s in &sides {
        if p - s < -tol {
            return Err(Error::Infeasible(format!(
                "triangle inequality violated for sides {:?}",
                sides
            )));
        }
    }
    let area2 = p * (p - a) * (p - b) * (p - c);
    if area2 <= 0.0 {
        return Ok(0.0);
    }
    Ok(4.0 * area2.sqrt() / (a * b * c))
}

/// Menger curvature of an edge: the sum of inverse circumradii of the
/// triangles through it, with side lengths read straight off the edge
/// weights. Triangles whose weights violate a triangle inequality
/// contribute zero, like flat ones.
pub fn menger_ricci(g: &Graph, e: u32) -> f64 {
    let edge = &g.edges()[e as usize];
    let (u, v, a) = (edge.u, edge.v, edge.weight);
    let mut total = 0.0;
    for &(z, b) in g.neighbors(u) {
        if z == v {
            continue;
        }
        if let Some(c) = g.edge_weight(v, z) {
            total += menger_triangle(a, b, c).unwrap_or(0.0);
        }
    }
    total
}

/// Menger curvature of every edge, in edge order.
pub fn menger_graph(g: &Graph) -> Vec<f64> {
    (0..g.edge_count() as u32).into_par_iter().map(|e| menger_ricci(g, e)).collect()
}
