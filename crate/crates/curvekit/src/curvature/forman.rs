//! Forman curvature for graph edges and for simplices of a complex, in
//! weighted and unweighted (combinatorial) forms.

use rayon::prelude::*;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Weighted Forman curvature of one edge. With unit weights this reduces
/// to `4 - deg(u) - deg(v)`.
pub fn forman_edge(g: &Graph, e: u32) -> f64 {
    let edge = &g.edges()[e as usize];
    let (v1, v2, we) = (edge.u, edge.v, edge.weight);
    let wv1 = g.vertex_weight(v1);
    let wv2 = g.vertex_weight(v2);
    let mut spill = 0.0;
    for &(x, wex) in g.neighbors(v1) {
        if x != v2 {
            spill += wv1 / (we * wex).sqrt();
        }
    }
    for &(x, wex) in g.neighbors(v2) {
        if x != v1 {
            spill += wv2 / (we * wex).sqrt();
        }
    }
    we * (wv1 / we + wv2 / we - spill)
}

/// Weighted Forman curvature of every edge, in edge order.
pub fn forman_graph(g: &Graph) -> Vec<f64> {
    (0..g.edge_count() as u32).into_par_iter().map(|e| forman_edge(g, e)).collect()
}

/// Combinatorial Forman curvature of a simplex: faces plus cofaces minus
/// parallel neighbors.
pub fn forman_simplex_unweighted(k: &SimplicialComplex, simplex: &[u32]) -> Result<f64> {
    let inc = k.incidence(simplex)?;
    Ok(inc.faces.len() as f64 + inc.cofaces.len() as f64 - inc.parallel.len() as f64)
}

/// Weighted Forman curvature of a 1-simplex. Other dimensions are
/// rejected; the weighted form is defined on edges.
pub fn forman_simplex_weighted(k: &SimplicialComplex, simplex: &[u32]) -> Result<f64> {
    if simplex.len() != 2 {
        return Err(Error::Infeasible(format!(
            "weighted simplicial curvature needs an edge, got dimension {}",
            simplex.len().saturating_sub(1)
        )));
    }
    let inc = k.incidence(simplex)?;
    let we = k.weight(simplex).ok_or_else(|| {
        Error::Infeasible(format!("no such simplex {:?}", simplex))
    })?;

    let mut direct = 0.0;
    for f in &inc.cofaces {
        direct += we / k.weight(f).expect("coface is present");
    }
    for v in &inc.faces {
        direct += k.weight(v).expect("face is present") / we;
    }

    let mut across = 0.0;
    for other in &inc.parallel {
        let wo = k.weight(other).expect("parallel neighbor is present");
        // Triangles holding both edges and vertices shared by both edges.
        // Downward closure makes the first sum empty (a common coface
        // would cancel parallelism), but the formula keeps both terms.
        let mut common_cofaces = 0.0;
        for f in &inc.cofaces {
            if other.iter().all(|v| f.contains(v)) {
                common_cofaces += (we * wo).sqrt() / k.weight(f).expect("coface is present");
            }
        }
        let mut common_vertices = 0.0;
        for v in simplex {
            if other.contains(v) {
                common_vertices += k.weight(&[*v]).expect("vertex is present") / (we * wo).sqrt();
            }
        }
        across += (common_cofaces - common_vertices).abs();
    }
    Ok(we * (direct - across))
}

/// Combinatorial curvature of every simplex, one vector per dimension.
pub fn forman_complex_unweighted(k: &SimplicialComplex) -> Result<Vec<Vec<f64>>> {
    let top = match k.max_dim() {
        Some(d) => d,
        None => return Ok(Vec::new()),
    };
    (0..=top)
        .map(|dim| {
            k.simplices(dim)
                .par_iter()
                .map(|s| forman_simplex_unweighted(k, s))
                .collect::<Result<Vec<f64>>>()
        })
        .collect()
}

/// Weighted curvature of every 1-simplex, in storage order.
pub fn forman_complex_weighted(k: &SimplicialComplex) -> Result<Vec<f64>> {
    k.simplices(1)
        .par_iter()
        .map(|s| forman_simplex_weighted(k, s))
        .collect()
}
