//! Haantjes curvature: how much longer arcs between two endpoints are
//! than the straight-line distance, summed over simple detours around an
//! edge.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Default bound on detour length, in hops.
pub const DEFAULT_MAX_LEN: usize = 4;

/// Hard ceiling on the detour length; the simple-path count explodes
/// beyond this.
pub const MAX_LEN_LIMIT: usize = 8;

/// Haantjes curvature of one arc: sqrt((l - d) / d^3) where l is the
/// summed weight along the path and d the shortest-path distance between
/// its endpoints.
pub fn haantjes_path(g: &Graph, d: &DistanceMatrix, path: &[u32]) -> Result<f64> {
    if path.len() < 2 {
        return Err(Error::Infeasible("path needs at least two vertices".into()));
    }
    if path.first() == path.last() {
        return Err(Error::Infeasible("path endpoints coincide".into()));
    }
    let mut l = 0.0;
    for pair in path.windows(2) {
        match g.edge_weight(pair[0], pair[1]) {
            Some(w) => l += w,
            None => {
                return Err(Error::Infeasible(format!(
                    "no edge {}-{} along the path",
                    g.id(pair[0]),
                    g.id(pair[1])
                )))
            }
        }
    }
    let dist = d.get(path[0], *path.last().expect("nonempty"));
    // The path itself connects the endpoints, so dist is finite and at
    // most l; excess can only be negative through rounding.
    let excess = (l - dist).max(0.0);
    Ok((excess / dist.powi(3)).sqrt())
}

/// Haantjes curvature of an edge: the summed arc curvature over simple
/// detours between its endpoints of 2 to `max_len` hops, the direct edge
/// excluded. Monotone in `max_len`.
pub fn haantjes_ricci(g: &Graph, d: &DistanceMatrix, e: u32, max_len: usize) -> Result<f64> {
    if !(2..=MAX_LEN_LIMIT).contains(&max_len) {
        return Err(Error::Infeasible(format!(
            "max_len must be in 2..={}, got {}",
            MAX_LEN_LIMIT, max_len
        )));
    }
    let edge = &g.edges()[e as usize];
    let (u, v) = (edge.u, edge.v);
    let mut total = 0.0;
    let mut on_path = vec![false; g.vertex_count()];
    on_path[u as usize] = true;
    let mut stack = vec![u];
    detours(g, d, v, max_len, &mut stack, &mut on_path, &mut total)?;
    Ok(total)
}

/// Depth-first enumeration of simple paths from the stack tip to
/// `target`, accumulating arc curvatures. Neighbor order follows the
/// adjacency lists, so the summation order is reproducible.
fn detours(
    g: &Graph,
    d: &DistanceMatrix,
    target: u32,
    max_len: usize,
    stack: &mut Vec<u32>,
    on_path: &mut [bool],
    total: &mut f64,
) -> Result<()> {
    let tip = *stack.last().expect("stack starts nonempty");
    let depth = stack.len() - 1;
    for &(z, _) in g.neighbors(tip) {
        if z == target {
            if depth + 1 >= 2 {
                stack.push(z);
                *total += haantjes_path(g, d, stack)?;
                stack.pop();
            }
            continue;
        }
        if depth + 1 < max_len && !on_path[z as usize] {
            on_path[z as usize] = true;
            stack.push(z);
            detours(g, d, target, max_len, stack, on_path, total)?;
            stack.pop();
            on_path[z as usize] = false;
        }
    }
    Ok(())
}

/// Haantjes curvature of every edge, in edge order.
pub fn haantjes_graph(g: &Graph, d: &DistanceMatrix, max_len: usize) -> Result<Vec<f64>> {
    (0..g.edge_count() as u32)
        .into_par_iter()
        .map(|e| haantjes_ricci(g, d, e, max_len))
        .collect()
}
