//! Discrete Ricci flow on edge weights: repeatedly shrink positively
//! curved edges and stretch negatively curved ones.

use crate::curvature::ollivier_graph;
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// The weight floor is this fraction of the mean initial weight; edges
/// may shrink to the floor but never through it, keeping the metric
/// positive.
pub const FLOOR_SCALE: f64 = 1e-6;

/// The trajectory of a flow run. Histories are indexed by iteration,
/// then by edge in the input graph's edge order.
#[derive(Debug, Clone)]
pub struct FlowState {
    /// Number of completed iterations.
    pub iterations: usize,
    /// Weights after the last iteration.
    pub weights: Vec<f64>,
    /// Weights after each iteration.
    pub weight_history: Vec<Vec<f64>>,
    /// Transport curvature measured at the start of each iteration, the
    /// values that produced the corresponding weight update.
    pub curvature_history: Vec<Vec<f64>>,
    /// Shortest-path distances under the final weights.
    pub distances: DistanceMatrix,
    /// The weight floor used throughout the run.
    pub floor: f64,
}

/// One flow update on `g`'s current weights: each edge is set to its
/// endpoint distance scaled by one minus its curvature, floored at
/// `floor`. Returns the curvatures that drove the update.
pub fn ricci_flow_step(g: &mut Graph, alpha: f64, floor: f64) -> Result<Vec<f64>> {
    let d = g.shortest_paths()?;
    let kappa = ollivier_graph(g, &d, alpha)?;
    for e in 0..g.edge_count() as u32 {
        let edge = &g.edges()[e as usize];
        let stretched = d.get(edge.u, edge.v) * (1.0 - kappa[e as usize]);
        g.set_edge_weight(e, stretched.max(floor))?;
    }
    Ok(kappa)
}

/// Runs `iters` flow iterations with laziness `alpha`, starting from
/// `g`'s weights. The graph itself is left untouched.
pub fn ricci_flow(g: &Graph, iters: usize, alpha: f64) -> Result<FlowState> {
    if iters == 0 {
        return Err(Error::Infeasible("flow needs at least one iteration".into()));
    }
    if g.edge_count() == 0 {
        return Err(Error::Infeasible("flow needs at least one edge".into()));
    }
    let mean_weight =
        g.edges().iter().map(|e| e.weight).sum::<f64>() / g.edge_count() as f64;
    let floor = FLOOR_SCALE * mean_weight;
    let mut work = g.clone();
    let mut weight_history = Vec::with_capacity(iters);
    let mut curvature_history = Vec::with_capacity(iters);
    for _ in 0..iters {
        let kappa = ricci_flow_step(&mut work, alpha, floor)?;
        curvature_history.push(kappa);
        weight_history.push(work.edges().iter().map(|e| e.weight).collect());
    }
    let distances = work.shortest_paths()?;
    Ok(FlowState {
        iterations: iters,
        weights: work.edges().iter().map(|e| e.weight).collect(),
        weight_history,
        curvature_history,
        distances,
        floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut text = String::new();
        for i in 0..n {
            for j in (i + 1)..n {
                text.push_str(&format!("v{} v{}\n", i, j));
            }
        }
        Graph::from_edge_list(&text).unwrap()
    }

    #[test]
    fn complete_graphs_stay_symmetric() {
        let state = ricci_flow(&complete(6), 10, 0.5).unwrap();
        for weights in &state.weight_history {
            let first = weights[0];
            for &w in weights {
                assert!((w - first).abs() < 1e-9, "{} vs {}", w, first);
            }
        }
        assert_eq!(state.iterations, 10);
        assert_eq!(state.curvature_history.len(), 10);
    }

    #[test]
    fn positive_curvature_contracts() {
        // K5 has curvature 5/8 at alpha = 1/2; one step takes each unit
        // weight to 1 - 5/8 = 3/8.
        let state = ricci_flow(&complete(5), 1, 0.5).unwrap();
        for &w in &state.weights {
            assert!((w - 0.375).abs() < 1e-9, "got {}", w);
        }
    }

    #[test]
    fn flat_graphs_hold_still() {
        // A path is flat at alpha = 0 and its weights are fixed points.
        let g = Graph::from_edge_list("a b\nb c\nc d").unwrap();
        let state = ricci_flow(&g, 5, 0.0).unwrap();
        for &w in &state.weights {
            assert!((w - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn weights_respect_the_floor() {
        let state = ricci_flow(&complete(5), 40, 0.5).unwrap();
        for &w in &state.weights {
            assert!(w >= state.floor - 1e-18);
        }
        // Heavy contraction actually reaches the floor on K5.
        assert!(state.weights.iter().any(|&w| w <= state.floor * 1.0001));
    }

    #[test]
    fn bridges_stretch() {
        // Two triangles joined by a bridge: the bridge starts out
        // negatively curved, so the first step stretches it, and the
        // contracting triangles leave it far heavier than any of their
        // own edges by the end. (Its weight is not monotone: once the
        // triangles tighten, the bridge drive weakens and it dips.)
        let g = Graph::from_edge_list("a b\nb c\nc a\nx y\ny z\nz x\na x").unwrap();
        let state = ricci_flow(&g, 8, 0.5).unwrap();
        let bridge = g.edge(0, 3).unwrap() as usize;
        assert!(state.weight_history[0][bridge] > 1.0);
        for (e, &w) in state.weights.iter().enumerate() {
            if e != bridge {
                assert!(state.weights[bridge] > 2.0 * w, "edge {} too heavy: {}", e, w);
            }
        }
    }

    #[test]
    fn degenerate_runs_are_rejected() {
        assert!(ricci_flow(&complete(3), 0, 0.5).is_err());
        let mut g = Graph::new();
        g.add_vertex("a");
        assert!(ricci_flow(&g, 1, 0.5).is_err());
    }
}
