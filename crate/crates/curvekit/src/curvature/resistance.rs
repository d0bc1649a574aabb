//! Effective resistance, resistance curvature at vertices, and the
//! associated edge curvature.

use nalgebra::{Cholesky, DMatrix, DVector};
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// What to divide by in the edge curvature: the effective resistance of
/// the edge (the default) or its raw weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Denominator {
    #[default]
    EffectiveResistance,
    Weight,
}

/// Factorized grounded Laplacians, one per connected component, ready to
/// answer effective-resistance queries by back-substitution.
pub struct ResistanceSolver {
    component: Vec<u32>,
    systems: Vec<ComponentSystem>,
}

struct ComponentSystem {
    /// Maps a member vertex to its row in the grounded system; the
    /// component's first vertex is the ground and is absent.
    rows: HashMap<u32, usize>,
    ground: u32,
    chol: Option<Cholesky<f64, nalgebra::Dyn>>,
}

impl ResistanceSolver {
    /// Factors the Laplacian of each component of `g`. The Laplacian uses
    /// weighted degrees on the diagonal, so conductances are the edge
    /// weights.
    pub fn new(g: &Graph) -> Result<Self> {
        let component = g.component_labels();
        let count = component.iter().map(|&c| c + 1).max().unwrap_or(0) as usize;
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); count];
        for v in 0..g.vertex_count() as u32 {
            members[component[v as usize] as usize].push(v);
        }
        let mut systems = Vec::with_capacity(count);
        for verts in members {
            let ground = verts[0];
            let rows: HashMap<u32, usize> =
                verts[1..].iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let k = rows.len();
            if k == 0 {
                systems.push(ComponentSystem { rows, ground, chol: None });
                continue;
            }
            let mut l = DMatrix::zeros(k, k);
            for &v in &verts[1..] {
                let i = rows[&v];
                l[(i, i)] = g.weighted_degree(v);
                for &(u, w) in g.neighbors(v) {
                    if let Some(&j) = rows.get(&u) {
                        l[(i, j)] -= w;
                    }
                }
            }
            let chol = Cholesky::new(l).ok_or_else(|| {
                Error::Numerical("grounded Laplacian is not positive definite".into())
            })?;
            systems.push(ComponentSystem { rows, ground, chol: Some(chol) });
        }
        Ok(ResistanceSolver { component, systems })
    }

    /// Effective resistance between two vertices of one component.
    pub fn effective_resistance(&self, i: u32, j: u32) -> Result<f64> {
        if i == j {
            return Ok(0.0);
        }
        let ci = self.component[i as usize];
        if ci != self.component[j as usize] {
            return Err(Error::Infeasible(format!(
                "vertices {} and {} are in different components",
                i, j
            )));
        }
        let sys = &self.systems[ci as usize];
        let chol = sys.chol.as_ref().expect("two vertices imply a nontrivial system");
        let k = sys.rows.len();
        let mut rhs = DVector::zeros(k);
        if let Some(&ri) = sys.rows.get(&i) {
            rhs[ri] += 1.0;
        }
        if let Some(&rj) = sys.rows.get(&j) {
            rhs[rj] -= 1.0;
        }
        let x = chol.solve(&rhs);
        let potential = |v: u32| if v == sys.ground { 0.0 } else { x[sys.rows[&v]] };
        Ok(potential(i) - potential(j))
    }
}

/// One-shot effective resistance between `i` and `j`.
pub fn effective_resistance(g: &Graph, i: u32, j: u32) -> Result<f64> {
    ResistanceSolver::new(g)?.effective_resistance(i, j)
}

/// Resistance curvature of every vertex of a connected graph:
/// p(v) = 1 - (1/2) sum over incident edges of resistance times weight.
pub fn resistance_vertex_curvatures(g: &Graph) -> Result<Vec<f64>> {
    let omega = edge_resistances(g)?;
    Ok(vertex_curvatures_from(g, &omega))
}

/// Resistance curvature of every edge of a connected graph:
/// kappa(e) = 2 (p(u) + p(v)) / denominator.
pub fn resistance_edge_curvatures(g: &Graph, denominator: Denominator) -> Result<Vec<f64>> {
    let omega = edge_resistances(g)?;
    let p = vertex_curvatures_from(g, &omega);
    Ok(g.edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let denom = match denominator {
                Denominator::EffectiveResistance => omega[e],
                Denominator::Weight => edge.weight,
            };
            2.0 * (p[edge.u as usize] + p[edge.v as usize]) / denom
        })
        .collect())
}

/// Effective resistance across every edge, in edge order.
pub fn edge_resistances(g: &Graph) -> Result<Vec<f64>> {
    if g.vertex_count() == 0 {
        return Err(Error::Infeasible("empty graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::Infeasible("graph is not connected".into()));
    }
    let solver = ResistanceSolver::new(g)?;
    g.edges()
        .iter()
        .map(|e| solver.effective_resistance(e.u, e.v))
        .collect()
}

fn vertex_curvatures_from(g: &Graph, omega: &[f64]) -> Vec<f64> {
    let mut p = vec![1.0; g.vertex_count()];
    for (e, edge) in g.edges().iter().enumerate() {
        // Each endpoint sheds half of the edge's spanning-tree
        // inclusion probability omega * w.
        let share = 0.5 * omega[e] * edge.weight;
        p[edge.u as usize] -= share;
        p[edge.v as usize] -= share;
    }
    p
}
