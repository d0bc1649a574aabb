//! Probability measures on graph vertices and exact 1-Wasserstein
//! distances, solved with the transportation simplex.

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Tolerance on mass totals: the two measures must balance this closely.
pub const MASS_TOL: f64 = 1e-9;

/// Reduced costs above this threshold count as zero when testing
/// optimality.
const REDUCED_COST_TOL: f64 = 1e-12;

/// A finitely supported measure on vertex indices. Entries are sorted by
/// vertex, strictly positive, and duplicate-free; zero masses are dropped
/// at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    support: Vec<(u32, f64)>,
}

impl DiscreteMeasure {
    /// Builds a measure from vertex/mass pairs. Masses must be finite and
    /// nonnegative; repeated vertices are rejected rather than merged.
    pub fn new(pairs: impl IntoIterator<Item = (u32, f64)>) -> Result<Self> {
        let mut support: Vec<(u32, f64)> = Vec::new();
        for (v, m) in pairs {
            if !m.is_finite() || m < 0.0 {
                return Err(Error::Infeasible(format!("bad mass {} at vertex {}", m, v)));
            }
            if m > 0.0 {
                support.push((v, m));
            }
        }
        support.sort_by_key(|&(v, _)| v);
        if support.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Infeasible("repeated vertex in measure".into()));
        }
        Ok(DiscreteMeasure { support })
    }

    pub fn support(&self) -> &[(u32, f64)] {
        &self.support
    }

    pub fn total(&self) -> f64 {
        self.support.iter().map(|&(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

/// The lazy random-walk measure at `v`: mass `alpha` stays put and the
/// rest spreads uniformly over the neighbors, one share per neighbor
/// regardless of edge weight.
pub fn lazy_measure(g: &Graph, v: u32, alpha: f64) -> Result<DiscreteMeasure> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Infeasible(format!("alpha {} outside [0, 1]", alpha)));
    }
    let deg = g.degree(v);
    if deg == 0 {
        return Err(Error::Infeasible(format!("vertex {} is isolated", g.id(v))));
    }
    let share = (1.0 - alpha) / deg as f64;
    let mut pairs = vec![(v, alpha)];
    pairs.extend(g.neighbors(v).iter().map(|&(u, _)| (u, share)));
    DiscreteMeasure::new(pairs)
}

/// An exact optimal transport plan between two discrete measures.
#[derive(Debug, Clone)]
pub struct TransportPlan {
    /// Total cost of the plan.
    pub cost: f64,
    /// Flows as (source position, sink position, amount), positive entries
    /// only, indexed into the two support slices.
    pub flows: Vec<(usize, usize, f64)>,
    /// Dual potential per source position.
    pub source_potential: Vec<f64>,
    /// Dual potential per sink position.
    pub sink_potential: Vec<f64>,
}

/// 1-Wasserstein distance between `mu` and `nu` under the ground metric
/// `d`. The totals must agree within `MASS_TOL` and every cross-support
/// distance must be finite.
pub fn wasserstein1(mu: &DiscreteMeasure, nu: &DiscreteMeasure, d: &DistanceMatrix) -> Result<f64> {
    Ok(transport_plan(mu, nu, d)?.cost)
}

/// Solves the transport problem between `mu` and `nu` exactly and returns
/// the full primal/dual solution.
pub fn transport_plan(
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    d: &DistanceMatrix,
) -> Result<TransportPlan> {
    if mu.is_empty() || nu.is_empty() {
        return Err(Error::Infeasible("transport between empty measures".into()));
    }
    if (mu.total() - nu.total()).abs() > MASS_TOL {
        return Err(Error::Infeasible(format!(
            "mass totals differ: {} vs {}",
            mu.total(),
            nu.total()
        )));
    }
    let n = d.len() as u32;
    for &(v, _) in mu.support().iter().chain(nu.support()) {
        if v >= n {
            return Err(Error::Infeasible(format!("vertex {} outside the metric", v)));
        }
    }
    let supply: Vec<f64> = mu.support().iter().map(|&(_, m)| m).collect();
    let mut demand: Vec<f64> = nu.support().iter().map(|&(_, m)| m).collect();
    // Rebalance the tiny permitted mismatch onto the demands so the
    // simplex sees an exactly balanced problem.
    let scale = supply.iter().sum::<f64>() / demand.iter().sum::<f64>();
    for b in &mut demand {
        *b *= scale;
    }
    let mut cost = vec![vec![0.0; demand.len()]; supply.len()];
    for (i, &(x, _)) in mu.support().iter().enumerate() {
        for (j, &(y, _)) in nu.support().iter().enumerate() {
            let dxy = d.get(x, y);
            if !dxy.is_finite() {
                return Err(Error::Infeasible(format!(
                    "vertices {} and {} are at infinite distance",
                    x, y
                )));
            }
            cost[i][j] = dxy;
        }
    }
    solve_transport(&cost, &supply, &demand)
}

/// Transportation simplex on a dense cost matrix. Supplies and demands
/// must be positive and balanced. Bland's rule picks entering and leaving
/// arcs, so the pivot sequence is deterministic and never cycles.
pub fn solve_transport(cost: &[Vec<f64>], supply: &[f64], demand: &[f64]) -> Result<TransportPlan> {
    let m = supply.len();
    let n = demand.len();

    // Northwest-corner start: walk from (0,0) to (m-1,n-1) advancing one
    // index at a time, which yields exactly m+n-1 basic cells (some with
    // zero flow when a supply and demand exhaust together).
    let mut basis: Vec<(usize, usize)> = Vec::with_capacity(m + n - 1);
    let mut flow: Vec<f64> = Vec::with_capacity(m + n - 1);
    let mut a = supply.to_vec();
    let mut b = demand.to_vec();
    let (mut i, mut j) = (0, 0);
    loop {
        let t = if i == m - 1 && j == n - 1 { a[i].max(0.0) } else { a[i].min(b[j]) };
        basis.push((i, j));
        flow.push(t);
        a[i] -= t;
        b[j] -= t;
        if i == m - 1 && j == n - 1 {
            break;
        }
        if (a[i] <= b[j] && i < m - 1) || j == n - 1 {
            i += 1;
        } else {
            j += 1;
        }
    }

    let mut in_basis = vec![vec![false; n]; m];
    for &(i, j) in &basis {
        in_basis[i][j] = true;
    }

    let max_pivots = 1000 * (m + n) * (m + n) + 1000;
    for _ in 0..max_pivots {
        let (u, v) = potentials(&basis, cost, m, n);

        // Entering arc: first cell in row-major order with negative
        // reduced cost (Bland's rule).
        let mut entering = None;
        'scan: for i in 0..m {
            for j in 0..n {
                if !in_basis[i][j] && cost[i][j] - u[i] - v[j] < -REDUCED_COST_TOL {
                    entering = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((ei, ej)) = entering else {
            let mut flows: Vec<(usize, usize, f64)> = basis
                .iter()
                .zip(&flow)
                .filter(|&(_, &f)| f > 0.0)
                .map(|(&(i, j), &f)| (i, j, f))
                .collect();
            flows.sort_by_key(|&(i, j, _)| (i, j));
            let total = flows.iter().map(|&(i, j, f)| f * cost[i][j]).sum();
            return Ok(TransportPlan {
                cost: total,
                flows,
                source_potential: u,
                sink_potential: v,
            });
        };

        // The basis tree plus the entering arc closes one cycle; flows
        // alternate +/- around it starting with + on the entering arc.
        let path = tree_path(&basis, m, n, ei, m + ej);
        let mut theta = f64::INFINITY;
        let mut leaving = usize::MAX;
        for (step, &arc) in path.iter().enumerate() {
            if step % 2 == 0 {
                // Arcs at even positions along the path run against the
                // cycle direction and lose flow.
                if flow[arc] < theta
                    || (flow[arc] == theta && (leaving == usize::MAX || basis[arc] < basis[leaving]))
                {
                    theta = flow[arc];
                    leaving = arc;
                }
            }
        }
        debug_assert!(leaving != usize::MAX);
        for (step, &arc) in path.iter().enumerate() {
            if step % 2 == 0 {
                flow[arc] -= theta;
            } else {
                flow[arc] += theta;
            }
        }
        let (li, lj) = basis[leaving];
        in_basis[li][lj] = false;
        in_basis[ei][ej] = true;
        basis[leaving] = (ei, ej);
        flow[leaving] = theta;
    }
    Err(Error::Numerical("transport simplex failed to converge".into()))
}

/// Dual potentials from the basis tree: fix the first source at zero and
/// propagate u_i + v_j = c_ij across basic arcs.
fn potentials(basis: &[(usize, usize)], cost: &[Vec<f64>], m: usize, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m + n];
    for (k, &(i, j)) in basis.iter().enumerate() {
        adj[i].push(k);
        adj[m + j].push(k);
    }
    let mut u = vec![f64::NAN; m];
    let mut v = vec![f64::NAN; n];
    u[0] = 0.0;
    let mut stack = vec![0usize];
    while let Some(node) = stack.pop() {
        for &k in &adj[node] {
            let (i, j) = basis[k];
            if node == i && v[j].is_nan() {
                v[j] = cost[i][j] - u[i];
                stack.push(m + j);
            } else if node == m + j && u[i].is_nan() {
                u[i] = cost[i][j] - v[j];
                stack.push(i);
            }
        }
    }
    (u, v)
}

/// Arc indices along the unique basis-tree path between two nodes
/// (sources are 0..m, sinks are m..m+n), ordered from `from` to `to`.
fn tree_path(basis: &[(usize, usize)], m: usize, n: usize, from: usize, to: usize) -> Vec<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m + n];
    for (k, &(i, j)) in basis.iter().enumerate() {
        adj[i].push((m + j, k));
        adj[m + j].push((i, k));
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; m + n];
    let mut seen = vec![false; m + n];
    seen[to] = true;
    let mut queue = std::collections::VecDeque::from([to]);
    while let Some(node) = queue.pop_front() {
        if node == from {
            break;
        }
        for &(next, k) in &adj[node] {
            if !seen[next] {
                seen[next] = true;
                parent[next] = Some((node, k));
                queue.push_back(next);
            }
        }
    }
    let mut path = Vec::new();
    let mut node = from;
    while let Some((prev, k)) = parent[node] {
        path.push(k);
        node = prev;
    }
    debug_assert!(node == to);
    path
}
