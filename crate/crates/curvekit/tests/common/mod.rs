//! Independent reference implementations ("oracles") shared by the
//! integration suites. Each one recomputes a quantity the library also
//! computes, by a deliberately different algorithm: a dense tableau
//! simplex instead of the network simplex, spanning-tree enumeration
//! instead of a Laplacian solve, pointwise bisection instead of a Schur
//! complement, and exhaustive scans instead of incidence bookkeeping.

#![allow(dead_code)]

use curvekit::complex::SimplicialComplex;
use curvekit::graph::{DistanceMatrix, Graph};
use curvekit::transport::DiscreteMeasure;
use nalgebra::DMatrix;

const TOL: f64 = 1e-9;

/// Cost matrix and marginals between two measures under a graph metric,
/// in the shape the LP oracles expect.
pub fn support_costs(
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    d: &DistanceMatrix,
) -> (Vec<Vec<f64>>, Vec<f64>, Vec<f64>) {
    let costs = mu
        .support()
        .iter()
        .map(|&(x, _)| nu.support().iter().map(|&(y, _)| d.get(x, y)).collect())
        .collect();
    let a = mu.support().iter().map(|&(_, m)| m).collect();
    let b = nu.support().iter().map(|&(_, m)| m).collect();
    (costs, a, b)
}

// ------------------------------------------------------ dense LP simplex

/// Minimizes `c . x` subject to `a x = b`, `x >= 0` with a two-phase
/// dense tableau simplex under Bland's rule. Returns `None` when the
/// program is infeasible. Sized for the transport instances in these
/// tests (tens of variables), not for production use.
pub fn simplex_min(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Option<f64> {
    let m = a.len();
    let n = c.len();
    assert!(b.len() == m && a.iter().all(|row| row.len() == n));

    // Tableau columns: n structural + m artificial + rhs. Rows flipped
    // where needed so every right-hand side is nonnegative.
    let cols = n + m + 1;
    let mut t = vec![vec![0.0; cols]; m];
    for i in 0..m {
        let flip = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = flip * a[i][j];
        }
        t[i][n + i] = 1.0;
        t[i][cols - 1] = flip * b[i];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimize the artificial mass.
    let mut z = vec![0.0; cols];
    for i in 0..m {
        for j in 0..cols {
            z[j] += t[i][j];
        }
    }
    for j in n..n + m {
        z[j] = 0.0;
    }
    pivot_loop(&mut t, &mut basis, &mut z, n + m);
    if z[cols - 1] > 1e-7 {
        return None;
    }
    // Kick residual artificials out of the basis where possible; a row
    // with no structural pivot is a redundant constraint and inert.
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| t[i][j].abs() > 1e-9) {
                pivot(&mut t, &mut basis, &mut z, i, j);
            }
        }
    }

    // Phase 2: the real objective, artificial columns barred.
    let mut z2 = vec![0.0; cols];
    for j in 0..n {
        z2[j] = -c[j];
    }
    for i in 0..m {
        if basis[i] < n {
            let cb = c[basis[i]];
            for j in 0..cols {
                z2[j] += cb * t[i][j];
            }
        }
    }
    for j in n..n + m {
        z2[j] = f64::NEG_INFINITY;
    }
    pivot_loop(&mut t, &mut basis, &mut z2, n);
    Some(z2[cols - 1])
}

fn pivot_loop(t: &mut [Vec<f64>], basis: &mut [usize], z: &mut [f64], limit: usize) {
    let cols = t[0].len();
    for _ in 0..100_000 {
        // Bland: first improving column.
        let Some(enter) = (0..limit).find(|&j| z[j] > 1e-9) else { return };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for (i, row) in t.iter().enumerate() {
            if row[enter] > 1e-12 {
                let ratio = row[cols - 1] / row[enter];
                if ratio < best - 1e-12 || (ratio < best + 1e-12 && leave.is_none()) {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else { return };
        pivot(t, basis, z, leave, enter);
    }
    panic!("simplex oracle failed to terminate");
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], z: &mut [f64], row: usize, col: usize) {
    let cols = t[0].len();
    let p = t[row][col];
    for j in 0..cols {
        t[row][j] /= p;
    }
    for i in 0..t.len() {
        if i != row && t[i][col].abs() > 0.0 {
            let f = t[i][col];
            for j in 0..cols {
                t[i][j] -= f * t[row][j];
            }
        }
    }
    let f = z[col];
    if f.is_finite() && f.abs() > 0.0 {
        for j in 0..cols {
            if z[j].is_finite() {
                z[j] -= f * t[row][j];
            }
        }
    }
    basis[row] = col;
}

/// Transport cost by the dense simplex: the LP relaxation of moving
/// `supply` onto `demand` at the given unit costs.
pub fn transport_lp(cost: &[Vec<f64>], supply: &[f64], demand: &[f64]) -> f64 {
    let m = supply.len();
    let n = demand.len();
    let vars = m * n;
    let mut c = vec![0.0; vars];
    for i in 0..m {
        for j in 0..n {
            c[i * n + j] = cost[i][j];
        }
    }
    let mut a = vec![vec![0.0; vars]; m + n];
    let mut b = vec![0.0; m + n];
    for i in 0..m {
        for j in 0..n {
            a[i][i * n + j] = 1.0;
        }
        b[i] = supply[i];
    }
    for j in 0..n {
        for i in 0..m {
            a[m + j][i * n + j] = 1.0;
        }
        b[m + j] = demand[j];
    }
    simplex_min(&c, &a, &b).expect("balanced transport is feasible")
}

// ---------------------------------------------- basic-solution enumeration

/// Transport cost by brute force over every basis: all edge sets of size
/// m + n - 1 that span the bipartite support graph, solved by leaf
/// elimination and filtered for feasibility. Only viable when
/// C(m n, m + n - 1) is small; callers must size their instances.
pub fn transport_enumeration(cost: &[Vec<f64>], supply: &[f64], demand: &[f64]) -> f64 {
    let m = supply.len();
    let n = demand.len();
    let cells: Vec<(usize, usize)> =
        (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let k = m + n - 1;
    let mut best = f64::INFINITY;
    let mut chosen = Vec::with_capacity(k);
    enumerate_subsets(&cells, k, 0, &mut chosen, &mut |subset| {
        if let Some(costval) = basis_cost(subset, cost, supply, demand) {
            if costval < best {
                best = costval;
            }
        }
    });
    assert!(best.is_finite(), "no feasible basis found");
    best
}

fn enumerate_subsets(
    cells: &[(usize, usize)],
    k: usize,
    start: usize,
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    if chosen.len() == k {
        visit(chosen);
        return;
    }
    let need = k - chosen.len();
    for idx in start..=cells.len().saturating_sub(need) {
        chosen.push(cells[idx]);
        enumerate_subsets(cells, k, idx + 1, chosen, visit);
        chosen.pop();
    }
}

/// Solves the flows on a candidate basis by repeatedly settling nodes of
/// degree one; returns the plan cost when the basis is a spanning tree
/// with nonnegative flows.
fn basis_cost(
    subset: &[(usize, usize)],
    cost: &[Vec<f64>],
    supply: &[f64],
    demand: &[f64],
) -> Option<f64> {
    let m = supply.len();
    let n = demand.len();
    let mut residual_supply = supply.to_vec();
    let mut residual_demand = demand.to_vec();
    let mut live: Vec<bool> = vec![true; subset.len()];
    let mut flows = vec![0.0; subset.len()];
    for _ in 0..subset.len() {
        // A spanning tree always has a leaf; a node with exactly one
        // live incident arc forces that arc's flow.
        let mut progressed = false;
        for node in 0..m + n {
            let incident: Vec<usize> = (0..subset.len())
                .filter(|&e| {
                    live[e]
                        && if node < m { subset[e].0 == node } else { subset[e].1 == node - m }
                })
                .collect();
            if incident.len() == 1 {
                let e = incident[0];
                let (i, j) = subset[e];
                let f = if node < m { residual_supply[i] } else { residual_demand[j] };
                flows[e] = f;
                residual_supply[i] -= f;
                residual_demand[j] -= f;
                live[e] = false;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return None; // a cycle: not a basis
        }
    }
    let balanced = residual_supply.iter().chain(&residual_demand).all(|r| r.abs() < 1e-7);
    let feasible = flows.iter().all(|&f| f >= -1e-9);
    if balanced && feasible {
        Some(subset.iter().zip(&flows).map(|(&(i, j), &f)| cost[i][j] * f).sum())
    } else {
        None
    }
}

// --------------------------------------------- spanning-tree resistance

/// Effective resistance between `u` and `v` by Kirchhoff's formula:
/// the weighted count of spanning 2-forests separating u from v over
/// the weighted count of spanning trees, with edge weights read as
/// conductances. Exponential in the edge count; keep graphs small.
pub fn spanning_tree_resistance(g: &Graph, u: u32, v: u32) -> f64 {
    let n = g.vertex_count();
    let edges = g.edges();
    let trees = forest_weight_sum(g, n - 1, |labels| {
        (0..n as u32).all(|x| find(labels, x) == find(labels, 0))
    });
    let separating = forest_weight_sum(g, n - 2, |labels| {
        component_count(labels, n) == 2 && find(labels, u) != find(labels, v)
    });
    assert!(trees > 0.0, "graph must be connected");
    let _ = edges;
    separating / trees
}

/// Sum of products of edge weights over all acyclic edge subsets of the
/// given size whose union-find state passes `accept`.
fn forest_weight_sum(g: &Graph, size: usize, accept: impl Fn(&mut [u32]) -> bool) -> f64 {
    let edges = g.edges();
    let n = g.vertex_count();
    let mut total = 0.0;
    let mut subset = Vec::with_capacity(size);
    let cells: Vec<usize> = (0..edges.len()).collect();
    enumerate_subsets(
        &cells.iter().map(|&e| (e, 0)).collect::<Vec<_>>(),
        size,
        0,
        &mut subset,
        &mut |chosen| {
            let mut labels: Vec<u32> = (0..n as u32).collect();
            let mut acyclic = true;
            let mut product = 1.0;
            for &(e, _) in chosen {
                let edge = &edges[e];
                if !union(&mut labels, edge.u, edge.v) {
                    acyclic = false;
                    break;
                }
                product *= edge.weight;
            }
            if acyclic && accept(&mut labels) {
                total += product;
            }
        },
    );
    total
}

fn find(labels: &mut [u32], x: u32) -> u32 {
    let mut root = x;
    while labels[root as usize] != root {
        root = labels[root as usize];
    }
    let mut cur = x;
    while labels[cur as usize] != root {
        let next = labels[cur as usize];
        labels[cur as usize] = root;
        cur = next;
    }
    root
}

fn union(labels: &mut [u32], a: u32, b: u32) -> bool {
    let (ra, rb) = (find(labels, a), find(labels, b));
    if ra == rb {
        return false;
    }
    labels[ra.max(rb) as usize] = ra.min(rb);
    true
}

fn component_count(labels: &mut [u32], n: usize) -> usize {
    (0..n as u32).filter(|&x| find(labels, x) == x).count()
}

/// Vertex curvatures from oracle resistances: p(v) = 1 - (1/2) sum of
/// incident resistance-weight products.
pub fn spanning_tree_vertex_curvatures(g: &Graph) -> Vec<f64> {
    let omega: Vec<f64> = g
        .edges()
        .iter()
        .map(|e| spanning_tree_resistance(g, e.u, e.v))
        .collect();
    (0..g.vertex_count() as u32)
        .map(|v| {
            let incident: f64 = g
                .edges()
                .iter()
                .zip(&omega)
                .filter(|(e, _)| e.u == v || e.v == v)
                .map(|(e, &o)| o * e.weight)
                .sum();
            1.0 - 0.5 * incident
        })
        .collect()
}

// ------------------------------------------- pointwise curvature bisection

/// Carre du champ at `v`, evaluated pointwise from the definition.
fn gamma_at(g: &Graph, x: u32, f: &[f64], h: &[f64]) -> f64 {
    0.5 * g
        .neighbors(x)
        .iter()
        .map(|&(u, w)| {
            w * (f[u as usize] - f[x as usize]) * (h[u as usize] - h[x as usize])
        })
        .sum::<f64>()
}

fn laplacian_at(g: &Graph, x: u32, f: &[f64]) -> f64 {
    g.neighbors(x).iter().map(|&(u, w)| w * (f[u as usize] - f[x as usize])).sum()
}

/// Iterated form at `v`, evaluated pointwise: half the Laplacian of the
/// function x -> Gamma(f)(x), minus Gamma(f, Laplacian f)(v).
fn gamma2_at(g: &Graph, v: u32, f: &[f64]) -> f64 {
    let n = g.vertex_count();
    let gf: Vec<f64> = (0..n as u32).map(|x| gamma_at(g, x, f, f)).collect();
    let lf: Vec<f64> = (0..n as u32).map(|x| laplacian_at(g, x, f)).collect();
    0.5 * laplacian_at(g, v, &gf) - gamma_at(g, v, f, &lf)
}

/// Curvature lower bound at `v` by bisection over the whole function
/// space: the largest K with Gamma2 - K Gamma positive semidefinite,
/// both forms assembled by polarization of pointwise evaluations.
pub fn bakry_emery_bisection(g: &Graph, v: u32) -> f64 {
    let n = g.vertex_count();
    let quad = |q: &dyn Fn(&[f64]) -> f64| -> DMatrix<f64> {
        let mut mat = DMatrix::zeros(n, n);
        let mut diag = vec![0.0; n];
        for (i, d) in diag.iter_mut().enumerate() {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            *d = q(&e);
            mat[(i, i)] = *d;
        }
        for i in 0..n {
            for j in 0..i {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                e[j] = 1.0;
                let both = q(&e);
                let off = 0.5 * (both - diag[i] - diag[j]);
                mat[(i, j)] = off;
                mat[(j, i)] = off;
            }
        }
        mat
    };
    let a = quad(&|f: &[f64]| gamma2_at(g, v, f));
    let b = quad(&|f: &[f64]| gamma_at(g, v, f, f));

    let scale = a.amax().max(b.amax()).max(1.0);
    let psd = |k: f64| -> bool {
        let m = &a - &b * k;
        let eig = m.symmetric_eigenvalues();
        eig.iter().all(|&l| l >= -1e-9 * scale.max(k.abs()))
    };

    let mut lo = -1.0;
    while !psd(lo) {
        lo *= 2.0;
        assert!(lo > -1e12, "no finite curvature lower bound");
    }
    let mut hi = 1.0;
    while psd(hi) {
        hi *= 2.0;
        assert!(hi < 1e12, "curvature bound diverged");
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if psd(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

// --------------------------------------------------- incidence brute force

/// Combinatorial curvature of one simplex by exhaustive scans: faces and
/// cofaces by containment tests over the whole complex, parallel
/// neighbors by the share-a-face-or-coface-but-not-both rule.
pub fn forman_scan(k: &SimplicialComplex, dim: usize, idx: usize) -> f64 {
    let s = &k.simplices(dim)[idx];
    let faces = if dim == 0 {
        0
    } else {
        k.simplices(dim - 1).iter().filter(|f| contained(f, s)).count()
    };
    let max_dim = k.max_dim().unwrap_or(0);
    let cofaces = if dim + 1 > max_dim {
        0
    } else {
        k.simplices(dim + 1).iter().filter(|c| contained(s, c)).count()
    };
    let mut parallel = 0;
    for (j, t) in k.simplices(dim).iter().enumerate() {
        if j == idx {
            continue;
        }
        let share_face = dim > 0
            && k.simplices(dim - 1)
                .iter()
                .any(|f| contained(f, s) && contained(f, t));
        let share_coface = dim + 1 <= max_dim
            && k.simplices(dim + 1)
                .iter()
                .any(|c| contained(s, c) && contained(t, c));
        if share_face != share_coface {
            parallel += 1;
        }
    }
    (faces + cofaces) as f64 - parallel as f64
}

fn contained(inner: &[u32], outer: &[u32]) -> bool {
    inner.iter().all(|v| outer.contains(v))
}

// ----------------------------------------------------- detour brute force

/// Sum of detour contributions for an edge by enumerating every simple
/// path between its endpoints with breadth-first extension of partial
/// paths; independent of the library's depth-first bitmask walk.
pub fn haantjes_scan(g: &Graph, d: &DistanceMatrix, e: u32, max_len: usize) -> f64 {
    let edge = &g.edges()[e as usize];
    let (s, t) = (edge.u, edge.v);
    let duv = d.get(s, t);
    let mut total = 0.0;
    let mut frontier: Vec<Vec<u32>> = vec![vec![s]];
    for hop in 1..=max_len {
        let mut next = Vec::new();
        for path in &frontier {
            let last = *path.last().unwrap();
            for &(nb, _) in g.neighbors(last) {
                if path.contains(&nb) {
                    continue;
                }
                if nb == t {
                    if hop >= 2 {
                        let length: f64 = path
                            .iter()
                            .chain(std::iter::once(&t))
                            .collect::<Vec<_>>()
                            .windows(2)
                            .map(|w| g.edge_weight(*w[0], *w[1]).unwrap())
                            .sum();
                        let excess = (length - duv).max(0.0);
                        total += (excess / duv.powi(3)).sqrt();
                    }
                    continue;
                }
                let mut longer = path.clone();
                longer.push(nb);
                next.push(longer);
            }
        }
        frontier = next;
    }
    total
}
