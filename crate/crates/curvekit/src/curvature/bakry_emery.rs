//! Bakry-Emery curvature at a vertex: the best constant K with
//! Gamma_2(f)(v) >= K * Gamma(f)(v) over all functions on the punctured
//! two-ball around v.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Relative threshold separating numerically-zero eigenvalues from
/// positive ones when splitting a quadratic form's kernel.
const KERNEL_REL_TOL: f64 = 1e-10;

/// How negative an "is positive semidefinite here" eigenvalue may be,
/// relative to the matrix scale, before the certificate fails.
const PSD_REL_TOL: f64 = 1e-9;

/// The two quadratic forms at `v` on its punctured two-ball, as matrices
/// over the local basis. `basis[i]` is the global vertex behind local
/// coordinate `i`; `basis[0]` is `v` itself.
#[derive(Debug, Clone)]
pub struct QuadraticFormPair {
    pub basis: Vec<u32>,
    pub gamma: DMatrix<f64>,
    pub gamma2: DMatrix<f64>,
}

/// Assembles Gamma and Gamma_2 at `v` as quadratic forms. Values of f
/// outside the punctured two-ball never enter either form, so the local
/// basis is exact, not a truncation.
pub fn quadratic_forms(g: &Graph, v: u32) -> Result<QuadraticFormPair> {
    if g.degree(v) == 0 {
        return Err(Error::Infeasible(format!("vertex {} is isolated", g.id(v))));
    }
    let ball = g.punctured_two_ball(v);
    let mut basis = Vec::with_capacity(1 + ball.s1.len() + ball.s2.len());
    basis.push(v);
    basis.extend_from_slice(&ball.s1);
    basis.extend_from_slice(&ball.s2);
    let local: HashMap<u32, usize> =
        basis.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let k = basis.len();

    let mut gamma = DMatrix::zeros(k, k);
    for &(u, wvu) in g.neighbors(v) {
        // Gamma(f)(v) = 1/2 sum w_vu (f_u - f_v)^2.
        add_difference_square(&mut gamma, local[&u], local[&v], 0.5 * wvu);
    }

    let mut gamma2 = DMatrix::zeros(k, k);
    let wdeg = g.weighted_degree(v);
    for &(u, wvu) in g.neighbors(v) {
        // 1/2 sum_u w_vu Gamma(f)(u), expanded over u's neighbors.
        for &(z, wuz) in g.neighbors(u) {
            add_difference_square(&mut gamma2, local[&z], local[&u], 0.25 * wvu * wuz);
        }
        // -1/2 (sum_u w_vu) Gamma(f)(v) accumulates through wdeg below.
        // -1/2 sum_u w_vu (f_u - f_v)(Lf(u) - Lf(v)).
        let mut x = vec![0.0; k];
        x[local[&u]] += 1.0;
        x[local[&v]] -= 1.0;
        let mut y = vec![0.0; k];
        for &(z, wuz) in g.neighbors(u) {
            y[local[&z]] += wuz;
            y[local[&u]] -= wuz;
        }
        for &(z, wvz) in g.neighbors(v) {
            y[local[&z]] -= wvz;
            y[local[&v]] += wvz;
        }
        for i in 0..k {
            for j in 0..k {
                gamma2[(i, j)] -= 0.25 * wvu * (x[i] * y[j] + y[i] * x[j]);
            }
        }
    }
    for &(u, wvu) in g.neighbors(v) {
        add_difference_square(&mut gamma2, local[&u], local[&v], -0.25 * wdeg * wvu);
    }

    Ok(QuadraticFormPair { basis, gamma, gamma2 })
}

fn add_difference_square(m: &mut DMatrix<f64>, a: usize, b: usize, c: f64) {
    m[(a, a)] += c;
    m[(b, b)] += c;
    m[(a, b)] -= c;
    m[(b, a)] -= c;
}

/// Curvature at `v`: the supremum of K with Gamma_2 - K Gamma positive
/// semidefinite. Returns negative infinity if no finite K works, which
/// can only arise from numerical degeneracy.
pub fn bakry_emery(g: &Graph, v: u32) -> Result<f64> {
    let forms = quadratic_forms(g, v)?;
    curvature_from_forms(&forms.gamma, &forms.gamma2)
}

/// Curvature at every vertex, in index order.
pub fn bakry_emery_all(g: &Graph) -> Result<Vec<f64>> {
    (0..g.vertex_count() as u32)
        .into_par_iter()
        .map(|v| bakry_emery(g, v))
        .collect()
}

/// Solves sup{K : A - K B >= 0} for symmetric A and PSD B, allowing B to
/// be singular. Directions in ker B must carry nonnegative A or no K
/// works; among those, A-positive kernel directions couple into the rest
/// of the form through a Schur complement.
fn curvature_from_forms(b: &DMatrix<f64>, a: &DMatrix<f64>) -> Result<f64> {
    let k = b.nrows();
    let eig_b = SymmetricEigen::new(b.clone());
    let lambda_max = eig_b.eigenvalues.iter().cloned().fold(0.0, f64::max);
    if lambda_max <= 0.0 {
        return Err(Error::Numerical("Gamma form vanished".into()));
    }
    let tol_b = lambda_max * KERNEL_REL_TOL;
    let pos: Vec<usize> =
        (0..k).filter(|&i| eig_b.eigenvalues[i] > tol_b).collect();
    let ker: Vec<usize> =
        (0..k).filter(|&i| eig_b.eigenvalues[i] <= tol_b).collect();

    let u = &eig_b.eigenvectors;
    let a_bar = u.transpose() * a * u;
    let a_pp = a_bar.select_rows(pos.iter()).select_columns(pos.iter());
    let d_p: Vec<f64> = pos.iter().map(|&i| eig_b.eigenvalues[i]).collect();

    let scale_a = a.amax().max(1.0);
    let c = if ker.is_empty() {
        a_pp
    } else {
        let a_nn = a_bar.select_rows(ker.iter()).select_columns(ker.iter());
        let a_pn = a_bar.select_rows(pos.iter()).select_columns(ker.iter());
        let eig_n = SymmetricEigen::new(a_nn);
        if eig_n.eigenvalues.iter().any(|&nu| nu < -PSD_REL_TOL * scale_a) {
            // A fails to be PSD where B vanishes: K is unbounded below.
            return Ok(f64::NEG_INFINITY);
        }
        let nu_max = eig_n.eigenvalues.iter().cloned().fold(0.0, f64::max);
        let tol_n = (nu_max * KERNEL_REL_TOL).max(PSD_REL_TOL * scale_a);
        let active: Vec<usize> =
            (0..ker.len()).filter(|&i| eig_n.eigenvalues[i] > tol_n).collect();
        let idle: Vec<usize> =
            (0..ker.len()).filter(|&i| eig_n.eigenvalues[i] <= tol_n).collect();
        // Couplings into the A-null part of ker B must vanish (they do in
        // exact arithmetic: that part is spanned by constants).
        let coupled = a_pn * &eig_n.eigenvectors;
        for &j in &idle {
            for i in 0..pos.len() {
                if coupled[(i, j)].abs() > 1e-7 * scale_a {
                    return Ok(f64::NEG_INFINITY);
                }
            }
        }
        if active.is_empty() {
            a_pp
        } else {
            let m = coupled.select_columns(active.iter());
            let nu_inv = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                active.len(),
                active.iter().map(|&i| 1.0 / eig_n.eigenvalues[i]),
            ));
            a_pp - &m * nu_inv * m.transpose()
        }
    };

    // K = smallest eigenvalue of D^{-1/2} C D^{-1/2}.
    let p = pos.len();
    let mut scaled = c;
    for i in 0..p {
        for j in 0..p {
            scaled[(i, j)] /= (d_p[i] * d_p[j]).sqrt();
        }
    }
    let scaled = (&scaled + scaled.transpose()) * 0.5;
    let eig_c = SymmetricEigen::new(scaled);
    Ok(eig_c.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min))
}
