//! Deterministic graph and point-cloud generators for experiments and
//! tests. Vertices are named "0", "1", ... in index order, and every
//! random constructor is a pure function of its seed.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::graph::{DistanceMatrix, Graph};
use crate::points::PointCloud;

fn named(n: usize) -> Graph {
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(&v.to_string());
    }
    g
}

pub fn path_graph(n: usize) -> Graph {
    let mut g = named(n);
    for v in 1..n as u32 {
        g.add_edge(v - 1, v, 1.0).expect("fresh edge");
    }
    g
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let mut g = path_graph(n);
    g.add_edge(n as u32 - 1, 0, 1.0).expect("fresh edge");
    g
}

pub fn complete_graph(n: usize) -> Graph {
    let mut g = named(n);
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            g.add_edge(u, v, 1.0).expect("fresh edge");
        }
    }
    g
}

/// A hub (vertex 0) with `leaves` pendant vertices.
pub fn star_graph(leaves: usize) -> Graph {
    let mut g = named(leaves + 1);
    for v in 1..=leaves as u32 {
        g.add_edge(0, v, 1.0).expect("fresh edge");
    }
    g
}

/// Two k-cliques glued at one vertex. Returns the graph and the shared
/// vertex, which is k - 1.
pub fn two_cliques_sharing_vertex(k: usize) -> (Graph, u32) {
    assert!(k >= 2);
    let shared = (k - 1) as u32;
    let mut g = named(2 * k - 1);
    for u in 0..k as u32 {
        for v in (u + 1)..k as u32 {
            g.add_edge(u, v, 1.0).expect("fresh edge");
        }
    }
    for u in shared..(2 * k - 1) as u32 {
        for v in (u + 1)..(2 * k - 1) as u32 {
            g.add_edge(u, v, 1.0).expect("fresh edge");
        }
    }
    (g, shared)
}

/// Two k-cliques joined by a single bridge edge. Returns the graph and
/// the bridge endpoints (k - 1, k).
pub fn bridged_cliques(k: usize) -> (Graph, u32, u32) {
    assert!(k >= 2);
    let mut g = named(2 * k);
    for base in [0u32, k as u32] {
        for u in base..base + k as u32 {
            for v in (u + 1)..base + k as u32 {
                g.add_edge(u, v, 1.0).expect("fresh edge");
            }
        }
    }
    let (a, b) = ((k - 1) as u32, k as u32);
    g.add_edge(a, b, 1.0).expect("fresh edge");
    (g, a, b)
}

/// A uniform random labeled tree on `n` vertices, decoded from a random
/// Pruefer sequence.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut g = named(n);
    if n == 1 {
        return g;
    }
    if n == 2 {
        g.add_edge(0, 1, 1.0).expect("fresh edge");
        return g;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a tree has leaves");
        g.add_edge(leaf as u32, s as u32, 1.0).expect("fresh edge");
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0] as u32, rest[1] as u32, 1.0).expect("fresh edge");
    g
}

/// A connected random graph: a random spanning tree overlaid with
/// independent edges of probability `p`.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut g = named(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Random recursive tree: attach each vertex to a uniform earlier one.
    for v in 1..n {
        let parent = rng.random_range(0..v);
        g.add_edge(parent as u32, v as u32, 1.0).expect("fresh edge");
    }
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if g.edge(u, v).is_none() && rng.random_bool(p) {
                g.add_edge(u, v, 1.0).expect("fresh edge");
            }
        }
    }
    g
}

/// The same graph with fresh edge weights drawn uniformly from
/// `lo..=hi`.
pub fn with_random_weights(g: &Graph, lo: f64, hi: f64, seed: u64) -> Graph {
    assert!(lo > 0.0 && hi >= lo);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Graph::new();
    for v in 0..g.vertex_count() as u32 {
        out.add_vertex(g.id(v));
    }
    for edge in g.edges() {
        out.add_edge(edge.u, edge.v, rng.random_range(lo..=hi)).expect("fresh edge");
    }
    out
}

/// A planar grid of `rows` x `cols` points with the given spacing.
pub fn grid_points(rows: usize, cols: usize, spacing: f64) -> PointCloud {
    let mut coords = Vec::with_capacity(rows * cols * 2);
    for r in 0..rows {
        for c in 0..cols {
            coords.push(c as f64 * spacing);
            coords.push(r as f64 * spacing);
        }
    }
    PointCloud::new(2, coords).expect("grid coordinates are well-formed")
}

/// Uniform points on the 2-sphere of the given radius in 3-space.
pub fn sample_sphere(count: usize, radius: f64, seed: u64) -> PointCloud {
    assert!(radius > 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords = Vec::with_capacity(count * 3);
    for _ in 0..count {
        loop {
            let x: f64 = rng.sample(StandardNormal);
            let y: f64 = rng.sample(StandardNormal);
            let z: f64 = rng.sample(StandardNormal);
            let norm = (x * x + y * y + z * z).sqrt();
            if norm > 1e-12 {
                coords.push(radius * x / norm);
                coords.push(radius * y / norm);
                coords.push(radius * z / norm);
                break;
            }
        }
    }
    PointCloud::new(3, coords).expect("sphere coordinates are well-formed")
}

/// Great-circle distances between points assumed to lie on the sphere of
/// the given radius around the origin.
pub fn sphere_geodesic_matrix(cloud: &PointCloud, radius: f64) -> Result<DistanceMatrix> {
    let r2 = radius * radius;
    Ok(DistanceMatrix::from_fn(cloud.len(), |i, j| {
        let a = cloud.point(i);
        let b = cloud.point(j);
        let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        radius * (dot / r2).clamp(-1.0, 1.0).acos()
    }))
}
