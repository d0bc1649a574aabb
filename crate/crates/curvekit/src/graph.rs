//! Weighted undirected graphs, the shortest-path metric, and the local
//! neighborhood structures consumed by the curvature models.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest vertex count for which all-pairs shortest paths are materialized
/// as a dense matrix. Larger graphs must use [`Graph::distances_from`]
/// per source instead.
pub const DENSE_APSP_LIMIT: usize = 2048;

/// An undirected edge `{u, v}` with `u < v` and a strictly positive weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub weight: f64,
}

/// Which edge length the shortest-path metric uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    /// Sum of edge weights along the path.
    #[default]
    Weighted,
    /// Number of edges along the path, ignoring weights.
    Hops,
}

/// Weighted undirected graph. Vertices carry external string identifiers
/// mapped to dense `u32` indices in first-appearance order; vertex and edge
/// weights are strictly positive and default to 1. No self-loops, at most
/// one edge per unordered pair.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, u32>,
    vertex_weights: Vec<f64>,
    adj: Vec<Vec<(u32, f64)>>,
    edges: Vec<Edge>,
    edge_index: HashMap<(u32, u32), u32>,
}

fn key(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses whitespace-separated edge-list text: one `u v [weight]` edge
    /// per line, `#` starting a comment line, omitted weight meaning 1.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut g = Graph::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let (u, v, w) = match fields.as_slice() {
                [u, v] => (*u, *v, 1.0),
                [u, v, w] => {
                    let w: f64 = w.parse().map_err(|_| {
                        Error::Parse(format!("line {}: bad weight {:?}", lineno + 1, w))
                    })?;
                    (*u, *v, w)
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected \"u v [weight]\", got {:?}",
                        lineno + 1,
                        line
                    )))
                }
            };
            let ui = g.add_vertex(u);
            let vi = g.add_vertex(v);
            g.add_edge(ui, vi, w)
                .map_err(|e| Error::Parse(format!("line {}: {}", lineno + 1, e)))?;
        }
        Ok(g)
    }

    /// Returns the index of `id`, interning it (with vertex weight 1) on
    /// first appearance.
    pub fn add_vertex(&mut self, id: &str) -> u32 {
        if let Some(&i) = self.index.get(id) {
            return i;
        }
        let i = self.ids.len() as u32;
        self.ids.push(id.to_owned());
        self.index.insert(id.to_owned(), i);
        self.vertex_weights.push(1.0);
        self.adj.push(Vec::new());
        i
    }

    /// Adds the undirected edge `{u, v}` with the given weight.
    pub fn add_edge(&mut self, u: u32, v: u32, weight: f64) -> Result<u32> {
        if u == v {
            return Err(Error::Parse(format!("self-loop at {:?}", self.ids[u as usize])));
        }
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::Parse(format!(
                "nonpositive weight {} on edge {:?} {:?}",
                weight, self.ids[u as usize], self.ids[v as usize]
            )));
        }
        let k = key(u, v);
        if self.edge_index.contains_key(&k) {
            return Err(Error::Parse(format!(
                "duplicate edge {:?} {:?}",
                self.ids[u as usize], self.ids[v as usize]
            )));
        }
        let e = self.edges.len() as u32;
        self.edge_index.insert(k, e);
        self.edges.push(Edge { u: k.0, v: k.1, weight });
        self.adj[u as usize].push((v, weight));
        self.adj[v as usize].push((u, weight));
        Ok(e)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// External identifier of vertex `v`.
    pub fn id(&self, v: u32) -> &str {
        &self.ids[v as usize]
    }

    /// Index of the vertex with external identifier `id`, if present.
    pub fn vertex(&self, id: &str) -> Option<u32> {
        self.index.get(id).copied()
    }

    pub fn vertex_weight(&self, v: u32) -> f64 {
        self.vertex_weights[v as usize]
    }

    pub fn set_vertex_weight(&mut self, v: u32, weight: f64) -> Result<()> {
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::Infeasible(format!("nonpositive vertex weight {}", weight)));
        }
        self.vertex_weights[v as usize] = weight;
        Ok(())
    }

    /// Neighbors of `v` with edge weights, in edge insertion order.
    pub fn neighbors(&self, v: u32) -> &[(u32, f64)] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Sum of incident edge weights.
    pub fn weighted_degree(&self, v: u32) -> f64 {
        self.adj[v as usize].iter().map(|&(_, w)| w).sum()
    }

    /// Edges in insertion order; each has `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Index into [`Graph::edges`] for the unordered pair, if present.
    pub fn edge(&self, u: u32, v: u32) -> Option<u32> {
        self.edge_index.get(&key(u, v)).copied()
    }

    pub fn edge_weight(&self, u: u32, v: u32) -> Option<f64> {
        self.edge(u, v).map(|e| self.edges[e as usize].weight)
    }

    /// Replaces the weight of edge `e`, keeping adjacency in sync. Used by
    /// the flow driver, which rescales every weight each iteration.
    pub fn set_edge_weight(&mut self, e: u32, weight: f64) -> Result<()> {
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::Numerical(format!("nonpositive edge weight {}", weight)));
        }
        let Edge { u, v, .. } = self.edges[e as usize];
        self.edges[e as usize].weight = weight;
        for &(a, b) in &[(u, v), (v, u)] {
            for entry in &mut self.adj[a as usize] {
                if entry.0 == b {
                    entry.1 = weight;
                }
            }
        }
        Ok(())
    }

    /// Single-source shortest-path distances from `source` under the given
    /// metric; `f64::INFINITY` marks unreachable vertices.
    pub fn distances_from(&self, source: u32, metric: Metric) -> Vec<f64> {
        let n = self.vertex_count();
        let mut dist = vec![f64::INFINITY; n];
        dist[source as usize] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(HeapEntry { dist: 0.0, vertex: source });
        while let Some(HeapEntry { dist: d, vertex: u }) = heap.pop() {
            if d > dist[u as usize] {
                continue;
            }
            for &(v, w) in &self.adj[u as usize] {
                let step = match metric {
                    Metric::Weighted => w,
                    Metric::Hops => 1.0,
                };
                let nd = d + step;
                if nd < dist[v as usize] {
                    dist[v as usize] = nd;
                    heap.push(HeapEntry { dist: nd, vertex: v });
                }
            }
        }
        dist
    }

    /// All-pairs shortest paths as a dense matrix, parallel over sources.
    /// Dense storage is capped at [`DENSE_APSP_LIMIT`] vertices; beyond
    /// that, call [`Graph::distances_from`] per source of interest.
    pub fn shortest_paths_by(&self, metric: Metric) -> Result<DistanceMatrix> {
        let n = self.vertex_count();
        if n > DENSE_APSP_LIMIT {
            return Err(Error::Infeasible(format!(
                "{} vertices exceeds the dense all-pairs limit of {}; use distances_from per source",
                n, DENSE_APSP_LIMIT
            )));
        }
        let rows: Vec<Vec<f64>> = (0..n as u32)
            .into_par_iter()
            .map(|s| self.distances_from(s, metric))
            .collect();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            data.extend_from_slice(&row);
        }
        Ok(DistanceMatrix { n, data })
    }

    /// All-pairs weighted shortest paths.
    pub fn shortest_paths(&self) -> Result<DistanceMatrix> {
        self.shortest_paths_by(Metric::Weighted)
    }

    /// The punctured 2-ball around `v`: the vertices at hop distance 1 and
    /// 2, together with the S1-S1 and S1-S2 edges. Edges inside S2, the
    /// center, and its incident edges are all excluded.
    pub fn punctured_two_ball(&self, v: u32) -> PuncturedBall {
        let n = self.vertex_count();
        let mut hop = vec![u8::MAX; n];
        hop[v as usize] = 0;
        let mut s1: Vec<u32> = Vec::new();
        for &(u, _) in &self.adj[v as usize] {
            hop[u as usize] = 1;
            s1.push(u);
        }
        s1.sort_unstable();
        let mut s2: Vec<u32> = Vec::new();
        for &u in &s1 {
            for &(w, _) in &self.adj[u as usize] {
                if hop[w as usize] == u8::MAX {
                    hop[w as usize] = 2;
                    s2.push(w);
                }
            }
        }
        s2.sort_unstable();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for &u in &s1 {
            for &(w, _) in &self.adj[u as usize] {
                let h = hop[w as usize];
                // S1-S1 edges once (u < w), S1-S2 edges from the S1 side.
                if (h == 1 && u < w) || h == 2 {
                    edges.push(key(u, w));
                }
            }
        }
        edges.sort_unstable();
        PuncturedBall { s1, s2, edges }
    }

    /// Vertices of the connected component containing `v`, ascending.
    pub fn component_of(&self, v: u32) -> Vec<u32> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![v];
        seen[v as usize] = true;
        let mut out = Vec::new();
        while let Some(u) = stack.pop() {
            out.push(u);
            for &(w, _) in &self.adj[u as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Connected-component label per vertex; labels are dense and assigned
    /// in order of each component's smallest vertex index.
    pub fn component_labels(&self) -> Vec<u32> {
        let n = self.vertex_count();
        let mut label = vec![u32::MAX; n];
        let mut next = 0;
        for start in 0..n as u32 {
            if label[start as usize] != u32::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start as usize] = next;
            while let Some(u) = stack.pop() {
                for &(w, _) in &self.adj[u as usize] {
                    if label[w as usize] == u32::MAX {
                        label[w as usize] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.component_of(0).len() == self.vertex_count()
    }
}

/// Builds the ε-neighborhood graph of a finite metric space: one vertex per
/// point (named by its index), an edge wherever `0 < d(i,j) <= eps`, with
/// the distance as the edge weight.
pub fn epsilon_graph(d: &DistanceMatrix, eps: f64) -> Result<Graph> {
    if !(eps > 0.0) {
        return Err(Error::Infeasible(format!("eps must be positive, got {}", eps)));
    }
    let mut g = Graph::new();
    for i in 0..d.len() {
        g.add_vertex(&i.to_string());
    }
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let dij = d.get(i as u32, j as u32);
            if dij > 0.0 && dij <= eps {
                g.add_edge(i as u32, j as u32, dij)?;
            }
        }
    }
    Ok(g)
}

/// The punctured 2-ball around a vertex; see [`Graph::punctured_two_ball`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuncturedBall {
    /// Vertices at hop distance exactly 1, ascending.
    pub s1: Vec<u32>,
    /// Vertices at hop distance exactly 2, ascending.
    pub s2: Vec<u32>,
    /// S1-S1 and S1-S2 edges as `(min, max)` pairs, sorted.
    pub edges: Vec<(u32, u32)>,
}

/// Dense symmetric matrix of pairwise distances with zero diagonal;
/// `f64::INFINITY` marks disconnected pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds a matrix by evaluating `f` on every ordered pair `i <= j` and
    /// mirroring. The diagonal is forced to zero.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = f(i, j);
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        DistanceMatrix { n, data }
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Distance between points `i` and `j`. Indices are `u32` to match
    /// vertex ids; point-cloud loops cast their `usize` counters down.
    pub fn get(&self, i: u32, j: u32) -> f64 {
        self.data[i as usize * self.n + j as usize]
    }

    /// Row of distances from point `i`.
    pub fn row(&self, i: u32) -> &[f64] {
        let i = i as usize;
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Multiplies every entry by `lambda > 0`.
    pub fn scale(&self, lambda: f64) -> Self {
        DistanceMatrix { n: self.n, data: self.data.iter().map(|d| d * lambda).collect() }
    }
}

/// Min-heap entry for Dijkstra; ordering reversed so BinaryHeap pops the
/// smallest tentative distance first.
#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    dist: f64,
    vertex: u32,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}
