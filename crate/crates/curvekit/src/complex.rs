//! Simplicial complexes (clique and Vietoris-Rips) and the face, coface,
//! and parallel-neighbor queries behind simplicial curvature.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{epsilon_graph, DistanceMatrix, Graph};

/// Highest simplex dimension a constructor will accept.
pub const MAX_DIM_LIMIT: usize = 5;

/// A simplicial complex with positive simplex weights, stored one level per
/// dimension. Simplices are canonical sorted vertex tuples; the complex is
/// downward closed by construction. Vertices keep the external string
/// identifiers of the graph or cloud they came from.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    ids: Vec<String>,
    levels: Vec<Level>,
}

#[derive(Debug, Clone, Default)]
struct Level {
    simplices: Vec<Vec<u32>>,
    weights: Vec<f64>,
    index: HashMap<Vec<u32>, u32>,
    /// For each simplex, indices of its cofaces one level up.
    cofaces: Vec<Vec<u32>>,
}

impl Level {
    fn insert(&mut self, simplex: Vec<u32>, weight: f64) -> u32 {
        if let Some(&i) = self.index.get(&simplex) {
            return i;
        }
        let i = self.simplices.len() as u32;
        self.index.insert(simplex.clone(), i);
        self.simplices.push(simplex);
        self.weights.push(weight);
        self.cofaces.push(Vec::new());
        i
    }
}

/// Faces, cofaces, and parallel neighbors of a simplex, each as sorted
/// vertex tuples in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    pub faces: Vec<Vec<u32>>,
    pub cofaces: Vec<Vec<u32>>,
    pub parallel: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    fn new(ids: Vec<String>) -> Self {
        SimplicialComplex { ids, levels: Vec::new() }
    }

    /// The clique complex of `g` up to `max_dim`: every clique on at most
    /// `max_dim + 1` vertices becomes a simplex. Vertex and edge weights are
    /// copied from the graph; higher simplices get weight 1.
    pub fn clique_complex(g: &Graph, max_dim: usize) -> Result<Self> {
        if max_dim < 1 || max_dim > MAX_DIM_LIMIT {
            return Err(Error::Infeasible(format!(
                "max_dim must be in 1..={}, got {}",
                MAX_DIM_LIMIT, max_dim
            )));
        }
        let n = g.vertex_count();
        let mut k = SimplicialComplex::new((0..n).map(|v| g.id(v as u32).to_owned()).collect());
        k.levels.push(Level::default());
        for v in 0..n as u32 {
            k.levels[0].insert(vec![v], g.vertex_weight(v));
        }
        if max_dim >= 1 {
            // Sorted neighbor lists restricted to higher indices drive the
            // clique expansion below.
            let mut above: Vec<Vec<u32>> = vec![Vec::new(); n];
            for (v, list) in above.iter_mut().enumerate() {
                let mut nb: Vec<u32> = g
                    .neighbors(v as u32)
                    .iter()
                    .map(|&(u, _)| u)
                    .filter(|&u| u > v as u32)
                    .collect();
                nb.sort_unstable();
                *list = nb;
            }
            let mut clique: Vec<u32> = Vec::new();
            for v in 0..n as u32 {
                clique.push(v);
                extend_cliques(g, &above, &mut clique, &above[v as usize], max_dim, &mut |c| {
                    let weight = if c.len() == 2 {
                        g.edge_weight(c[0], c[1]).expect("clique pairs are edges")
                    } else {
                        1.0
                    };
                    insert_with_level(&mut k.levels, c.to_vec(), weight);
                });
                clique.pop();
            }
        }
        k.link_cofaces();
        Ok(k)
    }

    /// The Vietoris-Rips complex at scale `eps`: a simplex per point subset
    /// of diameter at most `eps` (and at most `max_dim + 1` points). Equals
    /// the clique complex of the ε-neighborhood graph.
    pub fn vietoris_rips(d: &DistanceMatrix, eps: f64, max_dim: usize) -> Result<Self> {
        Self::clique_complex(&epsilon_graph(d, eps)?, max_dim)
    }

    /// Highest dimension with at least one simplex; `None` for the empty
    /// complex.
    pub fn max_dim(&self) -> Option<usize> {
        (0..self.levels.len()).rev().find(|&p| !self.levels[p].simplices.is_empty())
    }

    pub fn simplex_count(&self, dim: usize) -> usize {
        self.levels.get(dim).map_or(0, |l| l.simplices.len())
    }

    /// Simplices of one dimension, in insertion order (lexicographic for
    /// the clique and Vietoris-Rips constructors).
    pub fn simplices(&self, dim: usize) -> &[Vec<u32>] {
        self.levels.get(dim).map_or(&[], |l| &l.simplices)
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        self.position(simplex).is_some()
    }

    fn position(&self, simplex: &[u32]) -> Option<(usize, u32)> {
        if simplex.is_empty() {
            return None;
        }
        let dim = simplex.len() - 1;
        let level = self.levels.get(dim)?;
        level.index.get(simplex).map(|&i| (dim, i))
    }

    pub fn weight(&self, simplex: &[u32]) -> Option<f64> {
        self.position(simplex).map(|(d, i)| self.levels[d].weights[i as usize])
    }

    pub fn set_weight(&mut self, simplex: &[u32], weight: f64) -> Result<()> {
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::Infeasible(format!("nonpositive simplex weight {}", weight)));
        }
        match self.position(simplex) {
            Some((d, i)) => {
                self.levels[d].weights[i as usize] = weight;
                Ok(())
            }
            None => Err(Error::Infeasible(format!("no such simplex {:?}", simplex))),
        }
    }

    /// External identifier of a vertex index.
    pub fn id(&self, v: u32) -> &str {
        &self.ids[v as usize]
    }

    /// Vertex index for an external identifier.
    pub fn vertex(&self, id: &str) -> Option<u32> {
        self.ids.iter().position(|s| s == id).map(|i| i as u32)
    }

    /// Applies a simplex-weight override file: each line `v1 v2 ... vk w`
    /// names a simplex by its vertices and assigns it weight `w`.
    pub fn apply_weight_file(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 2 {
                return Err(Error::Parse(format!(
                    "line {}: expected \"v1 ... vk w\"",
                    lineno + 1
                )));
            }
            let (names, w) = fields.split_at(fields.len() - 1);
            let w: f64 = w[0]
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad weight {:?}", lineno + 1, w[0])))?;
            let mut simplex = Vec::with_capacity(names.len());
            for name in names {
                simplex.push(self.vertex(name).ok_or_else(|| {
                    Error::Parse(format!("line {}: unknown vertex {:?}", lineno + 1, name))
                })?);
            }
            simplex.sort_unstable();
            simplex.dedup();
            if simplex.len() != names.len() {
                return Err(Error::Parse(format!("line {}: repeated vertex", lineno + 1)));
            }
            self.set_weight(&simplex, w)
                .map_err(|e| Error::Parse(format!("line {}: {}", lineno + 1, e)))?;
        }
        Ok(())
    }

    /// Faces, cofaces, and parallel neighbors of `simplex`. Two p-simplices
    /// are parallel when they share a face or a coface but not both.
    pub fn incidence(&self, simplex: &[u32]) -> Result<Incidence> {
        let (dim, idx) = self
            .position(simplex)
            .ok_or_else(|| Error::Infeasible(format!("no such simplex {:?}", simplex)))?;
        let level = &self.levels[dim];

        let mut faces: Vec<Vec<u32>> = Vec::new();
        if dim > 0 {
            for skip in 0..simplex.len() {
                let mut f = simplex.to_vec();
                f.remove(skip);
                if self.contains(&f) {
                    faces.push(f);
                }
            }
        }
        faces.sort();

        let mut cofaces: Vec<Vec<u32>> = level.cofaces[idx as usize]
            .iter()
            .map(|&c| self.levels[dim + 1].simplices[c as usize].clone())
            .collect();
        cofaces.sort();

        // Candidates for parallelism share a face (dim >= 1) or a coface
        // (dim = 0); in a downward-closed complex a shared coface implies a
        // shared face, so the exclusive-or reduces to "share a face and not
        // a coface" once candidates are in hand.
        let mut parallel: Vec<Vec<u32>> = Vec::new();
        if dim == 0 {
            // Vertices have no faces, so parallelism is purely coface
            // sharing: the neighbors along edges.
            for &c in &level.cofaces[idx as usize] {
                let edge = &self.levels[1].simplices[c as usize];
                let other = if edge[0] == simplex[0] { edge[1] } else { edge[0] };
                parallel.push(vec![other]);
            }
        } else {
            for face in &faces {
                let (fdim, fidx) = self.position(face).expect("face is present");
                for &c in &self.levels[fdim].cofaces[fidx as usize] {
                    if c == idx {
                        continue;
                    }
                    let other = &self.levels[dim].simplices[c as usize];
                    if !self.share_coface(simplex, other) {
                        parallel.push(other.clone());
                    }
                }
            }
        }
        parallel.sort();
        parallel.dedup();

        Ok(Incidence { faces, cofaces, parallel })
    }

    /// Whether two same-dimension simplices lie in a common coface, which
    /// for sorted tuples means their union is a stored simplex one level up.
    fn share_coface(&self, a: &[u32], b: &[u32]) -> bool {
        let mut union: Vec<u32> = a.iter().chain(b).copied().collect();
        union.sort_unstable();
        union.dedup();
        union.len() == a.len() + 1 && self.contains(&union)
    }

    /// Checks downward closure: every facet of every simplex is stored.
    pub fn is_downward_closed(&self) -> bool {
        for dim in 1..self.levels.len() {
            for simplex in &self.levels[dim].simplices {
                for skip in 0..simplex.len() {
                    let mut f = simplex.clone();
                    f.remove(skip);
                    if !self.contains(&f) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn link_cofaces(&mut self) {
        for dim in 1..self.levels.len() {
            let (lower, upper) = self.levels.split_at_mut(dim);
            let lower = &mut lower[dim - 1];
            for (ci, simplex) in upper[0].simplices.iter().enumerate() {
                for skip in 0..simplex.len() {
                    let mut f = simplex.clone();
                    f.remove(skip);
                    let fi = lower.index[&f];
                    lower.cofaces[fi as usize].push(ci as u32);
                }
            }
        }
        for level in &mut self.levels {
            for c in &mut level.cofaces {
                c.sort_unstable();
            }
        }
    }
}

fn insert_with_level(levels: &mut Vec<Level>, simplex: Vec<u32>, weight: f64) {
    let dim = simplex.len() - 1;
    while levels.len() <= dim {
        levels.push(Level::default());
    }
    levels[dim].insert(simplex, weight);
}

/// Emits every clique extending `clique` by vertices from `candidates`
/// (all of which are adjacent to everything in `clique` and ordered above
/// its last element), up to `max_dim + 1` total vertices.
fn extend_cliques(
    g: &Graph,
    above: &[Vec<u32>],
    clique: &mut Vec<u32>,
    candidates: &[u32],
    max_dim: usize,
    emit: &mut impl FnMut(&[u32]),
) {
    for (i, &v) in candidates.iter().enumerate() {
        clique.push(v);
        emit(clique);
        if clique.len() < max_dim + 1 {
            let next: Vec<u32> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| g.edge(u, v).is_some())
                .collect();
            extend_cliques(g, above, clique, &next, max_dim, emit);
        }
        clique.pop();
    }
}
