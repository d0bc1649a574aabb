//! Sectional-style comparison curvature from Gromov products: how small
//! a common "center" the three balls around a triple admit.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Sampling policy for triple averages. Objects with at most
/// `max_exhaustive` triples are averaged exactly; larger ones draw
/// `samples` triples uniformly with a generator seeded from `seed` and
/// the object, so repeated runs agree.
#[derive(Debug, Clone, Copy)]
pub struct SampleConfig {
    pub seed: u64,
    pub max_exhaustive: usize,
    pub samples: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { seed: 0, max_exhaustive: 100_000, samples: 100_000 }
    }
}

/// A triple average together with how it was computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledMean {
    pub mean: f64,
    pub samples: usize,
    pub exhaustive: bool,
}

/// Gromov products of a metric triangle with side lengths `d12`, `d13`,
/// `d23`: the distances from each corner to the inscribed-circle touch
/// points. Rejects side lengths that violate a triangle inequality.
pub fn gromov_products(d12: f64, d13: f64, d23: f64) -> Result<[f64; 3]> {
    let sides = [d12, d13, d23];
    if sides.iter().any(|&s| !s.is_finite() || s <= 0.0) {
        return Err(Error::Infeasible(format!("degenerate side lengths {:?}", sides)));
    }
    let tol = 1e-12 * (d12 + d13 + d23);
    let raw = [
        0.5 * (d12 + d13 - d23),
        0.5 * (d12 + d23 - d13),
        0.5 * (d13 + d23 - d12),
    ];
    let mut r = [0.0; 3];
    for (out, &x) in r.iter_mut().zip(&raw) {
        if x < -tol {
            return Err(Error::Infeasible(format!(
                "triangle inequality violated for sides {:?}",
                sides
            )));
        }
        *out = x.max(0.0);
    }
    Ok(r)
}

/// Ratio of a candidate-center distance to a Gromov product, with the
/// conventions 0/0 = 0 and d/0 = infinity for d > 0.
fn ratio(dist: f64, r: f64) -> f64 {
    if r == 0.0 {
        if dist == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        dist / r
    }
}

/// Sectional curvature proxy of a vertex triple: the smallest, over all
/// candidate centers x, of the worst ratio d(v_i, x) / r_i. Always lands
/// in [1, 2]; trees give 1 and complete graphs 2.
pub fn sectional_triple(d: &DistanceMatrix, triple: (u32, u32, u32)) -> Result<f64> {
    let (v1, v2, v3) = triple;
    if v1 == v2 || v1 == v3 || v2 == v3 {
        return Err(Error::Infeasible("triple has repeated vertices".into()));
    }
    let d12 = d.get(v1, v2);
    let d13 = d.get(v1, v3);
    let d23 = d.get(v2, v3);
    if !(d12.is_finite() && d13.is_finite() && d23.is_finite()) {
        return Err(Error::Infeasible("triple spans disconnected vertices".into()));
    }
    let r = gromov_products(d12, d13, d23)?;
    let verts = [v1, v2, v3];
    let mut best = f64::INFINITY;
    for x in 0..d.len() as u32 {
        let worst = (0..3)
            .map(|i| ratio(d.get(verts[i], x), r[i]))
            .fold(0.0, f64::max);
        best = best.min(worst);
    }
    Ok(best)
}

/// Mean triple curvature over all triples containing both endpoints of
/// edge `e`. The component must hold at least three vertices.
pub fn sectional_edge(
    g: &Graph,
    d: &DistanceMatrix,
    e: u32,
    cfg: SampleConfig,
) -> Result<SampledMean> {
    let edge = &g.edges()[e as usize];
    let (u, v) = (edge.u, edge.v);
    let mut comp = g.component_of(u);
    comp.sort_unstable();
    let thirds: Vec<u32> = comp.into_iter().filter(|&z| z != u && z != v).collect();
    if thirds.is_empty() {
        return Err(Error::Infeasible(format!(
            "edge {}-{} sits in a component with fewer than 3 vertices",
            g.id(u),
            g.id(v)
        )));
    }
    if thirds.len() <= cfg.max_exhaustive {
        let mut total = 0.0;
        for &z in &thirds {
            total += sectional_triple(d, (u, v, z))?;
        }
        Ok(SampledMean { mean: total / thirds.len() as f64, samples: thirds.len(), exhaustive: true })
    } else {
        let mut rng = seeded(cfg.seed, e as u64);
        let mut total = 0.0;
        for _ in 0..cfg.samples {
            let z = thirds[rng.random_range(0..thirds.len())];
            total += sectional_triple(d, (u, v, z))?;
        }
        Ok(SampledMean { mean: total / cfg.samples as f64, samples: cfg.samples, exhaustive: false })
    }
}

/// Mean triple curvature over all triples containing `v`. The component
/// must hold at least three vertices.
pub fn sectional_vertex(
    g: &Graph,
    d: &DistanceMatrix,
    v: u32,
    cfg: SampleConfig,
) -> Result<SampledMean> {
    let mut comp = g.component_of(v);
    comp.sort_unstable();
    let others: Vec<u32> = comp.into_iter().filter(|&x| x != v).collect();
    if others.len() < 2 {
        return Err(Error::Infeasible(format!(
            "vertex {} sits in a component with fewer than 3 vertices",
            g.id(v)
        )));
    }
    let pairs = others.len() * (others.len() - 1) / 2;
    if pairs <= cfg.max_exhaustive {
        let mut total = 0.0;
        for (i, &x) in others.iter().enumerate() {
            for &y in &others[i + 1..] {
                total += sectional_triple(d, (v, x, y))?;
            }
        }
        Ok(SampledMean { mean: total / pairs as f64, samples: pairs, exhaustive: true })
    } else {
        let mut rng = seeded(cfg.seed, 0x5eed ^ v as u64);
        let mut total = 0.0;
        for _ in 0..cfg.samples {
            let i = rng.random_range(0..others.len());
            let j = loop {
                let j = rng.random_range(0..others.len());
                if j != i {
                    break j;
                }
            };
            total += sectional_triple(d, (v, others[i], others[j]))?;
        }
        Ok(SampledMean { mean: total / cfg.samples as f64, samples: cfg.samples, exhaustive: false })
    }
}

fn seeded(seed: u64, object: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ object.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// The smallest uniform blow-up factor under which some vertex reaches
/// every `points[i]` within `radii[i]`. Requires the balls to pairwise
/// touch: r_i + r_j >= d(x_i, x_j).
pub fn expansion_constant(d: &DistanceMatrix, points: &[u32], radii: &[f64]) -> Result<f64> {
    if points.is_empty() || points.len() != radii.len() {
        return Err(Error::Infeasible(format!(
            "{} points with {} radii",
            points.len(),
            radii.len()
        )));
    }
    if radii.iter().any(|&r| !r.is_finite() || r < 0.0) {
        return Err(Error::Infeasible("radii must be nonnegative".into()));
    }
    for (i, &x) in points.iter().enumerate() {
        for (j, &y) in points.iter().enumerate().skip(i + 1) {
            if radii[i] + radii[j] < d.get(x, y) - 1e-9 {
                return Err(Error::Infeasible(format!(
                    "balls {} and {} cannot touch: {} + {} < {}",
                    i,
                    j,
                    radii[i],
                    radii[j],
                    d.get(x, y)
                )));
            }
        }
    }
    let mut best = f64::INFINITY;
    for x in 0..d.len() as u32 {
        let worst = points
            .iter()
            .zip(radii)
            .map(|(&p, &r)| ratio(d.get(p, x), r))
            .fold(0.0, f64::max);
        best = best.min(worst);
    }
    Ok(best)
}
