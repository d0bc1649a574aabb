//! Discrete curvature on graphs, simplicial complexes, and point clouds.
//!
//! The toolkit covers seven curvature models (Forman, Ollivier,
//! Bakry-Emery, resistance, sectional, Menger, Haantjes), vertex
//! aggregations on top of them, discrete Ricci flow with
//! curvature-driven community detection, and a ball-volume scalar
//! curvature estimator for point clouds. Everything is deterministic:
//! random constructions and samplers take explicit seeds.
//!
//! ```
//! use curvekit::graph::Graph;
//! use curvekit::curvature::ollivier_graph;
//!
//! let g = Graph::from_edge_list("a b\nb c\nc a")?;
//! let d = g.shortest_paths()?;
//! let kappa = ollivier_graph(&g, &d, 0.5)?;
//! assert!((kappa[0] - 0.75).abs() < 1e-9);
//! # Ok::<(), curvekit::error::Error>(())
//! ```

pub mod cloud;
pub mod community;
pub mod complex;
pub mod curvature;
pub mod error;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod points;
pub mod transport;

mod book;

pub use error::{Error, Result};
