//! Curvature models on graphs and simplicial complexes.

pub mod aggregate;
pub mod bakry_emery;
pub mod forman;
pub mod haantjes;
pub mod menger;
pub mod ollivier;
pub mod resistance;
pub mod sectional;

pub use aggregate::{scalar_from_edges, scalar_orc, scalar_orc_all};
pub use bakry_emery::{bakry_emery, bakry_emery_all};
pub use forman::{
    forman_complex_unweighted, forman_complex_weighted, forman_edge, forman_graph,
    forman_simplex_unweighted, forman_simplex_weighted,
};
pub use haantjes::{haantjes_graph, haantjes_path, haantjes_ricci, DEFAULT_MAX_LEN, MAX_LEN_LIMIT};
pub use menger::{menger_graph, menger_ricci, menger_triangle};
pub use ollivier::{ollivier_edge, ollivier_graph};
pub use resistance::{
    edge_resistances, effective_resistance, resistance_edge_curvatures,
    resistance_vertex_curvatures, Denominator, ResistanceSolver,
};
pub use sectional::{
    expansion_constant, gromov_products, sectional_edge, sectional_triple, sectional_vertex,
    SampleConfig, SampledMean,
};
