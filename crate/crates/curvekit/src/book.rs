//! The user guide's chapters, attached here so every code snippet in the
//! book compiles and runs with the test suite.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/edge-curvature.md")]
pub mod edge_curvature {}

#[doc = include_str!("../../../book/src/vertex-curvature.md")]
pub mod vertex_curvature {}

#[doc = include_str!("../../../book/src/triangles-and-paths.md")]
pub mod triangles_and_paths {}

#[doc = include_str!("../../../book/src/complexes.md")]
pub mod complexes {}

#[doc = include_str!("../../../book/src/flow-and-communities.md")]
pub mod flow_and_communities {}

#[doc = include_str!("../../../book/src/point-clouds.md")]
pub mod point_clouds {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
