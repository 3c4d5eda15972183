//! Lowest-order staggered discontinuous Galerkin discretisation of the Stokes
//! problem on convex polygonal meshes, with an optional H(div) reconstruction
//! of the load that makes the velocity independent of the pressure.

pub mod assembly;
pub mod bench;
pub mod geometry;
pub mod hdivrec;
pub mod mesh;
pub mod quadrature;
pub mod solver;
pub mod spaces;
pub mod sparse;
pub mod wachspress;

pub use assembly::{assemble_system, Method, SaddleSystem, StokesProblem};
pub use mesh::{build_staggered, PrimalMesh, StaggeredMesh};
pub use solver::{solve, FieldSolution, SolveError};
