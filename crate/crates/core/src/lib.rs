//! Conflict-free colouring of graphs: exact solvers, verifiers, random graph
//! models and a reproducible experiment harness.

pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod models;
pub mod rng;
pub mod solvers;
pub mod theory;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, WeightedGraph};
pub use verify::{Coloring, SetFamily};

/// Version tag written into every JSON document the tools emit.
pub const SCHEMA_VERSION: &str = "cfchroma/1";
