//! Graph squares toolkit.
//!
//! Builds families of graphs whose squares contain large cliques, measures
//! the relevant exact quantities (square, degeneracy, maximum clique, maximum
//! average degree), and runs the token-passing machinery that extracts a
//! "nice" clique-with-order witness from a degenerate graph.

pub mod analysis;
pub mod constructs;
pub mod extraction;
pub mod graph;
pub mod json;

pub use graph::{GraphError, Multigraph, SimpleGraph, VertexOrder, VertexSet};
pub use json::{GraphDocument, GraphPayload, JsonError};
