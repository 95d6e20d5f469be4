//! Chainmail graphs and the surgery presentations they describe.
//!
//! A chainmail graph is a planar multigraph with integer weights on its
//! vertices and edges. Each vertex becomes a round unknot, each edge a run of
//! clasps between two of them, and the weights fix the surgery framings. This
//! crate computes the resulting linking matrices and first homology, builds
//! the link diagrams, and produces checkable certificates for the
//! deletion–contraction inductions used to show these surgeries are L-spaces.

pub mod diagram;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod lspace;
pub mod surgery;

pub use error::{Error, Result};
pub use graph::{AugmentedGraph, ChainmailGraph, CrossingCoefficient, Dart, Edge, EdgeId, VertexId};
pub use linalg::{AbelianGroup, IntMatrix};
