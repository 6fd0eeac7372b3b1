//! Graph analytics engine behind the network repository.
//!
//! The crate is organised bottom-up:
//!
//! - [`edgelist`] parses repository edge-list files (plain, labelled,
//!   weighted/temporal, Matrix Market coordinate files).
//! - [`graph`] holds the immutable, normalized undirected [`Graph`].
//! - [`stats`] computes global and node-level statistics and their
//!   distributions in parallel.
//! - [`generators`] builds synthetic graphs (model, pattern and hybrid).
//! - [`clustering`] labels nodes with communities or structural roles.
//! - [`sampler`] draws node, edge and induced-edge samples.
//! - [`layout`] computes deterministic force-directed positions.

pub mod clustering;
pub mod edgelist;
pub mod error;
pub mod generators;
pub mod graph;
pub mod layout;
pub mod rng;
pub mod sampler;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId, NormalizationReport};
