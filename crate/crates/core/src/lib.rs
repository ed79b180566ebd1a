//! Interaction networks from collections of Web-service descriptions.
//!
//! The crate models services as operations over input/output parameter sets,
//! builds the two interaction networks (parameter-level and operation-level)
//! under syntactic or semantic exact matching, measures their complex-network
//! properties (distances, Erdős-Rényi baseline, transitivity, degree
//! correlation, power-law degree fits), detects community structure with five
//! algorithms, and compares partitions via normalized mutual information and
//! per-community topological profiles. A deterministic planted-domain
//! generator provides synthetic collections for benchmarks.

pub mod community;
pub mod error;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod network;
pub mod synth;
pub mod topology;

pub use error::{Error, Result};
