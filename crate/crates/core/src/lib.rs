//! Combinatorics of stable dual graphs, extremal assignments, axis-like
//! contractions and compactified Torelli classes.

pub mod assignment;
pub mod contraction;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod torelli;

pub use error::GraphError;
pub use graph::{CanonicalKey, DualGraph};
