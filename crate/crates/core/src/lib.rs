//! Tooling around edge-extremal planar graphs that avoid a small double
//! star: pattern detection, weight-partition certificates, degree peeling,
//! extremal constructions from derived building blocks, and exact
//! exhaustive search at small orders.
//!
//! The density bound at the center of everything is `14 e <= 31 n`,
//! evaluated in integer arithmetic throughout; weights are carried doubled
//! so no half-integers ever meet a float.

pub mod classic;
pub mod error;
pub mod formats;
pub mod graph;
pub mod planarity;
pub mod patterns;
pub mod reduce;
pub mod certify;
pub mod construct;
pub mod search;

pub use error::{Error, Result};
pub use graph::{DoubledWeight, Graph, VertexSet};
