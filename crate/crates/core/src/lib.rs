//! Exact obstacle-representation tooling.

pub mod arrangement;
pub mod constructors;
pub mod gap;
pub mod geom;
pub mod graph;
pub mod render;
pub mod verifier;
