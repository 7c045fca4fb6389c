//! (r,c)-constant graphs: regular graphs whose every open neighbourhood
//! induces the same number of edges.

pub mod canon;
pub mod catalog;
pub mod circulant;
pub mod constructions;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod nonexistence;
pub mod planarity;
pub mod search;

pub use canon::{canonical_form, CanonicalForm};
pub use graph::{GraphError, RcSignature, SmallGraph};
pub use planarity::is_planar;
