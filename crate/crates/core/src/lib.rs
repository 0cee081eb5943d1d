//! Häggkvist–Hell graphs H(n:r) and their companion families.
//!
//! The crate builds H(n:r), Kneser graphs K(n:r), complete graphs and the
//! shift graph on triples, computes their parameters exactly, and constructs
//! and checks certificates: independent sets, colorings, fractional
//! colorings, homomorphisms and automorphisms.

pub mod automorphism;
pub mod bitset;
pub mod coloring;
pub mod budget;
pub mod error;
pub mod families;
pub mod graph;
pub mod group;
pub mod homomorphism;
pub mod independence;
pub mod structure;
pub mod subset;

pub use bitset::VertexSet;
pub use budget::Budget;
pub use error::{Error, Result};
pub use families::{FamilyParams, HHVertex};
pub use graph::{Graph, Label, Metric};
pub use subset::Subset;
