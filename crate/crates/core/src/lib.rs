//! Exact construction, grading and verification of the length-three free
//! resolutions attached to minimal double coset representatives of Weyl
//! groups of T-shaped diagrams, together with their behaviour under linkage.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod diagram;
pub mod error;
pub mod grading;
pub mod liealg;
pub mod linalg;
pub mod linkage;
pub mod poly;
pub mod resolution;
pub mod weight;
pub mod weyl;

pub use diagram::{Arm, Diagram, DiagramType, Format, Vertex};
pub use error::{Error, Result};
pub use weight::{RootVector, Weight};
pub use weyl::WeylWord;

/// Exact rational scalar used everywhere.
pub type Q = num_rational::BigRational;
