//! Finite models of topological selection games.
//!
//! Spaces are finite topologies on at most 64 points. The crate decides
//! bounded-horizon covering games on them exactly, checks strategies
//! against every adversary line, and implements strategy translations
//! between dual games.

pub mod constructions;
pub mod corpus;
pub mod covers;
pub mod duality;
pub mod engine;
pub mod error;
pub mod par;
pub mod pointset;
pub mod solver;
pub mod space;
pub mod strategies;
pub mod suite;

pub use error::{Error, Result};
pub use pointset::PointSet;
