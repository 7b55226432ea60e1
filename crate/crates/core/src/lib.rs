//! Row insertion with bump classification, the tableau correspondence on
//! integer matrices, determinantal bitableaux with coefficient extraction,
//! an exhaustive census of lateral-bump-free permutations, and seeded
//! Plancherel sampling against the limit shape.
//!
//! The crate is organized around a small set of validated value types
//! ([`model`]) and pure operations over them; every randomized entry point is
//! seeded and reproducible across worker counts.

pub mod bitableau;
pub mod census;
pub mod error;
pub mod insertion;
pub mod model;
pub mod plancherel;
pub mod verify;

pub use error::{Error, Result};
pub use model::{Biword, ExponentMatrix, InjectiveWord, MarginPair, Partition, Permutation, Tableau};
