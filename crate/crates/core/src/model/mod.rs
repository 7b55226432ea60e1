//! Passive combinatorial data: partitions, tableaux, permutations, words,
//! matrices and margins, with validated invariants and the canonical text
//! encodings shared by the CLI and golden files.
//!
//! All types are immutable values after construction and all operations are
//! pure, so everything here is freely shareable across threads.

mod matrix;
mod partition;
mod perm;
mod tableau;

pub use matrix::{Biword, ExponentMatrix, MarginPair};
pub use partition::Partition;
pub use perm::{visit_s_n, InjectiveWord, Permutation};
pub use tableau::Tableau;
