use thiserror::Error;

/// Errors raised by validation and by operations with explicit bounds.
///
/// Every variant carries enough context to print a minimal witness in the
/// canonical text encodings (see the `model` module).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("not weakly decreasing at index {index}: {parts:?}")]
    NotAPartition { parts: Vec<u32>, index: usize },

    #[error("row {row} is not weakly increasing at column {col}")]
    RowNotWeaklyIncreasing { row: usize, col: usize },

    #[error("column {col} is not strictly increasing between rows {row} and {row_above}")]
    ColumnNotStrictlyIncreasing { col: usize, row: usize, row_above: usize },

    #[error("row lengths {lengths:?} do not form a partition shape")]
    RaggedShape { lengths: Vec<usize> },

    #[error("word {word:?} is not a permutation of 1..={n}")]
    NotAPermutation { word: Vec<u32>, n: usize },

    #[error("word contains a repeated letter at positions {first} and {second}")]
    NonInjectiveWord { first: usize, second: usize },

    #[error("matrix is not a permutation matrix: {reason}")]
    NotAPermutationMatrix { reason: String },

    #[error("margin mismatch: |sigma| = {sigma_total} but |pi| = {pi_total}")]
    MarginMismatch { sigma_total: u64, pi_total: u64 },

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },

    #[error("matrix dimensions {found} do not match expected {expected}")]
    DimensionMismatch { expected: String, found: String },

    #[error("block over Mat_(sigma,pi) has {size} basis elements, above the limit {limit}")]
    BlockTooLarge { size: usize, limit: usize },

    #[error("n = {n} exceeds the bound {bound} for {what}")]
    BoundExceeded { n: usize, bound: usize, what: &'static str },

    #[error("projected frontier of {projected} members exceeds the memory budget of {budget} bytes")]
    MemoryBudgetExceeded { projected: u64, budget: u64 },

    #[error("theta = {theta} lies outside [-pi/2, pi/2]")]
    DomainError { theta: f64 },

    #[error("invalid {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("{check} failed at witness {witness}")]
    CheckFailed { check: &'static str, witness: String },
}

pub type Result<T> = std::result::Result<T, Error>;
