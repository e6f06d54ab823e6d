use thiserror::Error;

use crate::preorder::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid pre-order: {0}")]
    InvalidPreorder(String),

    #[error("not a permutation pre-order: {0}")]
    NotPermutationPreorder(Violation),

    #[error("invalid Coxeter element: {0}")]
    InvalidCoxeter(String),

    #[error("invalid shard: {0}")]
    InvalidShard(String),

    #[error("size mismatch: expected n = {expected}, got n = {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("n = {n} exceeds the cap of {cap} for this operation")]
    SizeCap { n: usize, cap: usize },

    #[error("elements are not comparable: {0} is not below {1}")]
    NotComparable(String, String),

    #[error("not a cover relation: {0} -> {1}")]
    NotCover(String, String),

    #[error("partition is not c-noncrossing: {0}")]
    Crossing(String),

    #[error("conflicting orientation demands between blocks {0:?} and {1:?}")]
    ConflictingOrientation(Vec<usize>, Vec<usize>),

    #[error("Möbius mismatch on [{bottom}, {top}]: chain count gives {chains}, recursion gives {recursion}")]
    MobiusMismatch {
        bottom: String,
        top: String,
        chains: i64,
        recursion: i64,
    },

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
