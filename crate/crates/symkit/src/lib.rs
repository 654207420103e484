//! Partitions, Specht-module dimensions, symmetric-group characters and
//! symmetric-function arithmetic in the power-sum and Schur bases.
//!
//! All arithmetic is exact. Characters are computed with the
//! Murnaghan-Nakayama rule and memoized process-wide behind a read-write lock,
//! so every function here is safe to call from several threads.

mod character;
mod partition;
mod symfunc;

pub use character::{character_value, kostka};
pub use partition::{enumerate_partitions, specht_dim, Partition};
pub use symfunc::{schur_to_powersum, SchurExpansion, SymFunc};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("partitions of different sizes: {left} and {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("symmetric function is not homogeneous")]
    NotHomogeneous,
    #[error("invalid partition {0}")]
    InvalidPartition(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}
