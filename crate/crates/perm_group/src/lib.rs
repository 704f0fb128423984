//! Permutation groups with stabilizer chains, and the finite groups induced
//! on balls of a tree by automorphism groups with prescribed local action.

mod chain;
mod group;
mod local;
mod perm;

pub use group::*;
pub use local::*;
pub use perm::Perm;

use thiserror::Error;
use tree_core::TreeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("capacity error: {what} exceeds {limit}")]
    Capacity { what: String, limit: usize },
    #[error("restriction kernel mismatch: |image| = {image}, |Fix| = {kernel}, |Stab| = {stab}")]
    KernelMismatch { image: String, kernel: String, stab: String },
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

pub type Result<T> = std::result::Result<T, GroupError>;

pub const DEFAULT_MAX_ORDER: usize = 1_000_000;
