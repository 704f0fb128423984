//! Generic filtrations of tree groups by fixators of subtree families: depth
//! strata, poset heights, hypothesis checks, factorization and standard
//! representation counts.

mod factor;
mod family;
mod group;
mod ip;
mod poset;
mod standard;

pub use factor::*;
pub use family::*;
pub use group::*;
pub use ip::*;
pub use poset::*;
pub use standard::*;

use char_theory::CharError;
use perm_group::GroupError;
use thiserror::Error;
use tree_core::TreeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("capacity error: {what} exceeds {limit}")]
    Capacity { what: String, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl FiltrationError {
    pub fn is_window(&self) -> bool {
        matches!(self, FiltrationError::Tree(TreeError::Window { .. }) | FiltrationError::Group(GroupError::Tree(TreeError::Window { .. })))
    }
}

pub type Result<T> = std::result::Result<T, FiltrationError>;

/// The depth from which the ball filtration `S_q` factorizes⁺ under `IP_k`.
pub fn l_qk(q: usize, k: usize) -> usize {
    let (q, k) = (q as i64, k as i64);
    let v = if q % 2 == 0 { 2 * k - q - 1 } else { 2 * k - q };
    v.max(1) as usize
}
