//! Semi-regular right-angled buildings through their chamber/residue
//! incidence trees: Coxeter bookkeeping, legal colorings, universal groups,
//! projections and wings.

mod building;
mod coxeter;
mod group;
mod verify;

pub use building::*;
pub use coxeter::*;
pub use group::*;
pub use verify::*;

use filtration::FiltrationError;
use perm_group::GroupError;
use thiserror::Error;
use tree_core::TreeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildingError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error("bad input: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent building: {0}")]
    Inconsistent(String),
}

impl BuildingError {
    pub fn is_window(&self) -> bool {
        match self {
            BuildingError::Tree(TreeError::Window { .. }) | BuildingError::Group(GroupError::Tree(TreeError::Window { .. })) => true,
            BuildingError::Filtration(e) => e.is_window(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, BuildingError>;
