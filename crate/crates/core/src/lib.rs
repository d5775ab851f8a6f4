//! Finite groups as multiplication tables, and the relative and twisted
//! commutator machinery built on them: split extensions, cooperators,
//! crossed modules and reflexive graphs.

pub mod action;
pub mod commutator;
pub mod error;
pub mod graph;
pub mod group;
pub mod hom;
pub mod io;
pub mod limits;
pub(crate) mod search;
pub mod verify;
pub mod xmod;

#[cfg(test)]
mod testing;

pub use error::{Error, Result};
