//! Exact counting and verification tools for finite p-groups of small lower
//! p-length: q-combinatorics, linear algebra over prime fields, free Lie
//! algebra layers, submodule counts, a class-2 group model and orbit censuses.

pub mod budget;
pub mod census;
pub mod error;
pub mod fplinalg;
pub mod freelie;
pub mod qcomb;
pub mod pgroup;
pub mod serde_util;
pub mod submodcount;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
