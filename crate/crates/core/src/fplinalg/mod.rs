//! Exact linear algebra over prime fields.

pub mod matrix;
pub mod modtype;
pub mod partition;
pub mod poly;
pub mod subspace;

pub use matrix::{all_gl, is_prime, random_gl, rref_in_place, FpMatrix};
pub use modtype::{is_invariant, module_type, nullity_sequence, scalar_of, ModuleType};
pub use partition::Partition;
pub use poly::{charpoly, factor_poly, FpPoly, IrreducibleSieve};
pub use subspace::{brute_subspace_counts, enumerate_subspaces, Subspace, SubspaceIndexer};
