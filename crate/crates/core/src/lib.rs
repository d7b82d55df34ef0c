//! Finite-lattice algebra for L-valued Sugeno integrals.
//!
//! The crate provides finite bounded lattices with dense operation tables,
//! the comonotonicity-style relations on `L^n`, capacities and both
//! expressions of the discrete Sugeno integral, exhaustive checkers for the
//! homogeneity and comonotone additivity properties of tabulated functions,
//! a recognizer that recovers the capacity of a Sugeno integral from its
//! table, and exact pair-count cost models for those checks.

pub mod axioms;
pub mod bench;
pub mod capacity;
pub mod cli;
mod enumerate;
pub mod lattice;
pub mod recognizer;
pub mod relations;
pub mod subset;
pub mod suite;

pub use capacity::{Capacity, CapacityEnumeration, SugenoForm};
pub use lattice::{Elem, Lattice, LatticeSpec};
pub use relations::{LVector, RelationKind};
pub use subset::IndexSet;
