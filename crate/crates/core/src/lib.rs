//! Exact computations for small torsion-free virtually solvable groups:
//! finite groups, rational character theory, lattice cohomology, free
//! nilpotent groups and the candidate enumeration engine.

pub mod bounds;
pub mod character;
pub mod cyclotomic;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod group;
pub mod lattice;
pub mod nilpotent;

pub use error::{Error, Result};
