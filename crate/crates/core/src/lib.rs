//! Exact analysis of Demazure roots of complete toric fans and reflexive
//! polytopes.

pub mod error;
pub mod io;
pub mod lattice;
pub mod criteria;
pub mod polytope;
pub mod properties;
pub mod roots;
pub mod standard;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{IntMatrix, IntVector, Rational, RationalVector};
pub use polytope::{LatticePolytope, RationalPolytope, UnimodularMap};
