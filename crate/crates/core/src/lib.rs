//! Exact-arithmetic Hopf monoids of permutahedra, associahedra, orbit
//! polytopes and posets, the Brion morphism computed both by closed
//! combinatorial formulas and by a geometric vertex-cone oracle, and the
//! dual side: dual products, Lie brackets of primitives, the Witt
//! identification, and dual Brion maps.

pub mod checks;
pub mod combinat;
pub mod dual;
pub mod error;
pub mod fock;
pub mod formal;
pub mod geometry;
pub mod hopf;
mod lp;
pub mod poset;
pub mod text;

pub use error::{Error, Result};
