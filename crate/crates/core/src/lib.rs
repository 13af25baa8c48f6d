//! Algebraic tori over number fields, computed through their character lattices.
//!
//! A torus split by a finite Galois extension with group `G` is the same thing as a
//! `G`-lattice. Everything here is exact integer linear algebra on those lattices:
//! cohomology, Tate–Shafarevich groups, Artin L-functions of the character
//! representation, and Tamagawa numbers.

pub mod arith;
pub mod cohomology;
pub mod error;
pub mod groups;
pub mod integer;
pub mod lattices;
pub mod matrix;
pub mod random;
pub mod tamagawa;
pub mod tori;

pub use error::{Error, ErrorKind, Result};
pub use integer::Z;
