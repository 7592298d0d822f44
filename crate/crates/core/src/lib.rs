//! Exact evaluation of Ellenberg's constant ε(G, Σ) and the Mordell–Weil rank
//! bounds it feeds, for elliptic curves over function fields after a Galois
//! base change.
//!
//! The pipeline is exact end to end: groups are Cayley tables, characters
//! live in a prime field and are lifted to integers, the ε linear program is
//! solved over the rationals, and cohomology classes are integer vectors in
//! the representation ring.

pub mod bounds;
pub mod characters;
pub mod ellenberg;
pub mod error;
pub mod geometry;
pub mod group;
pub mod lp;
pub mod modp;
pub mod rational;
pub mod rep_ring;
pub mod sample;
pub mod sheaf;

pub use error::{Error, Result};
