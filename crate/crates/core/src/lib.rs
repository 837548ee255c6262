//! Genetic codes of planar polygon spaces, their mod-2 cohomology rings, and
//! zero-divisor certificates for the lower bound `TC >= 2n - 6`.

pub mod certificates;
pub mod cohomology;
pub mod combinatorics;
pub mod error;
pub mod gf2;
pub mod parametric;

pub use error::{Error, Result};
