//! Exact computations with Harder-Narasimhan strata.
//!
//! Curves are given by the numerator of their zeta function; all counts are
//! stacky (each object weighted by `1/#Aut`). The rational curve and acyclic
//! quivers come with explicit brute-force models used as ground truth.

pub mod classes;
pub mod cli;
pub mod curve;
pub mod error;
pub mod hall;
pub mod p1;
pub mod quiver;
pub mod scalars;

pub use error::{HnsError, Result};
