//! Slope stability for representations of acyclic quivers.

mod brute;
mod datum;
mod hn;
mod volume;

pub use brute::{brute_force, BruteForce, MAX_BRUTE_ENTRIES};
pub use datum::{DimVector, QuiverConfig, QuiverDatum, Stability};
pub use hn::{enumerate_hn_types_quiver, quiver_euler_form, sub_vectors};
pub use volume::{reineke_invert_quiver, vol_rep, QuiverVolumes};
